#include <isospec/deform.hpp>
#include <isospec/endo_space.hpp>
#include <isospec/eswa.hpp>
#include <isospec/splitting.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace isospec;

namespace {

std::vector<Rat> rvec(std::initializer_list<long> xs) {
    std::vector<Rat> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

// Quaternionic factor splitting of H^2 (e1..e4 | e5..e8), tags (a, b).
Splitting factor_splitting_h2(const EndoSpace& s) {
    RatMat B1(8, 4), B2(8, 4);
    for (int i = 0; i < 4; ++i) {
        B1(i, i) = 1;
        B2(4 + i, i) = 1;
    }
    Splitting sp;
    sp.blocks = {B1, B2};
    sp.tags = {BlockTag::A, BlockTag::B};
    validate_splitting(s, sp);
    return sp;
}

}  // namespace

TEST(InvariantDecomposition, QuaternionicFactors) {
    for (int k : {1, 2}) {
        auto dec = invariant_decomposition(quaternionic_heisenberg(k));
        ASSERT_EQ(static_cast<int>(dec.size()), k);
        for (const auto& b : dec) {
            EXPECT_EQ(b.basis.cols(), 4);
            EXPECT_TRUE(b.minimal_certified);
        }
    }
}

TEST(InvariantDecomposition, SingleLiSplitsIntoEigenplanes) {
    EndoSpace s = make_endo_space(4, {left_mult_matrix(Quat::unit_i())});
    auto dec = invariant_decomposition(s);
    ASSERT_EQ(dec.size(), 2u);
    EXPECT_EQ(dec[0].basis.cols(), 2);
    EXPECT_EQ(dec[1].basis.cols(), 2);
    // Blocks are invariant, orthogonal, exhaustive.
    EXPECT_TRUE((dec[0].basis.transpose() * dec[1].basis).is_zero());
    for (const auto& b : dec) {
        RatMat JQ = s.gen(0) * b.basis;
        RatMat cat(4, b.basis.cols() + JQ.cols());
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < b.basis.cols(); ++j) cat(i, j) = b.basis(i, j);
            for (int j = 0; j < JQ.cols(); ++j) cat(i, b.basis.cols() + j) = JQ(i, j);
        }
        EXPECT_EQ(rank(cat), b.basis.cols());
    }
}

TEST(InvariantDecomposition, RotationPlaneIrreducible) {
    EndoSpace s = make_endo_space(2, {RatMat(2, 2, {Rat(0), Rat(-1), Rat(1), Rat(0)})});
    auto dec = invariant_decomposition(s);
    ASSERT_EQ(dec.size(), 1u);
    EXPECT_EQ(dec[0].basis.cols(), 2);
    EXPECT_TRUE(dec[0].minimal_certified);
}

TEST(CheckNondegenerating, Examples) {
    EXPECT_TRUE(check_nondegenerating(quaternionic_heisenberg(1)));
    EXPECT_TRUE(check_nondegenerating(quaternionic_heisenberg(2)));
    EXPECT_FALSE(check_nondegenerating(make_endo_space(2, {RatMat(2, 2, {Rat(0), Rat(-1), Rat(1), Rat(0)})})));
    EXPECT_FALSE(check_nondegenerating(make_endo_space(4, {left_mult_matrix(Quat::unit_i())})));
}

TEST(SigmaOf, OrthogonalInvolution) {
    EndoSpace s = quaternionic_heisenberg(2);
    Splitting sp = factor_splitting_h2(s);
    RatMat sig = sigma_of(sp);
    EXPECT_EQ(sig * sig, RatMat::identity(8));
    EXPECT_EQ(sig.transpose() * sig, RatMat::identity(8));
    RatMat expect(8, 8);
    for (int i = 0; i < 4; ++i) expect(i, i) = 1;
    for (int i = 4; i < 8; ++i) expect(i, i) = -1;
    EXPECT_EQ(sig, expect);
}

TEST(SigmaDeform, AllBlocksTaggedAIsIdentity) {
    EndoSpace s = quaternionic_heisenberg(2);
    Splitting sp = factor_splitting_h2(s);
    sp.tags = {BlockTag::A, BlockTag::A};
    DeformSpec spec{sp, std::nullopt};
    EndoSpace d = sigma_deform(s, spec);
    EXPECT_EQ(d.generators, s.generators);
}

TEST(SigmaDeform, FullDeformationFlipsSecondBlock) {
    EndoSpace s = quaternionic_heisenberg(2);
    DeformSpec spec{factor_splitting_h2(s), std::nullopt};
    EndoSpace d = sigma_deform(s, spec);
    RatMat sig = sigma_of(spec.splitting);
    for (int a = 0; a < 3; ++a) {
        EXPECT_EQ(d.gen(a), s.gen(a) * sig);
        // Per-direction isospectrality, exactly: equal characteristic polynomials.
        EXPECT_EQ(char_poly(d.gen(a)), char_poly(s.gen(a)));
    }
}

TEST(SigmaDeform, PartialFlipsOnlyTheAnticommutator) {
    EndoSpace s = quaternionic_heisenberg(2);
    DeformSpec spec{factor_splitting_h2(s), {{rvec({1, 0, 0})}}};
    EndoSpace d = sigma_deform(s, spec);
    RatMat sig = sigma_of(spec.splitting);
    EXPECT_EQ(d.gen(0), s.gen(0) * sig);  // hand-flip oracle
    EXPECT_EQ(d.gen(1), s.gen(1));
    EXPECT_EQ(d.gen(2), s.gen(2));
    ASSERT_TRUE(d.anticommutator_index.has_value());
    EXPECT_TRUE(is_anticommutator_index(d, *d.anticommutator_index));
}

TEST(SigmaDeform, TwiceIsIdentity) {
    EndoSpace s = quaternionic_heisenberg(2);
    DeformSpec spec{factor_splitting_h2(s), std::nullopt};
    EndoSpace dd = sigma_deform(sigma_deform(s, spec), spec);
    EXPECT_EQ(dd.generators, s.generators);
}

TEST(SigmaDeform, PreservesHType) {
    EndoSpace s = quaternionic_heisenberg(2);
    DeformSpec full{factor_splitting_h2(s), std::nullopt};
    EXPECT_TRUE(check_htype(sigma_deform(s, full)).holds);
    DeformSpec partial{factor_splitting_h2(s), {{rvec({1, 0, 0})}}};
    EXPECT_TRUE(check_htype(sigma_deform(s, partial)).holds);
}

TEST(SigmaDeform, RandomZDirectionsStayIsospectral) {
    EndoSpace s = quaternionic_heisenberg(2);
    DeformSpec spec{factor_splitting_h2(s), std::nullopt};
    EndoSpace d = sigma_deform(s, spec);
    std::mt19937 rng(23);
    for (int t = 0; t < 10; ++t) {
        auto z = oracles::random_rat_vector(rng, 3);
        EXPECT_EQ(char_poly(j_of(s, z)), char_poly(j_of(d, z)));
    }
}

TEST(SigmaDeform, RejectsNonInvariantSplitting) {
    EndoSpace s = quaternionic_heisenberg(2);
    // A split across the quaternionic factors is not invariant.
    RatMat B1(8, 4), B2(8, 4);
    for (int i = 0; i < 4; ++i) {
        B1(2 * i, i) = 1;      // even coordinates
        B2(2 * i + 1, i) = 1;  // odd coordinates
    }
    Splitting sp;
    sp.blocks = {B1, B2};
    sp.tags = {BlockTag::A, BlockTag::B};
    DeformSpec spec{sp, std::nullopt};
    EXPECT_THROW(sigma_deform(s, spec), NotInvariant);
}

TEST(SigmaDeform, RejectsNonAnticommutatorDirection) {
    // Merged product of two H^1 spaces: l = 5, directions mixing the two
    // complements are non-degenerate but fail the anticommutator condition.
    EndoSpace f = build_quaternionic_eswa(1, Quat::unit_i(), {{{Quat::unit_j()}}, {{Quat::unit_k()}}});
    EndoSpace p = product_space({f, f}, ZMerge::MergeAnticommutator);
    ASSERT_EQ(p.l, 5);
    EXPECT_FALSE(is_anticommutator(p, rvec({0, 1, 0, 1, 0})));
    Splitting sp;
    RatMat B1(8, 4), B2(8, 4);
    for (int i = 0; i < 4; ++i) {
        B1(i, i) = 1;
        B2(4 + i, i) = 1;
    }
    sp.blocks = {B1, B2};
    sp.tags = {BlockTag::A, BlockTag::B};
    DeformSpec spec{sp, {{rvec({0, 1, 0, 1, 0})}}};
    EXPECT_THROW(sigma_deform(p, spec), NotAnticommutator);
}

TEST(VerifyReduction, OddCaseSingleAnticommutator) {
    EndoSpace s = quaternionic_heisenberg(2);
    DeformSpec spec{factor_splitting_h2(s), {{rvec({1, 0, 0})}}};
    ReductionReport rep = verify_reduction(s, spec);
    EXPECT_EQ(rep.r, 1);
    EXPECT_TRUE(rep.odd_case);
    EXPECT_TRUE(rep.complement_identity);
    EXPECT_TRUE(rep.s_identity);
    EXPECT_TRUE(rep.all_hold);
}

TEST(VerifyReduction, EvenCaseTwoAnticommutators) {
    EndoSpace s = quaternionic_heisenberg(2);
    DeformSpec spec{factor_splitting_h2(s), {{rvec({1, 0, 0}), rvec({0, 1, 0})}}};
    ReductionReport rep = verify_reduction(s, spec);
    EXPECT_EQ(rep.r, 2);
    EXPECT_FALSE(rep.odd_case);
    EXPECT_TRUE(rep.all_hold);
}

TEST(VerifyReduction, RejectsNonAnticommutatorS) {
    EndoSpace f = build_quaternionic_eswa(1, Quat::unit_i(), {{{Quat::unit_j()}}, {{Quat::unit_k()}}});
    EndoSpace p = product_space({f, f}, ZMerge::MergeAnticommutator);
    Splitting sp;
    RatMat B1(8, 4), B2(8, 4);
    for (int i = 0; i < 4; ++i) {
        B1(i, i) = 1;
        B2(4 + i, i) = 1;
    }
    sp.blocks = {B1, B2};
    sp.tags = {BlockTag::A, BlockTag::B};
    DeformSpec spec{sp, {{rvec({0, 1, 0, 1, 0})}}};
    EXPECT_THROW(verify_reduction(p, spec), NotAnticommutator);
}

TEST(ReplaceAnticommutator, IdentityAccepted) {
    EndoSpace s = quaternionic_heisenberg(2);
    EndoSpace r = replace_anticommutator(s, s.gen(0));
    EXPECT_EQ(r.generators, s.generators);
}

TEST(ReplaceAnticommutator, ConjugateAccepted) {
    // Space with blockwise-scaled anticommutator (L_i, 2 L_i); swapping the
    // factor blocks gives a conjugate anticommutator with the same complement.
    RatMat A = block_diag(left_mult_matrix(Quat::unit_i()), Rat(2) * left_mult_matrix(Quat::unit_i()));
    RatMat Jj = block_diag(left_mult_matrix(Quat::unit_j()), left_mult_matrix(Quat::unit_j()));
    RatMat Jk = block_diag(left_mult_matrix(Quat::unit_k()), left_mult_matrix(Quat::unit_k()));
    EndoSpace s = make_endo_space(8, {A, Jj, Jk}, 0);
    ASSERT_TRUE(is_anticommutator_index(s, 0));
    RatMat A_new = block_diag(Rat(2) * left_mult_matrix(Quat::unit_i()), left_mult_matrix(Quat::unit_i()));
    EndoSpace r = replace_anticommutator(s, A_new);
    EXPECT_EQ(r.gen(0), A_new);
    EXPECT_EQ(r.gen(1), Jj);
}

TEST(ReplaceAnticommutator, RejectsScaled) {
    EndoSpace s = quaternionic_heisenberg(2);
    EXPECT_THROW(replace_anticommutator(s, Rat(2) * s.gen(0)), NotConjugate);
}

TEST(ReplaceAnticommutator, RejectsNonAnticommuting) {
    EndoSpace s = quaternionic_heisenberg(2);
    EXPECT_THROW(replace_anticommutator(s, s.gen(1)), NotAnticommutatorWithComplement);
}
