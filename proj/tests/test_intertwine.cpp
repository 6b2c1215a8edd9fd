#include <isospec/deform.hpp>
#include <isospec/eswa.hpp>
#include <isospec/kappa.hpp>
#include <isospec/separable.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace isospec;

namespace {

std::vector<Rat> rvec(std::initializer_list<long> xs) {
    std::vector<Rat> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

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

// The headline pair: quaternionic Heisenberg on H^2 and its partial
// sign-reversal with only the anticommutator flipped on the second factor.
struct Pair {
    EndoSpace src, dst;
};

Pair headline_pair() {
    Pair p;
    p.src = quaternionic_heisenberg(2);
    DeformSpec spec{factor_splitting_h2(p.src), {{rvec({1, 0, 0})}}};
    p.dst = sigma_deform(p.src, spec);
    return p;
}

std::vector<std::vector<Rat>> small_w_set() {
    return {rvec({0, 0, 0}), rvec({1, 0, 0}), rvec({0, 1, 0}), rvec({1, 1, 0})};
}

}  // namespace

TEST(KappaStar, MapsAdaptedThetaForms) {
    Pair p = headline_pair();
    ThetaFrame fs = build_theta_frame(p.src), fd = build_theta_frame(p.dst);
    ASSERT_EQ(fs.seeds, fd.seeds);  // same greedy seeds for this pair
    for (int k : fs.seeds) {
        std::vector<Rat> u(8, Rat(0));
        u[static_cast<size_t>(k)] = 1;
        CPoly th_src = theta(fs.A0, u);
        EXPECT_EQ(kappa_star(p.src, p.dst, th_src), theta(fd.A0, u));
        EXPECT_EQ(kappa_star(p.src, p.dst, th_src.conj()), theta(fd.A0, u).conj());
    }
}

TEST(KappaStar, MultiplicativeLinearInvertible) {
    Pair p = headline_pair();
    std::mt19937 rng(101);
    for (int t = 0; t < 4; ++t) {
        CPoly a = oracles::random_homogeneous(rng, 8, 2, 4);
        CPoly b = oracles::random_homogeneous(rng, 8, 1 + t % 2, 4);
        CPoly ka = kappa_star(p.src, p.dst, a);
        CPoly kb = kappa_star(p.src, p.dst, b);
        EXPECT_EQ(kappa_star(p.src, p.dst, a * b), ka * kb);
        EXPECT_EQ(kappa_star(p.src, p.dst, a + b), ka + kb);
        // Degree preservation and inverse round trip.
        int d = -1;
        EXPECT_TRUE(ka.is_homogeneous(&d));
        if (!ka.is_zero()) EXPECT_EQ(d, 2);
        EXPECT_EQ(kappa_star(p.dst, p.src, ka), a);
    }
}

TEST(KappaStar, IdentityWhenSourceEqualsDestination) {
    EndoSpace s = quaternionic_heisenberg(2);
    std::mt19937 rng(103);
    CPoly a = oracles::random_homogeneous(rng, 8, 3, 5);
    EXPECT_EQ(kappa_star(s, s, a), a);
}

TEST(KappaStar, FixesSecondBlockRealCoordinate) {
    Pair p = headline_pair();
    CPoly x5 = CPoly::variable(8, 4);
    EXPECT_EQ(kappa_star(p.src, p.dst, x5), x5);
}

TEST(Kappa, FixesRadialTimesMode) {
    Pair p = headline_pair();
    SeparableFunction f;
    f.W = rvec({1, 0, 0});
    f.radial_power = 2;
    f.angular = {{0, CPoly::constant(8, CRat(Rat(3)))}};
    SeparableFunction g = kappa(p.src, p.dst, f);
    EXPECT_EQ(g.W, f.W);
    EXPECT_EQ(g.radial_power, 2);
    ASSERT_EQ(g.angular.size(), 1u);
    EXPECT_EQ(g.angular[0].second, f.angular[0].second);
}

TEST(Kappa, InvertibleOnDegreeTwoHarmonics) {
    Pair p = headline_pair();
    // kappa on H^(2) as a matrix over the harmonic basis: exact rank check.
    const auto& basis = harmonic_basis(8, 2);
    auto monos = monomials_of_degree(8, 2);
    CMat M(static_cast<int>(monos.size()), static_cast<int>(basis.size()));
    for (size_t j = 0; j < basis.size(); ++j) {
        SeparableFunction f;
        f.W = rvec({0, 0, 0});
        f.radial_power = 0;
        f.angular = {{2, basis[j]}};
        SeparableFunction g = kappa(p.src, p.dst, f);
        ASSERT_EQ(g.angular.size(), 1u);
        auto img = poly_to_vec(g.angular[0].second, monos);
        for (size_t i = 0; i < monos.size(); ++i) M(static_cast<int>(i), static_cast<int>(j)) = img[i];
    }
    EXPECT_EQ(rank(M), static_cast<int>(basis.size()));
}

TEST(FullLaplacian, HarmonicZeroModeKilled) {
    EndoSpace s = quaternionic_heisenberg(2);
    SeparableFunction f;
    f.W = rvec({0, 0, 0});
    f.radial_power = 0;
    f.angular = {{2, harmonic_basis(8, 2)[5]}};
    auto out = full_laplacian(s, f);
    EXPECT_TRUE(flatten(out, 8).is_zero());
}

TEST(FullLaplacian, HTypeQuadraticTermIsRadial) {
    // On an H-type space the coefficient-function term reduces to
    // -(1/4) |W|^2 |X|^2 F.
    EndoSpace s = quaternionic_heisenberg(2);
    auto W = rvec({1, 2, 0});
    RatMat JW = j_of(s, W);
    CPoly g = field_norm2_poly(JW);
    EXPECT_EQ(g, CRat(w_norm2(W)) * radius_squared(8));
}

TEST(FullLaplacian, MixedCoefficientVanishesAgainstAnticommutator) {
    // <J_A X, J_c X> = 0 identically: the cross quadratic form is skew.
    EndoSpace s = quaternionic_heisenberg(2);
    RatMat Q = s.gen(0).transpose() * s.gen(1);
    EXPECT_TRUE(is_skew(Q));
    CPoly cross(8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if (Q(i, j) != 0) cross += CRat(Q(i, j)) * (CPoly::variable(8, i) * CPoly::variable(8, j));
    EXPECT_TRUE(cross.is_zero());
}

TEST(FullLaplacian, MatchesDirectOperatorOnRandomSeparable) {
    EndoSpace s = quaternionic_heisenberg(1);
    std::mt19937 rng(107);
    SeparableFunction f;
    f.W = rvec({1, 0, 1});
    f.radial_power = 1;
    f.angular = {{2, harmonic_project(oracles::random_homogeneous(rng, 4, 2, 4))}};
    CPoly direct = slice_laplacian_poly(s, f.W, f.x_part(4));
    EXPECT_EQ(flatten(full_laplacian(s, f), 4), direct);
    // Components really are harmonic, graded by radial power.
    for (const auto& comp : full_laplacian(s, f)) {
        for (const auto& [q, h] : comp.angular) {
            EXPECT_TRUE(laplacian_x(h).is_zero());
            int d = -1;
            EXPECT_TRUE(h.is_homogeneous(&d));
            EXPECT_EQ(d, q);
        }
    }
}

TEST(ModeConjugator, IdentityOffTheAnticommutatorAxis) {
    Pair p = headline_pair();
    ModeConjugator c = build_mode_conjugator(p.src, p.dst, rvec({0, 1, 0}));
    ASSERT_TRUE(c.Phi.has_value());
    EXPECT_EQ(*c.Phi, RatMat::identity(8));
}

TEST(ModeConjugator, PureAnticommutatorMode) {
    Pair p = headline_pair();
    ModeConjugator c = build_mode_conjugator(p.src, p.dst, rvec({1, 0, 0}));
    EXPECT_TRUE(c.squares_equal);
    ASSERT_TRUE(c.Phi.has_value());
    const RatMat& Phi = *c.Phi;
    EXPECT_EQ(Phi.transpose() * Phi, RatMat::identity(8));
    EXPECT_EQ(Phi * j_of(p.dst, rvec({1, 0, 0})), j_of(p.src, rvec({1, 0, 0})) * Phi);
}

TEST(ModeConjugator, MixedModes) {
    Pair p = headline_pair();
    for (auto W : {rvec({1, 1, 0}), rvec({1, 0, 1}), rvec({2, 1, -1}), rvec({-1, 2, 2})}) {
        ModeConjugator c = build_mode_conjugator(p.src, p.dst, W);
        EXPECT_TRUE(c.squares_equal);
        ASSERT_TRUE(c.Phi.has_value()) << "W = (" << rat_str(W[0]) << "," << rat_str(W[1]) << ","
                                       << rat_str(W[2]) << ")";
        const RatMat& Phi = *c.Phi;
        EXPECT_EQ(Phi.transpose() * Phi, RatMat::identity(8));
        EXPECT_EQ(Phi * j_of(p.dst, W), j_of(p.src, W) * Phi);
    }
}

TEST(VerifyIntertwine, TrivialPairPasses) {
    EndoSpace s = quaternionic_heisenberg(1);
    IntertwineReport rep = verify_intertwine(s, s, 2, {rvec({0, 0, 0}), rvec({1, 0, 0})}, 1);
    EXPECT_TRUE(rep.preconditions_ok);
    EXPECT_TRUE(rep.all_pass);
}

TEST(VerifyIntertwine, HeadlinePairSmallGrid) {
    Pair p = headline_pair();
    IntertwineReport rep = verify_intertwine(p.src, p.dst, 2, small_w_set(), 1);
    EXPECT_TRUE(rep.preconditions_ok);
    for (const auto& mc : rep.modes) {
        EXPECT_TRUE(mc.conjugator_found);
        EXPECT_EQ(mc.failures, 0) << mc.first_failure;
    }
    EXPECT_TRUE(rep.all_pass);
}

TEST(VerifyIntertwine, RejectsDifferentASpectrum) {
    EndoSpace src = quaternionic_heisenberg(2);
    RatMat A2 = block_diag(left_mult_matrix(Quat::unit_i()), Rat(2) * left_mult_matrix(Quat::unit_i()));
    EndoSpace dst = make_endo_space(8, {A2, src.gen(1), src.gen(2)}, 0);
    IntertwineReport rep = verify_intertwine(src, dst, 1, {rvec({1, 0, 0})}, 0);
    EXPECT_FALSE(rep.preconditions_ok);
    EXPECT_FALSE(rep.all_pass);
}

TEST(CheckJ2, HTypeDiagonalAndOffDiagonal) {
    EndoSpace s = quaternionic_heisenberg(1);
    J2Report dd = check_j2_vanishes(s, 1, 1);
    EXPECT_TRUE(dd.j2_vanishes);
    EXPECT_TRUE(dd.j1_matches_jcd);
    EXPECT_EQ(dd.j_cd, radius_squared(4));  // <J_c X, J_c X> = |X|^2 on H-type
    J2Report cd = check_j2_vanishes(s, 1, 2);
    EXPECT_TRUE(cd.j2_vanishes);
    EXPECT_TRUE(cd.j1_matches_jcd);
    EXPECT_TRUE(cd.j_cd.is_zero());
}

TEST(CheckJ2, ProductInstanceAllPairs) {
    EndoSpace f = build_quaternionic_eswa(1, Quat::unit_i(), {{{Quat::unit_j()}}, {{Quat::unit_k()}}});
    EndoSpace p = product_space({f, f}, ZMerge::MergeAnticommutator);
    ASSERT_FALSE(check_htype(p).holds);
    for (int c = 1; c < p.l; ++c)
        for (int d = 1; d < p.l; ++d) {
            J2Report rep = check_j2_vanishes(p, c, d);
            EXPECT_TRUE(rep.j2_vanishes) << c << "," << d;
            EXPECT_TRUE(rep.j1_matches_jcd) << c << "," << d;
        }
}

TEST(BoundaryPreservation, HeadlinePair) {
    Pair p = headline_pair();
    BoundaryReport rep = check_boundary_preservation(p.src, p.dst, small_w_set(), 2);
    EXPECT_TRUE(rep.radial_functions_fixed);
    EXPECT_TRUE(rep.degree_preserved);
    EXPECT_TRUE(rep.kappa_star_anticommutator);
    EXPECT_TRUE(rep.mode_rotational_derivatives);
    EXPECT_TRUE(rep.all_pass);
}
