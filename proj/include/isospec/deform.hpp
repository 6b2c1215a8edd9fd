#pragma once

// Sign-reversal deformations J_Z -> J_Z sigma on an invariant splitting,
// either for all Z or only for Z in a subspace s of anticommutator
// directions, plus the exact conjugation identities that reduce a full
// deformation to a partial one.

#include "endo_space.hpp"
#include "errors.hpp"
#include "splitting.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace isospec {

struct DeformSpec {
    Splitting splitting;
    // Optional partial-deformation directions: orthogonal rational Z-vectors.
    std::optional<std::vector<std::vector<Rat>>> s_subspace;
};

namespace detail {

// The subspace condition: every element of s must be an anticommutator.
// Exact sufficient-and-necessary basis conditions: each basis direction is an
// anticommutator, distinct basis endomorphisms anticommute pairwise, and all
// have equal squares.
inline void validate_s_subspace(const EndoSpace& sp, const std::vector<std::vector<Rat>>& s_basis) {
    if (s_basis.empty()) throw DimensionMismatch("empty s_subspace basis");
    for (size_t i = 0; i < s_basis.size(); ++i) {
        for (size_t j = i + 1; j < s_basis.size(); ++j) {
            Rat dot(0);
            for (int a = 0; a < sp.l; ++a) dot += s_basis[i][static_cast<size_t>(a)] * s_basis[j][static_cast<size_t>(a)];
            if (dot != 0) throw DimensionMismatch("s_subspace basis not orthogonal");
        }
        if (!is_anticommutator(sp, s_basis[i]))
            throw NotAnticommutator("s direction " + std::to_string(i));
    }
    std::vector<RatMat> As;
    for (const auto& v : s_basis) As.push_back(j_of(sp, v));
    for (size_t i = 0; i < As.size(); ++i)
        for (size_t j = i + 1; j < As.size(); ++j) {
            if (!anticommutes(As[i], As[j]))
                throw NotAnticommutator("s directions " + std::to_string(i) + "," + std::to_string(j) +
                                        " do not anticommute");
            if (!(As[i] * As[i] == As[j] * As[j]))
                throw NotAnticommutator("s directions with unequal squares");
        }
}

inline bool is_coordinate_direction(const std::vector<Rat>& v, int* index) {
    int found = -1;
    for (size_t a = 0; a < v.size(); ++a) {
        if (v[a] == 0) continue;
        if (found >= 0) return false;
        found = static_cast<int>(a);
    }
    if (found < 0) return false;
    *index = found;
    return true;
}

}  // namespace detail

// Full deformation (s unset): every generator flips sign on the b-part.
// Partial deformation: only the s-directions flip. When the s basis is
// axis-aligned the generator order and the anticommutator flag survive;
// otherwise the result uses an s-adapted Z-basis (s first, complement after).
inline EndoSpace sigma_deform(const EndoSpace& sp, const DeformSpec& spec) {
    validate_splitting(sp, spec.splitting);
    RatMat sig = sigma_of(spec.splitting);

    if (!spec.s_subspace) {
        std::vector<RatMat> gens;
        gens.reserve(static_cast<size_t>(sp.l));
        for (int a = 0; a < sp.l; ++a) gens.push_back(sp.gen(a) * sig);
        return make_endo_space(sp.n, std::move(gens), sp.anticommutator_index, sp.provenance + "+sigma");
    }

    const auto& s_basis = *spec.s_subspace;
    detail::validate_s_subspace(sp, s_basis);

    bool axis_aligned = true;
    std::vector<bool> in_s(static_cast<size_t>(sp.l), false);
    for (const auto& v : s_basis) {
        int idx = -1;
        if (detail::is_coordinate_direction(v, &idx))
            in_s[static_cast<size_t>(idx)] = true;
        else
            axis_aligned = false;
    }

    if (axis_aligned) {
        std::vector<RatMat> gens;
        gens.reserve(static_cast<size_t>(sp.l));
        for (int a = 0; a < sp.l; ++a)
            gens.push_back(in_s[static_cast<size_t>(a)] ? sp.gen(a) * sig : sp.gen(a));
        return make_endo_space(sp.n, std::move(gens), sp.anticommutator_index, sp.provenance + "+sigma_s");
    }

    // General position: adapted Z-basis, s-directions first.
    RatMat srows(static_cast<int>(s_basis.size()), sp.l);
    for (size_t i = 0; i < s_basis.size(); ++i)
        for (int a = 0; a < sp.l; ++a) srows(static_cast<int>(i), a) = s_basis[i][static_cast<size_t>(a)];
    RatMat comp = nullspace(srows);
    std::vector<RatMat> gens;
    for (size_t i = 0; i < s_basis.size(); ++i) gens.push_back(j_of(sp, s_basis[i]) * sig);
    for (int c = 0; c < comp.cols(); ++c) gens.push_back(j_of(sp, comp.col(c)));
    return make_endo_space(sp.n, std::move(gens), std::nullopt, sp.provenance + "+sigma_s_adapted");
}

struct ReductionReport {
    int r = 0;  // dim of s
    bool odd_case = false;
    // r odd: conjugation carries the undeformed complement generators to
    // their deformed versions and fixes the deformed s-generators.
    // r even: conjugation fixes the complement and undoes the s-deformation.
    bool complement_identity = true;
    bool s_identity = true;
    bool all_hold = false;
    std::string conclusion;
};

// Builds the orthogonal map that is the identity on the a-part and the
// product of the unit anticommutator endomorphisms on the b-part, and checks
// the exact conjugation identities for the given partial deformation.
inline ReductionReport verify_reduction(const EndoSpace& sp, const DeformSpec& spec) {
    if (!spec.s_subspace) throw DimensionMismatch("verify_reduction: s_subspace required");
    validate_splitting(sp, spec.splitting);
    const auto& s_basis = *spec.s_subspace;
    detail::validate_s_subspace(sp, s_basis);

    RatMat sig = sigma_of(spec.splitting);
    RatMat Pa(sp.n, sp.n), Pb(sp.n, sp.n);
    for (size_t i = 0; i < spec.splitting.blocks.size(); ++i) {
        RatMat P = projector(spec.splitting.blocks[i]);
        if (spec.splitting.tags[i] == BlockTag::A)
            Pa = Pa + P;
        else
            Pb = Pb + P;
    }

    ReductionReport rep;
    rep.r = static_cast<int>(s_basis.size());
    rep.odd_case = (rep.r % 2 == 1);

    // Unit parts of the s-directions (exact rescale demanded).
    RatMat prod = RatMat::identity(sp.n);
    for (const auto& v : s_basis) {
        UnitRescale ur = unit_rescale(j_of(sp, v));
        prod = prod * ur.A0;
    }
    RatMat O = Pa + prod * Pb;     // A_0^{(b)}
    RatMat Oi = inverse(O);

    // Complement directions within the Z-space.
    RatMat srows(rep.r, sp.l);
    for (int i = 0; i < rep.r; ++i)
        for (int a = 0; a < sp.l; ++a) srows(i, a) = s_basis[static_cast<size_t>(i)][static_cast<size_t>(a)];
    RatMat comp = nullspace(srows);

    for (int c = 0; c < comp.cols(); ++c) {
        RatMat JZ = j_of(sp, comp.col(c));
        RatMat lhs = Oi * JZ * O;
        RatMat rhs = rep.odd_case ? JZ * sig : JZ;
        if (!(lhs == rhs)) rep.complement_identity = false;
    }
    for (const auto& v : s_basis) {
        RatMat JA = j_of(sp, v) * sig;  // deformed s-generator
        RatMat lhs = Oi * JA * O;
        RatMat rhs = rep.odd_case ? JA : j_of(sp, v);
        if (!(lhs == rhs)) rep.s_identity = false;
    }
    rep.all_hold = rep.complement_identity && rep.s_identity;
    if (rep.all_hold)
        rep.conclusion = rep.odd_case
                             ? "partial deformation is isometric to the full sign-reversal deformation"
                             : "partial deformation is isometric to the original space";
    else
        rep.conclusion = "conjugation identities failed";
    return rep;
}

// Eigenvalue multiset of a skew matrix via the symmetric matrix -A^2
// (numerical, used only for the conjugacy precondition).
inline std::vector<double> skew_singular_spectrum(const RatMat& A) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(-Rat(1) * (A * A)));
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.begin(), v.end());
    return v;
}

// Swap the designated anticommutator for an isospectral one, keeping the
// complement unchanged.
inline EndoSpace replace_anticommutator(const EndoSpace& sp, const RatMat& A_new,
                                        double tol = 1e-10) {
    if (!sp.anticommutator_index) throw DimensionMismatch("space has no designated anticommutator");
    int a0 = *sp.anticommutator_index;
    if (!is_skew(A_new)) throw NotSkew("replace_anticommutator");
    for (int b = 0; b < sp.l; ++b) {
        if (b == a0) continue;
        if (!anticommutes(A_new, sp.gen(b)))
            throw NotAnticommutatorWithComplement("generator " + std::to_string(b));
    }
    auto sa = skew_singular_spectrum(sp.gen(a0));
    auto sb = skew_singular_spectrum(A_new);
    double scale = 1e-30;
    for (double x : sa) scale = std::max(scale, std::abs(x));
    for (size_t i = 0; i < sa.size(); ++i)
        if (std::abs(sa[i] - sb[i]) > tol * scale)
            throw NotConjugate("eigenvalue multiset differs at index " + std::to_string(i));
    EndoSpace out = sp;
    out.generators[static_cast<size_t>(a0)] = A_new;
    out.provenance += "+replaced_anticommutator";
    return make_endo_space(out.n, out.generators, out.anticommutator_index, out.provenance);
}

}  // namespace isospec
