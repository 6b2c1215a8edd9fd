#pragma once

// Quaternionic endomorphism spaces with a designated anticommutator:
// the diagonal matrix diag(a,...,a) for an imaginary quaternion a, together
// with symmetric k x k matrices whose entries are imaginary quaternions
// perpendicular to a, all represented as real skew maps on H^k = R^{4k}.

#include "endo_space.hpp"
#include "errors.hpp"
#include "quaternion.hpp"

#include <string>
#include <vector>

namespace isospec {

enum class RepSide { Left, Right };

using QuatMatrix = std::vector<std::vector<Quat>>;  // k x k

namespace detail {

inline RatMat quat_matrix_rep(int k, const QuatMatrix& m, RepSide side) {
    RatMat rep(4 * k, 4 * k);
    for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s) {
            const Quat& q = m[static_cast<size_t>(r)][static_cast<size_t>(s)];
            if (q.is_zero()) continue;
            RatMat blk = (side == RepSide::Left) ? left_mult_matrix(q) : right_mult_matrix(q);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) rep(4 * r + i, 4 * s + j) = blk(i, j);
        }
    return rep;
}

}  // namespace detail

inline EndoSpace build_quaternionic_eswa(int k, const Quat& a,
                                         const std::vector<QuatMatrix>& sym_mats,
                                         RepSide side = RepSide::Left) {
    if (k <= 0) throw DimensionMismatch("build_quaternionic_eswa: k must be positive");
    if (!a.is_imaginary() || a.is_zero()) throw NotImaginary("diagonal entry a");
    for (size_t m = 0; m < sym_mats.size(); ++m) {
        const QuatMatrix& M = sym_mats[m];
        if (static_cast<int>(M.size()) != k)
            throw DimensionMismatch("sym_mat " + std::to_string(m) + " is not k x k");
        for (int r = 0; r < k; ++r) {
            if (static_cast<int>(M[static_cast<size_t>(r)].size()) != k)
                throw DimensionMismatch("sym_mat " + std::to_string(m) + " is not k x k");
            for (int s = 0; s < k; ++s) {
                const Quat& q = M[static_cast<size_t>(r)][static_cast<size_t>(s)];
                if (!q.is_imaginary()) throw NotImaginary("sym_mat " + std::to_string(m) + " entry");
                if (Quat::dot(q, a) != 0)
                    throw NotPerpendicular("sym_mat " + std::to_string(m) + " entry not perpendicular to a");
                if (!(q == M[static_cast<size_t>(s)][static_cast<size_t>(r)]))
                    throw NotSymmetric("sym_mat " + std::to_string(m));
            }
        }
    }
    QuatMatrix diag(static_cast<size_t>(k), std::vector<Quat>(static_cast<size_t>(k)));
    for (int r = 0; r < k; ++r) diag[static_cast<size_t>(r)][static_cast<size_t>(r)] = a;
    std::vector<RatMat> gens;
    gens.push_back(detail::quat_matrix_rep(k, diag, side));
    for (const auto& M : sym_mats) gens.push_back(detail::quat_matrix_rep(k, M, side));
    return make_endo_space(4 * k, std::move(gens), 0, "quaternionic_eswa");
}

// Quaternionic Heisenberg space on H^k: generators are the left
// multiplications by i, j, k acting diagonally. H-type, every direction is an
// anticommutator; the i-direction is the designated one.
inline EndoSpace quaternionic_heisenberg(int k) {
    QuatMatrix ja(static_cast<size_t>(k), std::vector<Quat>(static_cast<size_t>(k)));
    QuatMatrix jb = ja, jc = ja;
    for (int r = 0; r < k; ++r) {
        ja[static_cast<size_t>(r)][static_cast<size_t>(r)] = Quat::unit_i();
        jb[static_cast<size_t>(r)][static_cast<size_t>(r)] = Quat::unit_j();
        jc[static_cast<size_t>(r)][static_cast<size_t>(r)] = Quat::unit_k();
    }
    std::vector<RatMat> gens = {detail::quat_matrix_rep(k, ja, RepSide::Left),
                                detail::quat_matrix_rep(k, jb, RepSide::Left),
                                detail::quat_matrix_rep(k, jc, RepSide::Left)};
    return make_endo_space(4 * k, std::move(gens), 0, "quaternionic_heisenberg");
}

}  // namespace isospec
