#pragma once

// Decomposition of the X-space into minimal common invariant subspaces of the
// generators, and (id,-id) splittings built from them. Everything is exact
// over Q; a block is certified minimal when the self-adjoint part of its
// restricted commutant consists of scalars only.

#include "endo_space.hpp"
#include "errors.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace isospec {

struct InvariantBlock {
    RatMat basis;          // n x d, columns span the block (RREF-canonical rows transposed)
    bool minimal_certified = true;
};

namespace detail {

// Matrix of the restriction of M to the column span of Q (which must be
// M-invariant): solves Q X = M Q.
inline RatMat restrict_to(const RatMat& M, const RatMat& Q) {
    int d = Q.cols();
    RatMat X(d, d);
    RatMat G = Q.transpose() * Q;
    RatMat Gi = inverse(G);
    RatMat rhs = Q.transpose() * (M * Q);
    RatMat R = Gi * rhs;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) X(i, j) = R(i, j);
    return X;
}

inline bool preserves_span(const RatMat& M, const RatMat& Q) {
    // rank([Q | MQ]) == rank(Q)
    RatMat MQ = M * Q;
    RatMat cat(Q.rows(), Q.cols() + MQ.cols());
    for (int i = 0; i < Q.rows(); ++i) {
        for (int j = 0; j < Q.cols(); ++j) cat(i, j) = Q(i, j);
        for (int j = 0; j < MQ.cols(); ++j) cat(i, Q.cols() + j) = MQ(i, j);
    }
    return rank(cat) == rank(Q);
}

// Basis of {M : M G_alpha = G_alpha M for all alpha} as d x d matrices.
inline std::vector<RatMat> commutant_basis(const std::vector<RatMat>& gens, int d) {
    int neq = static_cast<int>(gens.size()) * d * d;
    RatMat sys(neq, d * d);
    int row = 0;
    for (const auto& G : gens) {
        // (G M - M G)_{ij} = sum_k G_{ik} M_{kj} - M_{ik} G_{kj}
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                for (int k = 0; k < d; ++k) {
                    sys(row, k * d + j) += G(i, k);
                    sys(row, i * d + k) -= G(k, j);
                }
                ++row;
            }
    }
    RatMat ns = nullspace(sys);
    std::vector<RatMat> basis;
    for (int c = 0; c < ns.cols(); ++c) {
        RatMat M(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) M(i, j) = ns(i * d + j, c);
        basis.push_back(M);
    }
    return basis;
}

// Elements of span{basis} that are self-adjoint w.r.t. the Gram matrix D:
// D M = M^T D.
inline std::vector<RatMat> self_adjoint_subspace(const std::vector<RatMat>& basis, const RatMat& D) {
    if (basis.empty()) return {};
    int d = D.rows();
    int m = static_cast<int>(basis.size());
    RatMat sys(d * d, m);
    for (int b = 0; b < m; ++b) {
        RatMat R = D * basis[static_cast<size_t>(b)] - basis[static_cast<size_t>(b)].transpose() * D;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) sys(i * d + j, b) = R(i, j);
    }
    RatMat ns = nullspace(sys);
    std::vector<RatMat> out;
    for (int c = 0; c < ns.cols(); ++c) {
        RatMat M(d, d);
        for (int b = 0; b < m; ++b) {
            if (ns(b, c) == 0) continue;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) M(i, j) += ns(b, c) * basis[static_cast<size_t>(b)](i, j);
        }
        out.push_back(M);
    }
    return out;
}

inline bool is_scalar(const RatMat& M) {
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            if (i != j && M(i, j) != 0) return false;
    for (int i = 1; i < M.rows(); ++i)
        if (M(i, i) != M(0, 0)) return false;
    return true;
}

inline RatMat rref_canonical_basis(const RatMat& Q) {
    RatMat rows = Q.transpose();
    rref(rows);
    // Drop zero rows (there are none when Q has full column rank).
    return rows.transpose();
}

inline bool lex_less(const RatMat& A, const RatMat& B) {
    // Compare the canonical bases column-by-column, entry by entry.
    int ca = A.cols(), cb = B.cols();
    for (int c = 0; c < std::min(ca, cb); ++c)
        for (int i = 0; i < A.rows(); ++i) {
            if (A(i, c) != B(i, c)) return A(i, c) > B(i, c);  // e1-leading blocks first
        }
    return ca < cb;
}

}  // namespace detail

inline std::vector<InvariantBlock> invariant_decomposition(const EndoSpace& s) {
    struct Work {
        RatMat Q;
        bool done = false;
        bool certified = true;
    };
    std::vector<Work> blocks{{RatMat::identity(s.n), false, true}};

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Work> next;
        for (auto& blk : blocks) {
            if (blk.done) {
                next.push_back(blk);
                continue;
            }
            int d = blk.Q.cols();
            if (d == 1) {
                blk.done = true;
                next.push_back(blk);
                continue;
            }
            std::vector<RatMat> rgens;
            rgens.reserve(static_cast<size_t>(s.l));
            for (int a = 0; a < s.l; ++a) rgens.push_back(detail::restrict_to(s.gen(a), blk.Q));
            RatMat D = blk.Q.transpose() * blk.Q;
            auto comm = detail::commutant_basis(rgens, d);
            auto sym = detail::self_adjoint_subspace(comm, D);
            // Scalars are always present; minimal iff nothing else is.
            std::optional<RatMat> splitter;
            for (const auto& S : sym) {
                if (!detail::is_scalar(S)) {
                    splitter = S;
                    break;
                }
            }
            if (!splitter) {
                blk.done = true;
                next.push_back(blk);
                continue;
            }
            auto ev = detail::rational_eigenvalues(*splitter);
            bool split_ok = false;
            if (ev && ev->size() > 1) {
                for (const auto& lam : *ev) {
                    RatMat shifted = *splitter;
                    for (int i = 0; i < d; ++i) shifted(i, i) -= lam;
                    RatMat ker = nullspace(shifted);
                    if (ker.cols() == 0) continue;
                    Work sub;
                    sub.Q = blk.Q * ker;
                    next.push_back(std::move(sub));
                    split_ok = true;
                }
            }
            if (split_ok) {
                changed = true;
            } else {
                // Non-scalar self-adjoint element exists but does not split
                // over Q; the block is invariant yet not certified minimal.
                blk.done = true;
                blk.certified = false;
                next.push_back(blk);
            }
        }
        blocks = std::move(next);
    }

    std::vector<InvariantBlock> out;
    for (auto& b : blocks) {
        InvariantBlock ib;
        ib.basis = detail::rref_canonical_basis(b.Q);
        ib.minimal_certified = b.certified;
        out.push_back(std::move(ib));
    }
    std::sort(out.begin(), out.end(),
              [](const InvariantBlock& a, const InvariantBlock& b) { return detail::lex_less(a.basis, b.basis); });
    return out;
}

// Non-degenerating property: every minimal invariant block has dimension > 2.
inline bool check_nondegenerating(const EndoSpace& s) {
    for (const auto& b : invariant_decomposition(s))
        if (b.basis.cols() <= 2) return false;
    return true;
}

enum class BlockTag { A, B };

struct Splitting {
    std::vector<RatMat> blocks;  // column bases, pairwise orthogonal, exhaustive
    std::vector<BlockTag> tags;  // a = keep, b = flip
};

// Orthogonal projector onto the column span (exact).
inline RatMat projector(const RatMat& Q) {
    return Q * inverse(Q.transpose() * Q) * Q.transpose();
}

inline void validate_splitting(const EndoSpace& s, const Splitting& sp) {
    if (sp.blocks.size() != sp.tags.size() || sp.blocks.empty())
        throw DimensionMismatch("splitting: blocks/tags mismatch");
    int total = 0;
    for (const auto& Q : sp.blocks) total += Q.cols();
    if (total != s.n) throw DimensionMismatch("splitting: blocks do not exhaust R^n");
    for (size_t i = 0; i < sp.blocks.size(); ++i) {
        for (size_t j = i + 1; j < sp.blocks.size(); ++j)
            if (!(sp.blocks[i].transpose() * sp.blocks[j]).is_zero())
                throw NotInvariant("splitting: blocks not orthogonal");
        for (int a = 0; a < s.l; ++a)
            if (!detail::preserves_span(s.gen(a), sp.blocks[i]))
                throw NotInvariant("splitting: block " + std::to_string(i) +
                                   " not invariant under generator " + std::to_string(a));
    }
}

// sigma = +1 on a-blocks, -1 on b-blocks.
inline RatMat sigma_of(const Splitting& sp) {
    RatMat sig(sp.blocks[0].rows(), sp.blocks[0].rows());
    for (size_t i = 0; i < sp.blocks.size(); ++i) {
        RatMat P = projector(sp.blocks[i]);
        sig = (sp.tags[i] == BlockTag::A) ? sig + P : sig - P;
    }
    return sig;
}

// Splitting assembled from the canonical invariant decomposition.
inline Splitting make_splitting(const EndoSpace& s, const std::vector<BlockTag>& tags) {
    auto dec = invariant_decomposition(s);
    if (tags.size() != dec.size())
        throw DimensionMismatch("make_splitting: expected " + std::to_string(dec.size()) + " tags");
    Splitting sp;
    for (auto& b : dec) sp.blocks.push_back(b.basis);
    sp.tags = tags;
    validate_splitting(s, sp);
    return sp;
}

}  // namespace isospec
