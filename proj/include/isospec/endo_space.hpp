#pragma once

// Endomorphism spaces: a Euclidean X-space R^n, a Z-space R^l with a declared
// orthonormal basis, and skew-symmetric generators J_1..J_l acting on the
// X-space. Houses the map Z -> J_Z, the Heisenberg-type identity test,
// anticommutator detection, unit rescaling, Cartesian products and the
// two-step bracket. All checks are exact.

#include "errors.hpp"
#include "linalg.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace isospec {

struct EndoSpace {
    int n = 0;  // X-dimension
    int l = 0;  // Z-dimension
    std::vector<RatMat> generators;        // l skew n x n matrices
    std::optional<int> anticommutator_index;  // designated A = J_{alpha0}
    std::string provenance;

    const RatMat& gen(int alpha) const { return generators.at(static_cast<size_t>(alpha)); }
};

inline EndoSpace make_endo_space(int n, std::vector<RatMat> generators,
                                 std::optional<int> anticommutator_index = std::nullopt,
                                 std::string provenance = {}) {
    if (n <= 0) throw DimensionMismatch("X-dimension must be positive");
    if (generators.empty()) throw DependentGenerators("need at least one generator");
    for (size_t a = 0; a < generators.size(); ++a) {
        const RatMat& J = generators[a];
        if (J.rows() != n || J.cols() != n)
            throw DimensionMismatch("generator " + std::to_string(a) + " is not " +
                                    std::to_string(n) + "x" + std::to_string(n));
        if (!is_skew(J)) throw NotSkew("generator " + std::to_string(a));
    }
    // Linear independence of the generators as vectors in R^{n^2}.
    int l = static_cast<int>(generators.size());
    RatMat flat(l, n * n);
    for (int a = 0; a < l; ++a)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) flat(a, i * n + j) = generators[a](i, j);
    if (rank(flat) < l) throw DependentGenerators("generator rank " + std::to_string(rank(flat)) +
                                                  " < l = " + std::to_string(l));
    EndoSpace s;
    s.n = n;
    s.l = l;
    s.generators = std::move(generators);
    s.provenance = std::move(provenance);
    if (anticommutator_index) {
        if (*anticommutator_index < 0 || *anticommutator_index >= l)
            throw DimensionMismatch("anticommutator_index out of range");
        s.anticommutator_index = anticommutator_index;
    }
    return s;
}

// J_Z = sum_alpha z_alpha J_alpha.
inline RatMat j_of(const EndoSpace& s, const std::vector<Rat>& z) {
    if (static_cast<int>(z.size()) != s.l) throw DimensionMismatch("j_of: Z-vector length");
    RatMat J(s.n, s.n);
    for (int a = 0; a < s.l; ++a) {
        if (z[a] == 0) continue;
        for (int i = 0; i < s.n; ++i)
            for (int j = 0; j < s.n; ++j) J(i, j) += z[a] * s.gen(a)(i, j);
    }
    return J;
}

inline std::vector<Rat> unit_z(int l, int alpha) {
    std::vector<Rat> z(l, Rat(0));
    z[alpha] = 1;
    return z;
}

struct HTypeReport {
    bool holds = false;
    std::vector<std::pair<int, int>> failing_pairs;
};

// J_alpha J_beta + J_beta J_alpha = -2 delta_{alpha beta} id, exactly.
// (The Z-basis is declared orthonormal; see is_anticommutator below.)
inline HTypeReport check_htype(const EndoSpace& s) {
    HTypeReport rep;
    RatMat id = RatMat::identity(s.n);
    for (int a = 0; a < s.l; ++a)
        for (int b = a; b < s.l; ++b) {
            RatMat lhs = s.gen(a) * s.gen(b) + s.gen(b) * s.gen(a);
            RatMat rhs = (a == b) ? Rat(-2) * id : RatMat(s.n, s.n);
            if (!(lhs == rhs)) rep.failing_pairs.emplace_back(a, b);
        }
    rep.holds = rep.failing_pairs.empty();
    return rep;
}

// Orthogonal complement of a single Z-direction within R^l (exact basis).
inline std::vector<std::vector<Rat>> z_orthogonal_complement(const std::vector<Rat>& a) {
    int l = static_cast<int>(a.size());
    RatMat row(1, l);
    for (int j = 0; j < l; ++j) row(0, j) = a[j];
    RatMat ns = nullspace(row);
    std::vector<std::vector<Rat>> basis;
    for (int k = 0; k < ns.cols(); ++k) basis.push_back(ns.col(k));
    return basis;
}

// True iff A = J_{a_coords} is non-degenerate and anticommutes with J_B for
// every B orthogonal to a_coords in the Z inner product.
inline bool is_anticommutator(const EndoSpace& s, const std::vector<Rat>& a_coords) {
    RatMat A = j_of(s, a_coords);
    if (rank(A) < s.n) throw DegenerateA("is_anticommutator: J_A singular");
    for (const auto& b : z_orthogonal_complement(a_coords)) {
        if (!anticommutes(A, j_of(s, b))) return false;
    }
    return true;
}

inline bool is_anticommutator_index(const EndoSpace& s, int alpha) {
    return is_anticommutator(s, unit_z(s.l, alpha));
}

struct UnitRescale {
    RatMat S;   // symmetric positive-definite scaling
    RatMat A0;  // unit part, A0^2 = -id
    bool exact = true;
};

namespace detail {

// Nearest rational to x with denominator at most max_den (continued
// fractions).
inline Rat rational_reconstruct(double x, long max_den = 1000000) {
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (fl > 9.0e17 || fl < -9.0e17) break;
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = v - fl;
        if (rem < 1e-14) break;
        v = 1.0 / rem;
    }
    if (q1 == 0) return Rat(0);
    Rat r(p1, q1);
    r.canonicalize();
    return r;
}

// Rational eigenvalues of a diagonalizable rational matrix with real rational
// spectrum (symmetric, or self-adjoint for some inner product). Candidates
// come from a floating-point eigensolve and are verified exactly; returns
// nullopt when the exact verification fails (irrational spectrum).
inline std::optional<std::vector<Rat>> rational_eigenvalues(const RatMat& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(m));
    if (es.info() != Eigen::Success) return std::nullopt;
    std::vector<Rat> cp = char_poly(m);
    auto eval = [&](const Rat& x) {
        Rat v(0);
        for (const auto& c : cp) v = v * x + c;
        return v;
    };
    std::vector<Rat> roots;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        auto z = es.eigenvalues()(i);
        if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z.real()))) return std::nullopt;
        Rat cand = rational_reconstruct(z.real());
        if (eval(cand) != 0) return std::nullopt;
        bool seen = false;
        for (const auto& r : roots) seen = seen || (r == cand);
        if (!seen) roots.push_back(cand);
    }
    // The minimal polynomial must split over the found roots:
    // prod (m - r) annihilates m for diagonalizable m.
    RatMat prod = RatMat::identity(m.rows());
    for (const auto& r : roots) {
        RatMat f = m;
        for (int i = 0; i < m.rows(); ++i) f(i, i) -= r;
        prod = prod * f;
    }
    if (!prod.is_zero()) return std::nullopt;
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Spectral projector onto the eigenvalue lambda of a diagonalizable matrix
// with rational spectrum, by Lagrange interpolation.
inline RatMat eigen_projector(const RatMat& m, const std::vector<Rat>& spectrum, const Rat& lambda) {
    RatMat P = RatMat::identity(m.rows());
    for (const auto& mu : spectrum) {
        if (mu == lambda) continue;
        RatMat f = m;
        for (int i = 0; i < m.rows(); ++i) f(i, i) -= mu;
        P = P * f;
        P = (Rat(1) / (lambda - mu)) * P;
    }
    return P;
}

}  // namespace detail

// A = S o A0 with S symmetric positive definite, A0 skew, A0^2 = -id and
// S A0 = A0 S. Exact whenever -A^2 has rational eigenvalues that are squares
// of rationals (covers blockwise-scaled instances); throws otherwise.
inline UnitRescale unit_rescale(const RatMat& A) {
    if (!is_skew(A)) throw NotSkew("unit_rescale");
    int n = A.rows();
    if (rank(A) < n) throw DegenerateA("unit_rescale: singular A");
    RatMat M = -Rat(1) * (A * A);  // symmetric positive definite
    auto ev = detail::rational_eigenvalues(M);
    if (!ev) throw NotUnitRescalable("-A^2 has no rational eigendecomposition");
    RatMat S(n, n);
    for (const auto& lam : *ev) {
        if (lam <= 0) throw DegenerateA("unit_rescale: -A^2 not positive definite");
        // Need sqrt(lam) rational.
        mpz_class sn = sqrt(lam.get_num()), sd = sqrt(lam.get_den());
        if (sn * sn != lam.get_num() || sd * sd != lam.get_den())
            throw NotUnitRescalable("eigenvalue of -A^2 is not a rational square");
        Rat slam(sn, sd);
        RatMat P = detail::eigen_projector(M, *ev, lam);
        S = S + slam * P;
    }
    UnitRescale r;
    r.S = S;
    r.A0 = inverse(S) * A;
    return r;
}

// <[X,Y], Z_alpha> = <J_alpha X, Y>.
inline std::vector<Rat> lie_bracket(const EndoSpace& s, const std::vector<Rat>& x,
                                    const std::vector<Rat>& y) {
    if (static_cast<int>(x.size()) != s.n || static_cast<int>(y.size()) != s.n)
        throw DimensionMismatch("lie_bracket");
    std::vector<Rat> z(s.l, Rat(0));
    for (int a = 0; a < s.l; ++a) {
        auto jx = s.gen(a).apply(x);
        for (int i = 0; i < s.n; ++i) z[a] += jx[i] * y[i];
    }
    return z;
}

enum class ZMerge {
    Concatenate,          // l = sum l_i, factor generators padded by zero blocks
    MergeAll,             // equal l required, J_alpha = direct sum of factor J_alpha
    MergeAnticommutator,  // merge the designated A coordinates, concatenate the rest
};

inline EndoSpace product_space(const std::vector<EndoSpace>& spaces,
                               ZMerge merge = ZMerge::Concatenate) {
    if (spaces.empty()) throw DimensionMismatch("product_space: empty factor list");
    if (spaces.size() == 1) return spaces[0];
    int n = 0;
    for (const auto& s : spaces) n += s.n;
    std::vector<RatMat> gens;
    std::optional<int> anti;

    auto embed = [&](int factor, const RatMat& J) {
        RatMat G(n, n);
        int off = 0;
        for (int f = 0; f < factor; ++f) off += spaces[static_cast<size_t>(f)].n;
        for (int i = 0; i < J.rows(); ++i)
            for (int j = 0; j < J.cols(); ++j) G(off + i, off + j) = J(i, j);
        return G;
    };

    switch (merge) {
        case ZMerge::Concatenate: {
            for (size_t f = 0; f < spaces.size(); ++f)
                for (int a = 0; a < spaces[f].l; ++a)
                    gens.push_back(embed(static_cast<int>(f), spaces[f].gen(a)));
            break;
        }
        case ZMerge::MergeAll: {
            int l = spaces[0].l;
            for (const auto& s : spaces)
                if (s.l != l) throw DimensionMismatch("product_space: MergeAll needs equal l");
            for (int a = 0; a < l; ++a) {
                RatMat G(n, n);
                for (size_t f = 0; f < spaces.size(); ++f) G = G + embed(static_cast<int>(f), spaces[f].gen(a));
                gens.push_back(G);
            }
            if (spaces[0].anticommutator_index) {
                bool all = true;
                for (const auto& s : spaces)
                    all = all && s.anticommutator_index == spaces[0].anticommutator_index;
                if (all) anti = spaces[0].anticommutator_index;
            }
            break;
        }
        case ZMerge::MergeAnticommutator: {
            RatMat GA(n, n);
            for (size_t f = 0; f < spaces.size(); ++f) {
                if (!spaces[f].anticommutator_index)
                    throw DimensionMismatch("product_space: factor without designated anticommutator");
                GA = GA + embed(static_cast<int>(f), spaces[f].gen(*spaces[f].anticommutator_index));
            }
            gens.push_back(GA);
            anti = 0;
            for (size_t f = 0; f < spaces.size(); ++f)
                for (int a = 0; a < spaces[f].l; ++a)
                    if (a != *spaces[f].anticommutator_index)
                        gens.push_back(embed(static_cast<int>(f), spaces[f].gen(a)));
            break;
        }
    }
    return make_endo_space(n, std::move(gens), anti, "product");
}

}  // namespace isospec
