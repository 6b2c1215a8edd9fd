#pragma once

// Separable functions e^{i<W,Z>} |X|^{2m} h(X) with harmonic angular parts,
// and the full left-invariant Laplacian acting on them. On the W-Fourier
// slice the operator is
//   Delta_W = Delta_X - |W|^2 + i D_{J_W} - (1/4) |J_W X|^2
// where J_W = sum_alpha W_alpha J_alpha and D_M is the derivative along the
// field X -> M X. This is the sum-of-squares expansion of the orthonormal
// frame X_i = d_i + (1/2) <J_alpha X, e_i> d_alpha after the substitution
// d_alpha -> i W_alpha.

#include "endo_space.hpp"
#include "harmonic.hpp"

#include <map>
#include <vector>

namespace isospec {

struct SeparableFunction {
    std::vector<Rat> W;       // Z-Fourier mode
    int radial_power = 0;     // m in |X|^{2m}
    GradedHarmonic angular;   // harmonic components

    CPoly x_part(int n) const {
        CPoly out(n);
        CPoly r2 = radius_squared(n);
        for (const auto& [q, h] : angular) out += h;
        return r2.pow(radial_power) * out;
    }
};

// |W|^2 as an exact rational.
inline Rat w_norm2(const std::vector<Rat>& W) {
    Rat s(0);
    for (const auto& w : W) s += w * w;
    return s;
}

// The quadratic form <M X, M X> as a polynomial.
inline CPoly field_norm2_poly(const RatMat& M) {
    int n = M.rows();
    RatMat Q = M.transpose() * M;
    CPoly p(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (Q(i, j) == 0) continue;
            p += CRat(Q(i, j)) * (CPoly::variable(n, i) * CPoly::variable(n, j));
        }
    return p;
}

// Raw polynomial action of the W-slice Laplacian.
inline CPoly slice_laplacian_poly(const EndoSpace& s, const std::vector<Rat>& W, const CPoly& p) {
    if (static_cast<int>(W.size()) != s.l) throw DimensionMismatch("slice_laplacian_poly: W length");
    RatMat JW = j_of(s, W);
    CPoly out = laplacian_x(p);
    Rat w2 = w_norm2(W);
    if (w2 != 0) out -= CRat(w2) * p;
    if (!JW.is_zero()) {
        out += crat_i() * dir_derivative(JW, p);
        out -= CRat(Rat(1, 4)) * (field_norm2_poly(JW) * p);
    }
    return out;
}

// Full Laplacian of a separable function, regrouped into separable components
// with the same W (unique: the graded harmonic decomposition of each
// homogeneous part).
inline std::vector<SeparableFunction> full_laplacian(const EndoSpace& s, const SeparableFunction& f) {
    CPoly img = slice_laplacian_poly(s, f.W, f.x_part(s.n));
    std::map<int, GradedHarmonic> by_power;
    for (const auto& [d, comp] : img.homogeneous_components()) {
        for (const auto& [q, h] : harmonic_decompose(comp)) by_power[(d - q) / 2].emplace_back(q, h);
    }
    std::vector<SeparableFunction> out;
    for (auto& [m, gh] : by_power) {
        SeparableFunction g;
        g.W = f.W;
        g.radial_power = m;
        g.angular = std::move(gh);
        out.push_back(std::move(g));
    }
    return out;
}

inline CPoly flatten(const std::vector<SeparableFunction>& fs, int n) {
    CPoly out(n);
    for (const auto& f : fs) out += f.x_part(n);
    return out;
}

}  // namespace isospec
