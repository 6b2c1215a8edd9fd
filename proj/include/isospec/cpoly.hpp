#pragma once

// Sparse multivariate polynomials in the X-variables with exact complex
// rational coefficients. Monomials are exponent vectors; no zero coefficient
// is ever stored. Supports the linear variable substitutions used by the
// intertwining machinery.

#include "errors.hpp"
#include "linalg.hpp"
#include "rational.hpp"

#include <array>
#include <cassert>
#include <map>
#include <string>
#include <vector>

namespace isospec {

constexpr int kMaxPolyVars = 16;

struct Mono {
    std::array<uint8_t, kMaxPolyVars> e{};

    int deg() const {
        int d = 0;
        for (auto v : e) d += v;
        return d;
    }
    friend bool operator<(const Mono& a, const Mono& b) { return a.e < b.e; }
    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
};

class CPoly {
  public:
    int n_vars = 0;
    std::map<Mono, CRat> terms;

    CPoly() = default;
    explicit CPoly(int n) : n_vars(n) { assert(n >= 0 && n <= kMaxPolyVars); }

    static CPoly constant(int n, const CRat& c) {
        CPoly p(n);
        if (!c.is_zero()) p.terms.emplace(Mono{}, c);
        return p;
    }
    static CPoly variable(int n, int i, const CRat& coeff = CRat(Rat(1))) {
        CPoly p(n);
        Mono m;
        m.e[static_cast<size_t>(i)] = 1;
        if (!coeff.is_zero()) p.terms.emplace(m, coeff);
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Mono& m, const CRat& c) {
        if (c.is_zero()) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    int degree() const {  // total degree; -1 for the zero polynomial
        int d = -1;
        for (const auto& [m, c] : terms) d = std::max(d, m.deg());
        return d;
    }

    bool is_homogeneous(int* deg_out = nullptr) const {
        int d = -1;
        for (const auto& [m, c] : terms) {
            int md = m.deg();
            if (d < 0)
                d = md;
            else if (md != d)
                return false;
        }
        if (deg_out) *deg_out = d;
        return true;
    }

    std::map<int, CPoly> homogeneous_components() const {
        std::map<int, CPoly> out;
        for (const auto& [m, c] : terms) {
            auto [it, fresh] = out.try_emplace(m.deg(), CPoly(n_vars));
            it->second.terms.emplace(m, c);
        }
        return out;
    }

    CPoly conj() const {
        CPoly p(n_vars);
        for (const auto& [m, c] : terms) p.terms.emplace(m, c.conj());
        return p;
    }

    CPoly& operator+=(const CPoly& o) {
        for (const auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }
    CPoly& operator-=(const CPoly& o) {
        for (const auto& [m, c] : o.terms) add_term(m, -c);
        return *this;
    }
    friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
    friend CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }
    friend CPoly operator-(const CPoly& a) {
        CPoly p(a.n_vars);
        for (const auto& [m, c] : a.terms) p.terms.emplace(m, -c);
        return p;
    }
    friend CPoly operator*(const CRat& s, const CPoly& a) {
        CPoly p(a.n_vars);
        if (s.is_zero()) return p;
        for (const auto& [m, c] : a.terms) p.terms.emplace(m, s * c);
        return p;
    }
    friend CPoly operator*(const CPoly& a, const CPoly& b) {
        CPoly p(a.n_vars);
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms) {
                Mono m;
                for (int i = 0; i < kMaxPolyVars; ++i)
                    m.e[static_cast<size_t>(i)] =
                        static_cast<uint8_t>(ma.e[static_cast<size_t>(i)] + mb.e[static_cast<size_t>(i)]);
                p.add_term(m, ca * cb);
            }
        return p;
    }
    friend bool operator==(const CPoly& a, const CPoly& b) { return a.terms == b.terms; }
    friend bool operator!=(const CPoly& a, const CPoly& b) { return !(a == b); }

    CPoly derivative(int i) const {
        CPoly p(n_vars);
        for (const auto& [m, c] : terms) {
            uint8_t e = m.e[static_cast<size_t>(i)];
            if (e == 0) continue;
            Mono d = m;
            d.e[static_cast<size_t>(i)] = static_cast<uint8_t>(e - 1);
            p.add_term(d, CRat(Rat(e)) * c);
        }
        return p;
    }

    CRat eval(const std::vector<CRat>& x) const {
        assert(static_cast<int>(x.size()) == n_vars);
        CRat sum;
        for (const auto& [m, c] : terms) {
            CRat v = c;
            for (int i = 0; i < n_vars; ++i)
                for (int k = 0; k < m.e[static_cast<size_t>(i)]; ++k) v *= x[static_cast<size_t>(i)];
            sum += v;
        }
        return sum;
    }

    CPoly pow(int k) const {
        CPoly r = CPoly::constant(n_vars, CRat(Rat(1)));
        CPoly base = *this;
        while (k > 0) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }
};

// x_1^2 + ... + x_n^2.
inline CPoly radius_squared(int n) {
    CPoly p(n);
    for (int i = 0; i < n; ++i) {
        Mono m;
        m.e[static_cast<size_t>(i)] = 2;
        p.terms.emplace(m, CRat(Rat(1)));
    }
    return p;
}

namespace detail {

inline CPoly compose_linear_rec(const CPoly& p, const std::vector<CPoly>& forms, int var) {
    int n = p.n_vars;
    if (p.is_zero()) return CPoly(forms.empty() ? n : forms[0].n_vars);
    if (var == n) {
        // Only the constant monomial can remain.
        CPoly out(forms.empty() ? n : forms[0].n_vars);
        for (const auto& [m, c] : p.terms) {
            assert(m.deg() == 0);
            out.add_term(Mono{}, c);
        }
        return out;
    }
    // Group by the exponent of this variable, then Horner.
    std::map<int, CPoly> parts;
    for (const auto& [m, c] : p.terms) {
        int k = m.e[static_cast<size_t>(var)];
        Mono stripped = m;
        stripped.e[static_cast<size_t>(var)] = 0;
        auto [it, fresh] = parts.try_emplace(k, CPoly(n));
        it->second.add_term(stripped, c);
    }
    int kmax = parts.rbegin()->first;
    CPoly res = compose_linear_rec(parts.at(kmax), forms, var + 1);
    for (int k = kmax - 1; k >= 0; --k) {
        res = res * forms[static_cast<size_t>(var)];
        auto it = parts.find(k);
        if (it != parts.end()) res += compose_linear_rec(it->second, forms, var + 1);
    }
    return res;
}

}  // namespace detail

// P(x) -> P(l_1(y), ..., l_n(y)) for arbitrary degree-<=1 forms l_i.
inline CPoly compose_linear(const CPoly& p, const std::vector<CPoly>& forms) {
    if (static_cast<int>(forms.size()) != p.n_vars)
        throw DimensionMismatch("compose_linear: one form per variable required");
    return detail::compose_linear_rec(p, forms, 0);
}

// Pullback by a rational matrix: P(x) -> P(M x).
inline CPoly pullback(const CPoly& p, const Mat<Rat>& M) {
    if (M.rows() != p.n_vars || M.cols() != p.n_vars) throw DimensionMismatch("pullback: matrix size");
    std::vector<CPoly> forms;
    forms.reserve(static_cast<size_t>(p.n_vars));
    for (int i = 0; i < p.n_vars; ++i) {
        CPoly f(p.n_vars);
        for (int j = 0; j < p.n_vars; ++j)
            if (M(i, j) != 0) f += CPoly::variable(p.n_vars, j, CRat(M(i, j)));
        forms.push_back(std::move(f));
    }
    return compose_linear(p, forms);
}

}  // namespace isospec
