#pragma once

// Exact harmonic analysis on the X-space: Euclidean and spherical Laplacians,
// rotational directional derivatives, the graded harmonic decomposition
// P = sum |X|^{2j} h_{r-2j}, sphere moments, and kernel polynomials.

#include "cpoly.hpp"
#include "endo_space.hpp"
#include "errors.hpp"
#include "linalg.hpp"

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace isospec {

// Sequence of (degree, harmonic polynomial) pairs; the exact representation
// of a function on the sphere by its spherical-harmonic components.
using GradedHarmonic = std::vector<std::pair<int, CPoly>>;

inline CPoly laplacian_x(const CPoly& p) {
    CPoly out(p.n_vars);
    for (int i = 0; i < p.n_vars; ++i) out += p.derivative(i).derivative(i);
    return out;
}

// Average over the unit sphere S^{n-1} of the monomial prod x_i^{e_i}:
// zero if any exponent is odd, else prod (e_i-1)!! / (n (n+2) ... (n+2M-2)).
inline Rat sphere_moment(const std::vector<int>& exponents) {
    int n = static_cast<int>(exponents.size());
    long total = 0;
    for (int e : exponents) {
        if (e < 0) throw DimensionMismatch("sphere_moment: negative exponent");
        if (e % 2 == 1) return Rat(0);
        total += e;
    }
    Rat num(1), den(1);
    for (int e : exponents)
        for (int k = e - 1; k >= 1; k -= 2) num *= k;
    for (long m = 1; m <= total / 2; ++m) den *= Rat(n + 2 * (m - 1));
    return num / den;
}

// Average of a polynomial over the unit sphere.
inline CRat sphere_average(const CPoly& p) {
    CRat sum;
    for (const auto& [m, c] : p.terms) {
        std::vector<int> e(static_cast<size_t>(p.n_vars));
        for (int i = 0; i < p.n_vars; ++i) e[static_cast<size_t>(i)] = m.e[static_cast<size_t>(i)];
        Rat mu = sphere_moment(e);
        if (mu != 0) sum += CRat(mu) * c;
    }
    return sum;
}

// L^2(S) inner product (average normalization): <f, g> = avg(f * conj g).
inline CRat sphere_inner(const CPoly& f, const CPoly& g) { return sphere_average(f * g.conj()); }

// Theta_Q = <Q + i A0(Q), X> for a unit anticommutator endomorphism A0.
inline CPoly theta(const RatMat& A0, const std::vector<Rat>& Q) {
    int n = A0.rows();
    if (!((A0 * A0) == (Rat(-1) * RatMat::identity(n)))) throw NotUnit("theta: A0^2 != -id");
    if (static_cast<int>(Q.size()) != n) throw DimensionMismatch("theta: Q length");
    auto AQ = A0.apply(Q);
    CPoly p(n);
    for (int j = 0; j < n; ++j) {
        CRat c{Q[static_cast<size_t>(j)], AQ[static_cast<size_t>(j)]};
        if (!c.is_zero()) p += CPoly::variable(n, j, c);
    }
    return p;
}

inline CPoly theta_bar(const RatMat& A0, const std::vector<Rat>& Q) { return theta(A0, Q).conj(); }

// Derivative along the rotational field X -> M X: (D_M P)(X) = <grad P, M X>.
inline CPoly dir_derivative(const RatMat& M, const CPoly& p) {
    if (M.rows() != p.n_vars) throw DimensionMismatch("dir_derivative: matrix size");
    CPoly out(p.n_vars);
    for (int i = 0; i < p.n_vars; ++i) {
        CPoly di = p.derivative(i);
        if (di.is_zero()) continue;
        for (int j = 0; j < p.n_vars; ++j) {
            if (M(i, j) == 0) continue;
            out += CRat(M(i, j)) * (CPoly::variable(p.n_vars, j) * di);
        }
    }
    return out;
}

inline CPoly dir_derivative(const EndoSpace& s, int alpha, const CPoly& p) {
    return dir_derivative(s.gen(alpha), p);
}
inline CPoly dir_derivative(const EndoSpace& s, const std::vector<Rat>& z, const CPoly& p) {
    return dir_derivative(j_of(s, z), p);
}

// Homogeneous representative of the sphere Laplacian:
// Delta_S(P|_S) ~ |X|^2 Delta_X P - r(r+n-2) P, split into the two parts.
struct SphereLaplacian {
    CPoly lower;  // |X|^2 Delta_X P
    CPoly eigen;  // -r(r+n-2) P
    CPoly total() const { return lower + eigen; }
};

inline SphereLaplacian sphere_laplacian(const CPoly& p) {
    int r = 0;
    if (!p.is_homogeneous(&r)) throw NotHomogeneous("sphere_laplacian");
    SphereLaplacian out;
    if (p.is_zero()) {
        out.lower = CPoly(p.n_vars);
        out.eigen = CPoly(p.n_vars);
        return out;
    }
    out.lower = radius_squared(p.n_vars) * laplacian_x(p);
    out.eigen = CRat(Rat(-r * (r + p.n_vars - 2))) * p;
    return out;
}

// Exact graded decomposition of a homogeneous P: P = sum_j |X|^{2j} h_{r-2j}
// with every h harmonic. Uses Delta(|X|^{2j} h_q) = 2j(2j+2q+n-2)|X|^{2j-2} h_q.
inline GradedHarmonic harmonic_decompose(const CPoly& p) {
    int r = 0;
    if (!p.is_homogeneous(&r)) throw NotHomogeneous("harmonic_decompose");
    if (p.is_zero()) return {};
    int n = p.n_vars;
    CPoly lap = laplacian_x(p);
    if (lap.is_zero()) return {{r, p}};
    GradedHarmonic sub = harmonic_decompose(lap);  // degree r-2
    GradedHarmonic out;
    CPoly top = p;
    CPoly r2 = radius_squared(n);
    for (const auto& [q, g] : sub) {
        int j = (r - q) / 2;  // weight of |X|^{2j} in p
        Rat mu = Rat(2 * j) * Rat(2 * j + 2 * q + n - 2);
        CPoly h = CRat(Rat(1) / mu) * g;
        out.emplace_back(q, h);
        top -= r2.pow(j) * h;
    }
    if (!top.is_zero()) out.insert(out.begin(), {r, top});
    return out;
}

// Harmonic component of a homogeneous polynomial in P^{(r)} = H^{(r)} + |X|^2 P^{(r-2)}.
inline CPoly harmonic_project(const CPoly& p) {
    int r = 0;
    if (!p.is_homogeneous(&r)) throw NotHomogeneous("harmonic_project");
    if (p.is_zero()) return p;
    auto dec = harmonic_decompose(p);
    for (const auto& [q, h] : dec)
        if (q == r) return h;
    return CPoly(p.n_vars);
}

// Unique {h_q} with P|_S = sum_q h_q|_S, assembled across the radial tower.
inline GradedHarmonic spherical_expand(const CPoly& p) {
    std::map<int, CPoly> acc;
    for (const auto& [d, comp] : p.homogeneous_components()) {
        for (const auto& [q, h] : harmonic_decompose(comp)) {
            auto [it, fresh] = acc.try_emplace(q, CPoly(p.n_vars));
            it->second += h;
        }
    }
    GradedHarmonic out;
    for (auto& [q, h] : acc)
        if (!h.is_zero()) out.emplace_back(q, std::move(h));
    return out;
}

// Reassemble a polynomial from a graded harmonic expansion with an extra
// radial power: sum |X|^{2m} h_q.
inline CPoly assemble_radial(const GradedHarmonic& gh, int n, int extra_radial_power = 0) {
    CPoly out(n);
    CPoly r2 = radius_squared(n);
    for (const auto& [q, h] : gh) out += r2.pow(extra_radial_power) * h;
    return out;
}

// Degree-q harmonic polynomial proportional to the projection of <Q_u, X>^q,
// normalized to take the value 1 at X = Q_u. Depends only on Q_u and q.
inline CPoly radial_kernel(int q, const std::vector<Rat>& q_u, int n) {
    if (static_cast<int>(q_u.size()) != n) throw DimensionMismatch("radial_kernel: Q length");
    Rat norm2(0);
    for (const auto& v : q_u) norm2 += v * v;
    if (norm2 != 1) throw DimensionMismatch("radial_kernel: Q_u must be a unit vector");
    if (q == 0) return CPoly::constant(n, CRat(Rat(1)));
    CPoly lin(n);
    for (int j = 0; j < n; ++j)
        if (q_u[static_cast<size_t>(j)] != 0) lin += CPoly::variable(n, j, CRat(q_u[static_cast<size_t>(j)]));
    CPoly proj = harmonic_project(lin.pow(q));
    std::vector<CRat> pt;
    pt.reserve(q_u.size());
    for (const auto& v : q_u) pt.emplace_back(v);
    CRat val = proj.eval(pt);
    if (val.is_zero()) throw ZeroProjection("radial_kernel");
    return (CRat(Rat(1)) / val) * proj;
}

// Closed recursion for the harmonic component of Theta_Q^p ThetaBar_Q^q:
//   h = sum_s A_s |X|^{2s} Theta^{p-s} ThetaBar^{q-s},  A_0 = 1,
//   A_{s+1} = -2 |Q|^2 (p-s)(q-s) A_s / ((s+1)(n + 2r - 2s - 4)),  r = p+q.
// Fast path and oracle partner of the general solver. The recursion constant
// follows from Delta(|X|^{2s} T^a Tb^b) = [2s(2s+2(a+b)+n-2)] |X|^{2s-2} T^a Tb^b
// + 4ab|Q|^2 |X|^{2s} T^{a-1} Tb^{b-1}.
inline CPoly harmonic_project_theta_power(const RatMat& A0, const std::vector<Rat>& Q, int p, int q) {
    int n = A0.rows();
    int r = p + q;
    Rat q2(0);
    for (const auto& v : Q) q2 += v * v;
    CPoly th = theta(A0, Q), tb = th.conj();
    CPoly out(n);
    CPoly r2 = radius_squared(n);
    Rat As(1);
    for (int s = 0; s <= std::min(p, q); ++s) {
        if (s > 0) {
            Rat num = Rat(-2) * q2 * Rat(p - s + 1) * Rat(q - s + 1);
            Rat den = Rat(s) * Rat(n + 2 * r - 2 * (s - 1) - 4);
            As = As * num / den;
        }
        out += CRat(As) * (r2.pow(s) * th.pow(p - s) * tb.pow(q - s));
    }
    return out;
}

namespace detail {

inline void enumerate_monomials(int n, int deg, int var, Mono& cur, std::vector<Mono>& out) {
    if (var == n - 1) {
        cur.e[static_cast<size_t>(var)] = static_cast<uint8_t>(deg);
        out.push_back(cur);
        cur.e[static_cast<size_t>(var)] = 0;
        return;
    }
    for (int e = deg; e >= 0; --e) {
        cur.e[static_cast<size_t>(var)] = static_cast<uint8_t>(e);
        enumerate_monomials(n, deg - e, var + 1, cur, out);
    }
    cur.e[static_cast<size_t>(var)] = 0;
}

}  // namespace detail

// All degree-r monomials in n variables, deterministic order.
inline std::vector<Mono> monomials_of_degree(int n, int r) {
    std::vector<Mono> out;
    Mono cur;
    detail::enumerate_monomials(n, r, 0, cur, out);
    return out;
}

inline int dim_homogeneous(int n, int r) {
    // C(n+r-1, r)
    long v = 1;
    for (int i = 1; i <= r; ++i) v = v * (n + r - i) / i;
    return static_cast<int>(v);
}

inline int dim_harmonic(int n, int r) {
    if (r == 0) return 1;
    if (r == 1) return n;
    return dim_homogeneous(n, r) - dim_homogeneous(n, r - 2);
}

// Deterministic basis of the degree-r harmonics: projections of monomials,
// kept when they enlarge the span. Cached per (n, r).
inline const std::vector<CPoly>& harmonic_basis(int n, int r) {
    static std::map<std::pair<int, int>, std::vector<CPoly>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, r);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<Mono> monos = monomials_of_degree(n, r);
    std::map<Mono, int> index;
    for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = static_cast<int>(i);
    int dim = dim_harmonic(n, r);
    std::vector<CPoly> basis;
    // Incremental row reduction over the monomial coordinates.
    CMat rowsmat(dim, static_cast<int>(monos.size()));
    int got = 0;
    for (const auto& seed : monos) {
        if (got == dim) break;
        CPoly cand(n);
        cand.terms.emplace(seed, CRat(Rat(1)));
        CPoly h = harmonic_project(cand);
        if (h.is_zero()) continue;
        // Try to reduce against accepted rows.
        std::vector<CRat> vec(monos.size());
        for (const auto& [m, c] : h.terms) vec[static_cast<size_t>(index.at(m))] = c;
        for (int rrow = 0; rrow < got; ++rrow) {
            int lead = -1;
            for (int c = 0; c < rowsmat.cols(); ++c)
                if (!(rowsmat(rrow, c) == CRat())) {
                    lead = c;
                    break;
                }
            if (lead >= 0 && !vec[static_cast<size_t>(lead)].is_zero()) {
                CRat f = vec[static_cast<size_t>(lead)] / rowsmat(rrow, lead);
                for (int c = 0; c < rowsmat.cols(); ++c) vec[static_cast<size_t>(c)] -= f * rowsmat(rrow, c);
            }
        }
        bool nonzero = false;
        for (const auto& v : vec) nonzero = nonzero || !v.is_zero();
        if (!nonzero) continue;
        for (int c = 0; c < rowsmat.cols(); ++c) rowsmat(got, c) = vec[static_cast<size_t>(c)];
        basis.push_back(std::move(h));
        ++got;
    }
    if (got != dim) throw DimensionMismatch("harmonic_basis: span defect");
    auto [ins, fresh] = cache.emplace(key, std::move(basis));
    return ins->second;
}

// Coefficient vector of a degree-r homogeneous polynomial over the canonical
// monomial list.
inline std::vector<CRat> poly_to_vec(const CPoly& p, const std::vector<Mono>& monos) {
    std::map<Mono, int> index;
    for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = static_cast<int>(i);
    std::vector<CRat> v(monos.size());
    for (const auto& [m, c] : p.terms) v[static_cast<size_t>(index.at(m))] = c;
    return v;
}

}  // namespace isospec
