#pragma once

// Ricci operator of the left-invariant metric at the identity, from the
// structure constants. For a two-step algebra with bracket encoded by the
// generators, the operator is block diagonal:
//   on the X-space:  (1/2) sum_alpha J_alpha^2
//   on the Z-space:  Ric(z_a, z_b) = -(1/4) Tr(J_a J_b)
// Convention Ric(X,Y) = sum <R(E_i,X)Y, E_i> with
// R(U,V) = nabla_U nabla_V - nabla_V nabla_U - nabla_{[U,V]}; the sign is
// pinned by the n=2 rotation example {-1/2, -1/2, 1/2}.

#include "endo_space.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace isospec {

struct RicciReport {
    std::vector<double> eigenvalues;                    // sorted ascending, n + l of them
    std::vector<std::pair<double, int>> multiplicities;  // clustered
};

inline RatMat ricci_matrix(const EndoSpace& s) {
    RatMat R(s.n + s.l, s.n + s.l);
    RatMat rx(s.n, s.n);
    for (int a = 0; a < s.l; ++a) rx = rx + s.gen(a) * s.gen(a);
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j) R(i, j) = rx(i, j) / 2;
    for (int a = 0; a < s.l; ++a)
        for (int b = 0; b < s.l; ++b) {
            RatMat p = s.gen(a) * s.gen(b);
            Rat tr(0);
            for (int i = 0; i < s.n; ++i) tr += p(i, i);
            R(s.n + a, s.n + b) = -tr / 4;
        }
    return R;
}

inline RicciReport ricci_spectrum(const EndoSpace& s, double cluster_tol = 1e-9) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(ricci_matrix(s)));
    RicciReport rep;
    rep.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end());
    double scale = 0;
    for (double v : rep.eigenvalues) scale = std::max(scale, std::abs(v));
    if (scale == 0) scale = 1;
    for (double v : rep.eigenvalues) {
        if (!rep.multiplicities.empty() &&
            std::abs(v - rep.multiplicities.back().first) <= cluster_tol * scale)
            ++rep.multiplicities.back().second;
        else
            rep.multiplicities.emplace_back(v, 1);
    }
    return rep;
}

}  // namespace isospec
