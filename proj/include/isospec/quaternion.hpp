#pragma once

// Exact rational quaternions and their left/right matrix representations on
// R^4 (basis 1, i, j, k). Conventions: i^2=j^2=k^2=-1, ij=k, jk=i, ki=j.

#include "errors.hpp"
#include "linalg.hpp"
#include "rational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace isospec {

struct Quat {
    std::array<Rat, 4> c{Rat(0), Rat(0), Rat(0), Rat(0)};  // (1, i, j, k)

    Quat() = default;
    Quat(Rat a, Rat b, Rat cc, Rat d) : c{std::move(a), std::move(b), std::move(cc), std::move(d)} {}

    static Quat unit_i() { return {Rat(0), Rat(1), Rat(0), Rat(0)}; }
    static Quat unit_j() { return {Rat(0), Rat(0), Rat(1), Rat(0)}; }
    static Quat unit_k() { return {Rat(0), Rat(0), Rat(0), Rat(1)}; }

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
    bool is_imaginary() const { return c[0] == 0; }

    Quat conj() const { return {c[0], -c[1], -c[2], -c[3]}; }
    Rat norm2() const { return c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]; }

    friend Quat operator+(const Quat& x, const Quat& y) {
        return {x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2], x.c[3] + y.c[3]};
    }
    friend Quat operator-(const Quat& x, const Quat& y) {
        return {x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2], x.c[3] - y.c[3]};
    }
    friend Quat operator*(const Rat& s, const Quat& x) {
        return {s * x.c[0], s * x.c[1], s * x.c[2], s * x.c[3]};
    }
    friend Quat operator*(const Quat& x, const Quat& y) {
        const auto& a = x.c;
        const auto& b = y.c;
        return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
    }
    friend bool operator==(const Quat& x, const Quat& y) { return x.c == y.c; }

    // Euclidean pairing of the coefficient vectors.
    static Rat dot(const Quat& x, const Quat& y) {
        return x.c[0] * y.c[0] + x.c[1] * y.c[1] + x.c[2] * y.c[2] + x.c[3] * y.c[3];
    }
};

// Matrix of v -> q*v on coefficient vectors.
inline RatMat left_mult_matrix(const Quat& q) {
    const auto& [a, b, c, d] = q.c;
    return RatMat(4, 4, {a, -b, -c, -d,
                         b,  a, -d,  c,
                         c,  d,  a, -b,
                         d, -c,  b,  a});
}

// Matrix of v -> v*q.
inline RatMat right_mult_matrix(const Quat& q) {
    const auto& [a, b, c, d] = q.c;
    return RatMat(4, 4, {a, -b, -c, -d,
                         b,  a,  d, -c,
                         c, -d,  a,  b,
                         d,  c, -b,  a});
}

// Lagrange four-square decomposition of a nonnegative integer (brute force;
// inputs here are small). Returns (a,b,c,d) with a^2+b^2+c^2+d^2 = n.
inline std::optional<std::array<long, 4>> four_square(long n) {
    if (n < 0) return std::nullopt;
    for (long a = 0; a * a <= n; ++a)
        for (long b = a; a * a + b * b <= n; ++b)
            for (long c = b; a * a + b * b + c * c <= n; ++c) {
                long rem = n - a * a - b * b - c * c;
                long d = static_cast<long>(std::sqrt(static_cast<double>(rem)));
                for (long dd = std::max(d - 1, c); dd <= d + 1; ++dd)
                    if (dd >= c && dd * dd == rem) return std::array<long, 4>{a, b, c, dd};
            }
    return std::nullopt;
}

// Quaternion q with |q|^2 = t for a nonnegative rational t:
// t = p/s = (p*s)/s^2, so take the four-square of p*s over s.
inline std::optional<Quat> quat_with_norm2(const Rat& t) {
    if (t < 0) return std::nullopt;
    if (!t.get_num().fits_slong_p() || !t.get_den().fits_slong_p()) return std::nullopt;
    long p = t.get_num().get_si(), s = t.get_den().get_si();
    auto sq = four_square(p * s);
    if (!sq) return std::nullopt;
    Rat den(s);
    return Quat{Rat((*sq)[0]) / den, Rat((*sq)[1]) / den, Rat((*sq)[2]) / den, Rat((*sq)[3]) / den};
}

}  // namespace isospec
