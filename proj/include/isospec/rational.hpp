#pragma once

// Exact scalar types: rationals (GMP) and complex rationals.
// All structural identities in the library are checked in this arithmetic;
// floating point appears only in eigenvalue computations.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace isospec {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q" or "p" (optionally signed). Used by all JSON interfaces.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rat: empty string");
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("parse_rat: zero denominator in '" + s + "'");
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline double to_double(const Rat& r) { return r.get_d(); }

// Complex number with exact rational real/imaginary parts.
struct CRat {
    Rat re{0};
    Rat im{0};

    CRat() = default;
    CRat(Rat r) : re(std::move(r)) {}
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    CRat(long r) : re(r) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    CRat conj() const { return {re, -im}; }
    Rat norm2() const { return re * re + im * im; }

    CRat& operator+=(const CRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    CRat& operator-=(const CRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    CRat& operator*=(const CRat& o) {
        Rat r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }

    friend CRat operator+(CRat a, const CRat& b) { return a += b; }
    friend CRat operator-(CRat a, const CRat& b) { return a -= b; }
    friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
    friend CRat operator*(CRat a, const CRat& b) { return a *= b; }
    friend CRat operator/(const CRat& a, const CRat& b) {
        Rat n = b.norm2();
        if (n == 0) throw std::domain_error("CRat: division by zero");
        CRat c = a * b.conj();
        return {c.re / n, c.im / n};
    }
    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline CRat crat_i() { return {Rat(0), Rat(1)}; }

}  // namespace isospec
