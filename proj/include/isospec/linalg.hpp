#pragma once

// Minimal exact dense linear algebra over Rat / CRat.
// Floating-point eigen work is delegated to Eigen; everything here is exact.

#include "rational.hpp"

#include <Eigen/Dense>

#include <cassert>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace isospec {

template <class T>
struct Mat {
    int rows_ = 0, cols_ = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows_(r), cols_(c), a(static_cast<size_t>(r) * c, T(0)) {}
    Mat(int r, int c, std::initializer_list<T> xs) : rows_(r), cols_(c), a(xs) {
        assert(static_cast<int>(a.size()) == r * c);
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols_ + j]; }

    bool is_square() const { return rows_ == cols_; }

    Mat transpose() const {
        Mat m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    friend Mat operator+(const Mat& x, const Mat& y) {
        assert(x.rows_ == y.rows_ && x.cols_ == y.cols_);
        Mat m = x;
        for (size_t k = 0; k < m.a.size(); ++k) m.a[k] += y.a[k];
        return m;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        assert(x.rows_ == y.rows_ && x.cols_ == y.cols_);
        Mat m = x;
        for (size_t k = 0; k < m.a.size(); ++k) m.a[k] -= y.a[k];
        return m;
    }
    friend Mat operator-(const Mat& x) {
        Mat m = x;
        for (auto& v : m.a) v = -v;
        return m;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        assert(x.cols_ == y.rows_);
        Mat m(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const T& xv = x(i, k);
                if (xv == T(0)) continue;
                for (int j = 0; j < y.cols_; ++j) m(i, j) += xv * y(k, j);
            }
        return m;
    }
    friend Mat operator*(const T& s, const Mat& x) {
        Mat m = x;
        for (auto& v : m.a) v = s * v;
        return m;
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a == y.a;
    }

    bool is_zero() const {
        for (const auto& v : a)
            if (!(v == T(0))) return false;
        return true;
    }

    std::vector<T> col(int j) const {
        std::vector<T> v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        assert(static_cast<int>(x.size()) == cols_);
        std::vector<T> y(rows_, T(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }
};

using RatMat = Mat<Rat>;
using CMat = Mat<CRat>;

inline RatMat block_diag(const RatMat& x, const RatMat& y) {
    RatMat m(x.rows() + y.rows(), x.cols() + y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) m(i, j) = x(i, j);
    for (int i = 0; i < y.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j) m(x.rows() + i, x.cols() + j) = y(i, j);
    return m;
}

// In-place reduced row echelon form; returns pivot columns.
template <class T>
std::vector<int> rref(Mat<T>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!(m(i, c) == T(0))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        T inv = T(1) / m(r, c);
        for (int j = 0; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == T(0)) continue;
            T f = m(i, c);
            for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
int rank(Mat<T> m) {
    return static_cast<int>(rref(m).size());
}

// Columns form a basis of the kernel.
template <class T>
Mat<T> nullspace(Mat<T> m) {
    std::vector<int> piv = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (int c : piv) is_piv[c] = true;
    int nfree = m.cols() - static_cast<int>(piv.size());
    Mat<T> ns(m.cols(), nfree);
    int k = 0;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_piv[c]) continue;
        ns(c, k) = T(1);
        for (size_t i = 0; i < piv.size(); ++i) ns(piv[i], k) = -m(static_cast<int>(i), c);
        ++k;
    }
    return ns;
}

template <class T>
Mat<T> inverse(const Mat<T>& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: not square");
    int n = m.rows();
    Mat<T> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = T(1);
    }
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) != n) throw std::domain_error("inverse: singular matrix");
    Mat<T> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// Solves A x = b exactly; throws if inconsistent, picks the particular
// solution with free variables zero when underdetermined.
template <class T>
std::vector<T> solve(const Mat<T>& A, const std::vector<T>& b) {
    assert(static_cast<int>(b.size()) == A.rows());
    Mat<T> aug(A.rows(), A.cols() + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
        aug(i, A.cols()) = b[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == A.cols()) throw std::domain_error("solve: inconsistent system");
    std::vector<T> x(A.cols(), T(0));
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(static_cast<int>(i), A.cols());
    return x;
}

// Characteristic polynomial coefficients by Faddeev-LeVerrier:
// p(t) = t^n + c[1] t^{n-1} + ... + c[n].
template <class T>
std::vector<T> char_poly(const Mat<T>& m) {
    if (!m.is_square()) throw std::invalid_argument("char_poly: not square");
    int n = m.rows();
    std::vector<T> c(static_cast<size_t>(n) + 1, T(0));
    c[0] = T(1);
    Mat<T> M = Mat<T>::identity(n);
    for (int k = 1; k <= n; ++k) {
        M = m * M;
        T tr(0);
        for (int i = 0; i < n; ++i) tr += M(i, i);
        c[k] = T(-1) / T(k) * tr;
        for (int i = 0; i < n; ++i) M(i, i) += c[k];
    }
    return c;
}

inline Eigen::MatrixXd to_eigen(const RatMat& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e(i, j) = to_double(m(i, j));
    return e;
}

inline Eigen::MatrixXcd to_eigen(const CMat& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).to_complex();
    return e;
}

inline bool is_skew(const RatMat& m) {
    if (!m.is_square()) return false;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j <= i; ++j)
            if (m(i, j) != -m(j, i)) return false;
    return true;
}

inline bool is_symmetric(const RatMat& m) {
    if (!m.is_square()) return false;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < i; ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

inline bool anticommutes(const RatMat& x, const RatMat& y) { return (x * y + y * x).is_zero(); }
inline bool commutes(const RatMat& x, const RatMat& y) { return x * y == y * x; }

}  // namespace isospec
