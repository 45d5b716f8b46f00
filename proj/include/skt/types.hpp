#pragma once

#include <Eigen/Core>
#include <vector>

#include "skt/rational.hpp"

namespace skt {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;
using DMatrix = Matrix<double>;
using DVector = Vector<double>;

// Strictly increasing 1-based index tuple keying AltForm coefficients.
using MultiIndex = std::vector<int>;

template <class S>
Matrix<S> matrix_cast(const QMatrix& m) {
    Matrix<S> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = scalar_from_rational<S>(m(i, j));
    return out;
}

template <class S>
Vector<S> vector_cast(const QVector& v) {
    Vector<S> out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = scalar_from_rational<S>(v(i));
    return out;
}

// Sum of |entries|; the residual measure used throughout (exact in exact mode).
template <class S>
S abs_sum(const Matrix<S>& m) {
    S acc(0);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) acc += abs(m(i, j));
    return acc;
}

template <class S>
S abs_sum(const Vector<S>& v) {
    S acc(0);
    for (Eigen::Index i = 0; i < v.size(); ++i) acc += abs(v(i));
    return acc;
}

template <class S>
bool is_skew(const Matrix<S>& a, const S& tol = scalar_mode<S>::default_tol()) {
    Matrix<S> r = a + a.transpose();
    return scalar_mode<S>::is_zero(abs_sum(r), tol);
}

// 2-form <-> pair index dictionary on Lambda^2 R^n, lexicographic (i<j), 0-based.
inline int pair_count(int n) { return n * (n - 1) / 2; }

inline int pair_index(int n, int i, int j) {
    // i < j, 0-based
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

inline std::pair<int, int> pair_unindex(int n, int p) {
    for (int i = 0; i < n; ++i) {
        int row = n - 1 - i;
        if (p < row) return {i, i + 1 + p};
        p -= row;
    }
    return {-1, -1};
}

}  // namespace skt
