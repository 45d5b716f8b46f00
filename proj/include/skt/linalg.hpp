#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "skt/types.hpp"

namespace skt {

// Row-reduction based exact linear algebra. All routines work over any field
// scalar; for double, a pivot tolerance makes rank decisions.

template <class S>
struct Rref {
    Matrix<S> mat;
    std::vector<int> pivot_cols;
    int rank = 0;
};

template <class S>
S pivot_size(const S& x) {
    return abs(x);
}

template <class S>
Rref<S> rref(Matrix<S> m, const S& tol = scalar_mode<S>::default_tol()) {
    const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
    Rref<S> out;
    out.pivot_cols.clear();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int best = -1;
        S best_size(0);
        for (int i = r; i < rows; ++i) {
            S sz = pivot_size(m(i, c));
            if (!scalar_mode<S>::is_zero(m(i, c), tol) && (best < 0 || best_size < sz)) {
                best = i;
                best_size = sz;
            }
        }
        if (best < 0) continue;
        m.row(r).swap(m.row(best));
        S inv = S(1) / m(r, c);
        m.row(r) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            if (!scalar_mode<S>::is_zero(m(i, c), tol)) {
                S f = m(i, c);
                m.row(i) -= f * m.row(r);
            }
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    if constexpr (scalar_mode<S>::exact) {
        // clean exact zeros that are already exact; nothing to do
    } else {
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (scalar_mode<S>::is_zero(m(i, j), tol)) m(i, j) = S(0);
    }
    out.mat = std::move(m);
    out.rank = r;
    return out;
}

template <class S>
int rank(const Matrix<S>& m, const S& tol = scalar_mode<S>::default_tol()) {
    return rref(m, tol).rank;
}

// Columns span ker(m).
template <class S>
Matrix<S> kernel(const Matrix<S>& m, const S& tol = scalar_mode<S>::default_tol()) {
    const int cols = static_cast<int>(m.cols());
    Rref<S> r = rref(m, tol);
    std::vector<bool> is_pivot(cols, false);
    for (int c : r.pivot_cols) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix<S> k = Matrix<S>::Zero(cols, static_cast<int>(free_cols.size()));
    for (size_t f = 0; f < free_cols.size(); ++f) {
        int fc = free_cols[f];
        k(fc, static_cast<int>(f)) = S(1);
        for (size_t p = 0; p < r.pivot_cols.size(); ++p) k(r.pivot_cols[p], static_cast<int>(f)) = -r.mat(static_cast<int>(p), fc);
    }
    return k;
}

// Solve A x = b; nullopt when inconsistent. For underdetermined systems one
// solution (free variables zero) is returned.
template <class S>
std::optional<Vector<S>> solve(const Matrix<S>& a, const Vector<S>& b,
                               const S& tol = scalar_mode<S>::default_tol()) {
    const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
    Matrix<S> aug(rows, cols + 1);
    aug.leftCols(cols) = a;
    aug.col(cols) = b;
    Rref<S> r = rref(aug, tol);
    for (int c : r.pivot_cols)
        if (c == cols) return std::nullopt;
    Vector<S> x = Vector<S>::Zero(cols);
    for (size_t p = 0; p < r.pivot_cols.size(); ++p) x(r.pivot_cols[p]) = r.mat(static_cast<int>(p), cols);
    return x;
}

// Solve A X = B columnwise.
template <class S>
std::optional<Matrix<S>> solve_matrix(const Matrix<S>& a, const Matrix<S>& b,
                                      const S& tol = scalar_mode<S>::default_tol()) {
    Matrix<S> x(a.cols(), b.cols());
    for (int j = 0; j < b.cols(); ++j) {
        auto col = solve<S>(a, Vector<S>(b.col(j)), tol);
        if (!col) return std::nullopt;
        x.col(j) = *col;
    }
    return x;
}

template <class S>
Matrix<S> inverse(const Matrix<S>& a, const S& tol = scalar_mode<S>::default_tol()) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
    auto x = solve_matrix<S>(a, Matrix<S>(Matrix<S>::Identity(a.rows(), a.cols())), tol);
    if (!x || rank(a, tol) != a.rows()) throw std::domain_error("inverse: singular matrix");
    return *x;
}

// Exact least squares by normal equations. Returns (x, residual b - A x).
template <class S>
std::pair<Vector<S>, Vector<S>> lstsq(const Matrix<S>& a, const Vector<S>& b,
                                      const S& tol = scalar_mode<S>::default_tol()) {
    Matrix<S> at = a.transpose();
    Matrix<S> ata = at * a;
    Vector<S> atb = at * b;
    auto x = solve<S>(ata, atb, tol);
    if (!x) throw std::domain_error("lstsq: normal equations inconsistent");
    Vector<S> res = b - a * (*x);
    return {*x, res};
}

// Column span membership: does v lie in span(cols of basis)?
template <class S>
bool in_span(const Matrix<S>& basis, const Vector<S>& v, const S& tol = scalar_mode<S>::default_tol()) {
    if (basis.cols() == 0) return scalar_mode<S>::is_zero(abs_sum<S>(v), tol);
    return solve<S>(basis, v, tol).has_value();
}

// Subspace inclusion span(a) <= span(b), columns as vectors.
template <class S>
bool span_contained(const Matrix<S>& a, const Matrix<S>& b, const S& tol = scalar_mode<S>::default_tol()) {
    for (int j = 0; j < a.cols(); ++j)
        if (!in_span<S>(b, Vector<S>(a.col(j)), tol)) return false;
    return true;
}

// Reduce candidate columns to an independent spanning set (echelon order).
template <class S>
Matrix<S> column_space_basis(const Matrix<S>& m, const S& tol = scalar_mode<S>::default_tol()) {
    Rref<S> r = rref(Matrix<S>(m.transpose()), tol);
    Matrix<S> out(m.rows(), r.rank);
    for (int i = 0; i < r.rank; ++i) out.col(i) = r.mat.row(i).transpose();
    return out;
}

// Signature of an exact symmetric matrix via congruence diagonalization.
struct Signature {
    int positive = 0, zero = 0, negative = 0;
    bool negative_definite(int dim) const { return negative == dim; }
    bool positive_definite(int dim) const { return positive == dim; }
    bool nondegenerate() const { return zero == 0; }
};

template <class S>
Signature signature(Matrix<S> g, const S& tol = scalar_mode<S>::default_tol()) {
    const int n = static_cast<int>(g.rows());
    if (g.cols() != n) throw std::invalid_argument("signature: not square");
    Signature sig;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int p = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && !scalar_mode<S>::is_zero(g(i, i), tol)) { p = i; break; }
        if (p < 0) {
            // all remaining diagonal entries are zero; look for off-diagonal
            int a = -1, b = -1;
            for (int i = 0; i < n && a < 0; ++i)
                if (!done[i])
                    for (int j = i + 1; j < n; ++j)
                        if (!done[j] && !scalar_mode<S>::is_zero(g(i, j), tol)) { a = i; b = j; break; }
            if (a < 0) break;  // remaining block is zero
            // row/col operation: e_a += e_b creates a nonzero diagonal entry
            g.row(a) += g.row(b);
            g.col(a) += g.col(b);
            p = a;
        }
        // eliminate row/col p
        for (int i = 0; i < n; ++i) {
            if (i == p || done[i]) continue;
            if (scalar_mode<S>::is_zero(g(i, p), tol)) continue;
            S f = g(i, p) / g(p, p);
            g.row(i) -= f * g.row(p);
            g.col(i) -= f * g.col(p);
        }
        if (g(p, p) > S(0)) ++sig.positive;
        else ++sig.negative;
        done[p] = true;
    }
    for (int i = 0; i < n; ++i)
        if (!done[i]) ++sig.zero;
    return sig;
}

// Characteristic polynomial coefficients c of det(xI - A) = x^n + c[n-1] x^{n-1} + ... + c[0],
// by the Faddeev-LeVerrier recursion (field scalars only).
template <class S>
std::vector<S> charpoly(const Matrix<S>& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<S> c(n + 1, S(0));
    c[n] = S(1);
    Matrix<S> mk = Matrix<S>::Zero(n, n);
    for (int k = 1; k <= n; ++k) {
        mk = a * mk;
        for (int i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
        Matrix<S> amk = a * mk;
        S tr(0);
        for (int i = 0; i < n; ++i) tr += amk(i, i);
        c[n - k] = -tr / S(k);
    }
    return c;
}

namespace detail {

inline std::vector<mpz_class> divisors_bounded(mpz_class v, size_t cap = 20000) {
    v = ::abs(v);
    std::vector<mpz_class> divs;
    if (v == 0) return divs;
    for (mpz_class d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
            divs.push_back(d);
            divs.push_back(v / d);
            if (divs.size() > cap) return divs;  // give up on exhaustiveness, keep what we have
        }
    }
    return divs;
}

}  // namespace detail

// Rational roots of a rational-coefficient polynomial (ascending coefficients).
inline std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs) {
    // clear denominators -> integer polynomial
    mpz_class lcm_den(1);
    for (const auto& c : coeffs) {
        mpz_class d = c.raw().get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
        lcm_den = lcm_den / g * d;
    }
    std::vector<mpz_class> ic;
    for (const auto& c : coeffs) {
        mpq_class q = c.raw() * mpq_class(lcm_den);
        ic.push_back(q.get_num());
    }
    // strip trailing zero coefficients (roots at 0)
    std::vector<Rational> roots;
    size_t lo = 0;
    while (lo < ic.size() && ic[lo] == 0) ++lo;
    if (lo == ic.size()) return roots;  // zero polynomial
    if (lo > 0) roots.push_back(Rational(0));
    size_t hi = ic.size();
    while (hi > lo && ic[hi - 1] == 0) --hi;
    if (hi - lo <= 1) return roots;
    auto eval_zero = [&](const Rational& r) {
        Rational acc(0), p(1);
        for (size_t i = lo; i < hi; ++i) {
            acc += Rational(mpq_class(ic[i])) * p;
            p *= r;
        }
        return acc.is_zero();
    };
    auto p_divs = detail::divisors_bounded(ic[lo]);
    auto q_divs = detail::divisors_bounded(ic[hi - 1]);
    for (const auto& p : p_divs)
        for (const auto& q : q_divs) {
            Rational cand(mpq_class(p, q));
            for (int s = 0; s < 2; ++s) {
                Rational r = s ? -cand : cand;
                if (eval_zero(r) && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
            }
        }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// --- rational orthonormalization ----------------------------------------

// Find x with x^T G x = 1 by bounded search in the congruence-diagonalized
// coordinates. G must be positive definite. Returns x in original coordinates.
namespace detail {

// search rational solutions of sum d_i x_i^2 = 1 using 1..3 active coordinates
inline std::optional<QVector> unit_vector_search(const std::vector<Rational>& d) {
    const int k = static_cast<int>(d.size());
    auto mk = [&](std::initializer_list<std::pair<int, Rational>> terms) {
        QVector v = QVector::Zero(k);
        for (auto& [i, val] : terms) v(i) = val;
        return v;
    };
    // single coordinate: d_i x^2 = 1
    for (int i = 0; i < k; ++i) {
        auto s = (Rational(1) / d[i]).sqrt_exact();
        if (s) return mk({{i, *s}});
    }
    const int NMAX = 24;
    // two coordinates: d_i (a/c)^2 + d_j (b/c)^2 = 1
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            for (int c = 1; c <= NMAX; ++c)
                for (int a = 1; a <= c * 2; ++a)
                    for (int b = 0; b <= c * 2; ++b) {
                        Rational lhs = d[i] * Rational(a * a, c * c) + d[j] * Rational(b * b, c * c);
                        if (lhs == Rational(1)) return mk({{i, Rational(a, c)}, {j, Rational(b, c)}});
                    }
    // three coordinates
    const int N3 = 12;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            for (int l = j + 1; l < k; ++l)
                for (int c = 1; c <= N3; ++c)
                    for (int a = 0; a <= c; ++a)
                        for (int b = 0; b <= c; ++b)
                            for (int e = 0; e <= c; ++e) {
                                if (!a && !b && !e) continue;
                                Rational lhs = d[i] * Rational(a * a, c * c) + d[j] * Rational(b * b, c * c) +
                                               d[l] * Rational(e * e, c * c);
                                if (lhs == Rational(1))
                                    return mk({{i, Rational(a, c)}, {j, Rational(b, c)}, {l, Rational(e, c)}});
                            }
    return std::nullopt;
}

}  // namespace detail

// Attempt T with T^T G T = Id over the rationals (G positive definite).
// Columns of T are a G-orthonormal basis. Returns nullopt when the bounded
// search fails (which, for catalog data, means the form is rationally
// anisotropic rather than a search-depth issue).
inline std::optional<QMatrix> rational_orthonormalize(const QMatrix& g) {
    const int n = static_cast<int>(g.rows());
    if (n == 0) return QMatrix(0, 0);
    // congruence diagonalization, tracking the basis
    QMatrix a = g;
    QMatrix basis = QMatrix::Identity(n, n);
    std::vector<int> order;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int p = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && !a(i, i).is_zero()) { p = i; break; }
        if (p < 0) {
            int x = -1, y = -1;
            for (int i = 0; i < n && x < 0; ++i)
                if (!done[i])
                    for (int j = i + 1; j < n; ++j)
                        if (!done[j] && !a(i, j).is_zero()) { x = i; y = j; break; }
            if (x < 0) return std::nullopt;  // degenerate
            a.row(x) += a.row(y);
            a.col(x) += a.col(y);
            basis.col(x) += basis.col(y);
            p = x;
        }
        for (int i = 0; i < n; ++i) {
            if (i == p || done[i]) continue;
            if (a(i, p).is_zero()) continue;
            Rational f = a(i, p) / a(p, p);
            a.row(i) -= f * a.row(p);
            a.col(i) -= f * a.col(p);
            basis.col(i) -= f * basis.col(p);
        }
        done[p] = true;
        order.push_back(p);
    }
    std::vector<Rational> d;
    for (int p : order) {
        if (a(p, p) <= Rational(0)) return std::nullopt;  // not positive definite
        d.push_back(a(p, p));
    }
    // Greedily peel off unit vectors.
    QMatrix diag_basis(n, n);
    for (int i = 0; i < n; ++i) diag_basis.col(i) = basis.col(order[i]);
    QMatrix out(n, n);
    QMatrix cur = diag_basis;  // columns: G-orthogonal, norms d[i]
    std::vector<Rational> cd = d;
    for (int produced = 0; produced < n; ++produced) {
        auto x = detail::unit_vector_search(cd);
        if (!x) return std::nullopt;
        QVector v = cur * (*x);
        out.col(produced) = v;
        // G-orthogonal complement of v within current columns, re-diagonalized greedily:
        // subtract projections, then re-orthogonalize pairwise (Gram-Schmidt without norms).
        std::vector<QVector> rem;
        for (int i = 0; i < cur.cols(); ++i) {
            QVector w = cur.col(i);
            Rational proj = (v.transpose() * g * w)(0, 0);  // <v,w>_G, |v|=1
            w -= proj * v;
            if (!abs_sum<Rational>(w).is_zero()) rem.push_back(w);
        }
        // Gram-Schmidt (orthogonalize only) to get a G-orthogonal basis of the complement
        std::vector<QVector> ortho;
        for (auto& w : rem) {
            QVector u = w;
            for (auto& o : ortho) {
                Rational num = (o.transpose() * g * u)(0, 0);
                Rational den = (o.transpose() * g * o)(0, 0);
                u -= (num / den) * o;
            }
            if (!abs_sum<Rational>(u).is_zero()) ortho.push_back(u);
            if (static_cast<int>(ortho.size()) == n - produced - 1) break;
        }
        if (static_cast<int>(ortho.size()) != n - produced - 1) return std::nullopt;
        cur.resize(n, static_cast<int>(ortho.size()));
        cd.clear();
        for (size_t i = 0; i < ortho.size(); ++i) {
            cur.col(static_cast<int>(i)) = ortho[i];
            cd.push_back((ortho[i].transpose() * g * ortho[i])(0, 0));
        }
    }
    return out;
}

// Deterministic small-rational generator for property tests and seeded splits.
class RationalRng {
public:
    explicit RationalRng(unsigned long seed) : eng_(seed) {}
    Rational small(int num_bound = 5, int den_bound = 3) {
        std::uniform_int_distribution<int> num(-num_bound, num_bound);
        std::uniform_int_distribution<int> den(1, den_bound);
        return Rational(num(eng_), den(eng_));
    }
    int uniform_int(int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(eng_);
    }
    QVector vector(int n, int num_bound = 5, int den_bound = 3) {
        QVector v(n);
        for (int i = 0; i < n; ++i) v(i) = small(num_bound, den_bound);
        return v;
    }
    QMatrix matrix(int r, int c, int num_bound = 5, int den_bound = 3) {
        QMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = small(num_bound, den_bound);
        return m;
    }
    QMatrix skew(int n, int num_bound = 5, int den_bound = 3) {
        QMatrix m = QMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Rational v = small(num_bound, den_bound);
                m(i, j) = v;
                m(j, i) = -v;
            }
        return m;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace skt
