#pragma once

#include "skt/altform.hpp"

namespace skt {

// Symmetric operator on Lambda^2 R^n with curvature-tensor views, indexed by
// increasing pairs (lexicographic). Entry convention:
//   R(X,Y,Z,W) = g(R(X,Y)Z, W),  M[(ij),(kl)] = R(e_i,e_j,e_k,e_l)
// so R(e_i,e_j) is recovered as a skew endomorphism via the 2-form with
// coefficients alpha(k,l) = R(i,j,k,l).
template <class S>
class CurvOperator {
public:
    CurvOperator() : n_(0) {}
    explicit CurvOperator(int n) : n_(n), m_(Matrix<S>::Zero(pair_count(n), pair_count(n))) {}
    CurvOperator(int n, Matrix<S> m) : n_(n), m_(std::move(m)) {
        if (m_.rows() != pair_count(n) || m_.cols() != pair_count(n))
            throw std::invalid_argument("CurvOperator: wrong matrix size");
    }

    int dim() const { return n_; }
    const Matrix<S>& matrix() const { return m_; }
    Matrix<S>& matrix() { return m_; }

    // 1-based vector arguments like the rest of the module? Use 0-based here;
    // all internal code is 0-based, AltForm keys are 1-based.
    S value(int i, int j, int k, int l) const {
        int s = 1;
        if (i == j || k == l) return S(0);
        if (i > j) { std::swap(i, j); s = -s; }
        if (k > l) { std::swap(k, l); s = -s; }
        S v = m_(pair_index(n_, i, j), pair_index(n_, k, l));
        return s < 0 ? S(-v) : v;
    }

    void set(int i, int j, int k, int l, S v) {
        if (i == j || k == l) throw std::invalid_argument("CurvOperator::set: repeated index");
        int s = 1;
        if (i > j) { std::swap(i, j); s = -s; }
        if (k > l) { std::swap(k, l); s = -s; }
        if (s < 0) v = -v;
        m_(pair_index(n_, i, j), pair_index(n_, k, l)) = v;
    }

    // R(e_i, e_j) as a skew endomorphism (0-based i,j).
    Matrix<S> skew(int i, int j) const {
        Matrix<S> a = Matrix<S>::Zero(n_, n_);
        for (int k = 0; k < n_; ++k)
            for (int l = 0; l < n_; ++l) a(l, k) = value(i, j, k, l);  // R(..)e_k has e_l comp R(i,j,k,l)
        return a;
    }

    // Apply to a 2-form.
    AltForm<S> apply(const AltForm<S>& alpha) const {
        if (alpha.degree() != 2 || alpha.dim() != n_) throw std::invalid_argument("CurvOperator::apply");
        Vector<S> v = form_to_vector(alpha);
        return vector_to_form(n_, 2, Vector<S>(m_ * v));
    }

    S symmetry_residual() const { return abs_sum<S>(Matrix<S>(m_ - m_.transpose())); }

    CurvOperator& operator+=(const CurvOperator& o) { m_ += o.m_; return *this; }
    CurvOperator& operator-=(const CurvOperator& o) { m_ -= o.m_; return *this; }
    CurvOperator& operator*=(const S& s) { m_ *= s; return *this; }
    friend CurvOperator operator+(CurvOperator a, const CurvOperator& b) { a += b; return a; }
    friend CurvOperator operator-(CurvOperator a, const CurvOperator& b) { a -= b; return a; }
    friend CurvOperator operator*(const S& s, CurvOperator a) { a *= s; return a; }

    static CurvOperator identity(int n) { return CurvOperator(n, Matrix<S>(Matrix<S>::Identity(pair_count(n), pair_count(n)))); }

    // Symmetric product of two 2-forms: R = alpha (x) beta + beta (x) alpha.
    static CurvOperator sym_product(const AltForm<S>& alpha, const AltForm<S>& beta) {
        if (alpha.dim() != beta.dim()) throw std::invalid_argument("sym_product: dimension mismatch");
        Vector<S> a = form_to_vector(alpha), b = form_to_vector(beta);
        return CurvOperator(alpha.dim(), Matrix<S>(a * b.transpose() + b * a.transpose()));
    }

    // A 4-form eta viewed inside Sym^2 Lambda^2: eta(X^Y, Z^W) = eta(X,Y,Z,W).
    static CurvOperator from_four_form(const AltForm<S>& eta) {
        if (eta.degree() != 4) throw std::invalid_argument("from_four_form: degree must be 4");
        CurvOperator r(eta.dim());
        auto pairs = multi_indices(eta.dim(), 2);
        for (auto& p : pairs)
            for (auto& q : pairs) {
                MultiIndex m = {p[0], p[1], q[0], q[1]};
                S v = eta.coeff(m);
                if (!scalar_mode<S>::is_zero(v)) r.set(p[0] - 1, p[1] - 1, q[0] - 1, q[1] - 1, v);
            }
        return r;
    }

private:
    int n_;
    Matrix<S> m_;
};

// tau^2_{X,Y} Z := tau_Z tau_X Y, as a symmetric operator on Lambda^2:
// tau^2(X,Y,Z,W) = -<tau_XY, tau_ZW>.
template <class S>
CurvOperator<S> tau_squared(const AltForm<S>& tau) {
    if (tau.degree() != 3) throw std::invalid_argument("tau_squared: degree must be 3");
    const int n = tau.dim();
    auto pairs = multi_indices(n, 2);
    const int np = static_cast<int>(pairs.size());
    // m(X^Y) = tau_X Y in coordinates
    Matrix<S> m = Matrix<S>::Zero(n, np);
    for (int p = 0; p < np; ++p) {
        int i = pairs[p][0] - 1, j = pairs[p][1] - 1;
        for (int w = 0; w < n; ++w) {
            MultiIndex idx = {i + 1, j + 1, w + 1};
            m(w, p) = tau.coeff(idx);  // g(tau_{e_i} e_j, e_w)
        }
    }
    return CurvOperator<S>(n, Matrix<S>(-(m.transpose() * m)));
}

// Bianchi map b(R)(X,Y,Z,W) = R(X,Y,Z,W) + R(Y,Z,X,W) + R(Z,X,Y,W), a 4-form
// for symmetric R.
template <class S>
AltForm<S> bianchi(const CurvOperator<S>& r) {
    const int n = r.dim();
    AltForm<S> out(n, 4);
    if (n < 4) return out;
    for (auto& idx : multi_indices(n, 4)) {
        int x = idx[0] - 1, y = idx[1] - 1, z = idx[2] - 1, w = idx[3] - 1;
        S v = r.value(x, y, z, w) + r.value(y, z, x, w) + r.value(z, x, y, w);
        if (!scalar_mode<S>::is_zero(v)) out.add(idx, v);
    }
    return out;
}

template <class S>
CurvOperator<S> bianchi_operator(const CurvOperator<S>& r) {
    return CurvOperator<S>::from_four_form(bianchi(r));
}

// Ricci endomorphism Ric = sum_{i<j} (e_i ^ e_j) o R(e_i, e_j).
template <class S>
Matrix<S> ricci_endo(const CurvOperator<S>& r) {
    const int n = r.dim();
    Matrix<S> ric = Matrix<S>::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Matrix<S> eij = Matrix<S>::Zero(n, n);
            eij(j, i) = S(1);
            eij(i, j) = S(-1);
            ric += eij * r.skew(i, j);
        }
    return ric;
}

template <class S>
S scalar_curvature(const CurvOperator<S>& r) {
    Matrix<S> ric = ricci_endo(r);
    S tr(0);
    for (int i = 0; i < r.dim(); ++i) tr += ric(i, i);
    return tr;
}

// Norms. Lambda^2 inner product (<e_i^e_j> orthonormal) on skew endos is
// -tr(AB)/2; the endomorphism norm of the footnote convention is tr(A^T A).
template <class S>
S lambda2_inner(const Matrix<S>& a, const Matrix<S>& b) {
    Matrix<S> p = a * b;
    S tr(0);
    for (int i = 0; i < p.rows(); ++i) tr += p(i, i);
    return S(-tr) / S(2);
}

template <class S>
S endo_norm2(const Matrix<S>& a) {
    Matrix<S> p = a.transpose() * a;
    S tr(0);
    for (int i = 0; i < p.rows(); ++i) tr += p(i, i);
    return tr;
}

// Norm convention of the scalar-curvature identity: sum_i |e_i . tau|^2 in
// Lambda^2, which equals 3 * |tau|^2 in the Lambda^3 inner product.
template <class S>
S tau_norm2_contraction(const AltForm<S>& tau) {
    S acc(0);
    for (int i = 1; i <= tau.dim(); ++i) acc += interior(i, tau).norm2_lambda();
    return acc;
}

}  // namespace skt
