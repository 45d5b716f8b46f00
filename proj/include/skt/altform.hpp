#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "skt/linalg.hpp"
#include "skt/types.hpp"

namespace skt {

// Degree-k alternating form on Euclidean R^n, standard orthonormal basis
// e_1..e_n. Sparse coefficient table keyed by strictly increasing 1-based
// index tuples; zero coefficients are never stored.
template <class S>
class AltForm {
public:
    AltForm() : n_(0), k_(0) {}
    AltForm(int n, int k) : n_(n), k_(k) {
        if (n < 1) throw std::invalid_argument("AltForm: dim must be >= 1");
        if (k < 0) throw std::invalid_argument("AltForm: negative degree");
    }

    static AltForm basis(int n, MultiIndex idx) {
        AltForm f(n, static_cast<int>(idx.size()));
        f.add(idx, S(1));
        return f;
    }

    int dim() const { return n_; }
    int degree() const { return k_; }
    const std::map<MultiIndex, S>& entries() const { return c_; }
    bool is_zero(const S& tol = scalar_mode<S>::default_tol()) const {
        for (auto& [k, v] : c_)
            if (!scalar_mode<S>::is_zero(v, tol)) return false;
        return true;
    }

    // Add c * e_idx where idx is any tuple (sorted internally with sign).
    void add(MultiIndex idx, S coeff) {
        if (static_cast<int>(idx.size()) != k_) throw std::invalid_argument("AltForm::add: wrong degree");
        int sign = sort_index(idx);
        if (sign == 0) return;
        for (int i : idx)
            if (i < 1 || i > n_) throw std::out_of_range("AltForm::add: index out of range");
        if (sign < 0) coeff = -coeff;
        auto it = c_.find(idx);
        if (it == c_.end()) {
            if (!scalar_mode<S>::is_zero(coeff)) c_.emplace(std::move(idx), std::move(coeff));
        } else {
            it->second += coeff;
            if (scalar_mode<S>::is_zero(it->second)) c_.erase(it);
        }
    }

    // Coefficient on a (not necessarily sorted) tuple, with sign.
    S coeff(MultiIndex idx) const {
        if (static_cast<int>(idx.size()) != k_) throw std::invalid_argument("AltForm::coeff: wrong degree");
        int sign = sort_index(idx);
        if (sign == 0) return S(0);
        auto it = c_.find(idx);
        if (it == c_.end()) return S(0);
        return sign < 0 ? S(-it->second) : it->second;
    }

    // Evaluate on basis vectors e_{i1},..,e_{ik} -- same as coeff for orthonormal frames.
    S operator()(const MultiIndex& idx) const { return coeff(idx); }

    AltForm& operator+=(const AltForm& o) {
        check_compatible(o);
        for (auto& [k, v] : o.c_) add(k, v);
        return *this;
    }
    AltForm& operator-=(const AltForm& o) {
        check_compatible(o);
        for (auto& [k, v] : o.c_) add(k, -v);
        return *this;
    }
    AltForm& operator*=(const S& s) {
        if (scalar_mode<S>::is_zero(s)) {
            c_.clear();
            return *this;
        }
        for (auto& [k, v] : c_) v *= s;
        return *this;
    }
    friend AltForm operator+(AltForm a, const AltForm& b) { a += b; return a; }
    friend AltForm operator-(AltForm a, const AltForm& b) { a -= b; return a; }
    friend AltForm operator*(const S& s, AltForm a) { a *= s; return a; }
    friend AltForm operator*(AltForm a, const S& s) { a *= s; return a; }
    AltForm operator-() const {
        AltForm r = *this;
        for (auto& [k, v] : r.c_) v = -v;
        return r;
    }

    friend bool operator==(const AltForm& a, const AltForm& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && (a - b).is_zero();
    }

    // Inner product with e_I orthonormal in Lambda^k.
    friend S form_inner(const AltForm& a, const AltForm& b) {
        a.check_compatible(b);
        S acc(0);
        for (auto& [k, v] : a.c_) {
            auto it = b.c_.find(k);
            if (it != b.c_.end()) acc += v * it->second;
        }
        return acc;
    }
    S norm2_lambda() const { return form_inner(*this, *this); }
    S abs_sum_coeffs() const {
        S acc(0);
        for (auto& [k, v] : c_) acc += abs(v);
        return acc;
    }

    void check_compatible(const AltForm& o) const {
        if (n_ != o.n_) throw std::invalid_argument("AltForm: dimension mismatch");
        if (k_ != o.k_) throw std::invalid_argument("AltForm: degree mismatch");
    }

    // -1/0/+1: sign of the sorting permutation, 0 on repeated index.
    static int sort_index(MultiIndex& idx) {
        int sign = 1;
        for (size_t i = 1; i < idx.size(); ++i)
            for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
                if (idx[j - 1] == idx[j]) return 0;
                std::swap(idx[j - 1], idx[j]);
                sign = -sign;
            }
        return sign;
    }

private:
    int n_, k_;
    std::map<MultiIndex, S> c_;
};

template <class S>
using Endo = Matrix<S>;

// Enumerate strictly increasing k-tuples from 1..n in lexicographic order.
inline std::vector<MultiIndex> multi_indices(int n, int k) {
    std::vector<MultiIndex> out;
    if (k < 0 || k > n) return out;
    MultiIndex idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i + 1;
    while (true) {
        out.push_back(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return out;
}

// Coefficient vector in the lexicographic Lambda^k basis.
template <class S>
Vector<S> form_to_vector(const AltForm<S>& a) {
    auto idxs = multi_indices(a.dim(), a.degree());
    Vector<S> v = Vector<S>::Zero(static_cast<int>(idxs.size()));
    for (size_t i = 0; i < idxs.size(); ++i) v(static_cast<int>(i)) = a.coeff(idxs[i]);
    return v;
}

template <class S>
AltForm<S> vector_to_form(int n, int k, const Vector<S>& v) {
    auto idxs = multi_indices(n, k);
    if (static_cast<int>(idxs.size()) != v.size()) throw std::invalid_argument("vector_to_form: size mismatch");
    AltForm<S> a(n, k);
    for (size_t i = 0; i < idxs.size(); ++i)
        if (!scalar_mode<S>::is_zero(v(static_cast<int>(i)))) a.add(idxs[i], v(static_cast<int>(i)));
    return a;
}

// Exterior product. Bilinear, graded-anticommutative; degree overflow gives 0.
template <class S>
AltForm<S> wedge(const AltForm<S>& a, const AltForm<S>& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
    int k = a.degree() + b.degree();
    AltForm<S> out(a.dim(), k);  // degree > n stays the zero form: every tuple repeats an index
    for (auto& [ia, va] : a.entries())
        for (auto& [ib, vb] : b.entries()) {
            MultiIndex m = ia;
            m.insert(m.end(), ib.begin(), ib.end());
            out.add(std::move(m), va * vb);
        }
    return out;
}

// Interior product X . alpha for a coordinate vector X.
template <class S>
AltForm<S> interior(const Vector<S>& x, const AltForm<S>& a) {
    if (static_cast<int>(x.size()) != a.dim()) throw std::invalid_argument("interior: dimension mismatch");
    if (a.degree() == 0) throw std::invalid_argument("interior: cannot contract a 0-form");
    AltForm<S> out(a.dim(), a.degree() - 1);
    for (auto& [idx, v] : a.entries()) {
        for (size_t p = 0; p < idx.size(); ++p) {
            const S& xc = x(idx[p] - 1);
            if (scalar_mode<S>::is_zero(xc)) continue;
            MultiIndex rest;
            rest.reserve(idx.size() - 1);
            for (size_t q = 0; q < idx.size(); ++q)
                if (q != p) rest.push_back(idx[q]);
            S c = xc * v;
            if (p % 2 == 1) c = -c;
            out.add(std::move(rest), std::move(c));
        }
    }
    return out;
}

template <class S>
AltForm<S> interior(int i /*1-based*/, const AltForm<S>& a) {
    Vector<S> x = Vector<S>::Zero(a.dim());
    x(i - 1) = S(1);
    return interior(x, a);
}

// 2-form -> skew endomorphism, g(alpha(X),Y) = alpha(X,Y).
// In particular e_i^e_j maps e_i -> e_j, e_j -> -e_i.
template <class S>
Endo<S> form_endo(const AltForm<S>& a) {
    if (a.degree() != 2) throw std::invalid_argument("form_endo: degree must be 2");
    Endo<S> m = Endo<S>::Zero(a.dim(), a.dim());
    for (auto& [idx, v] : a.entries()) {
        int i = idx[0] - 1, j = idx[1] - 1;
        m(j, i) += v;   // alpha(e_i) has e_j component alpha(i,j)
        m(i, j) -= v;
    }
    return m;
}

template <class S>
AltForm<S> endo_form(const Matrix<S>& m, const S& tol = scalar_mode<S>::default_tol()) {
    if (!is_skew(m, tol)) throw std::invalid_argument("endo_form: matrix not skew");
    int n = static_cast<int>(m.rows());
    AltForm<S> a(n, 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!scalar_mode<S>::is_zero(m(j, i), tol)) a.add({i + 1, j + 1}, m(j, i));
    return a;
}

template <class S>
AltForm<S> vectors_wedge(const Vector<S>& x, const Vector<S>& y) {
    int n = static_cast<int>(x.size());
    AltForm<S> a(n, 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            S c = x(i) * y(j) - x(j) * y(i);
            if (!scalar_mode<S>::is_zero(c)) a.add({i + 1, j + 1}, c);
        }
    return a;
}

// Derivation action A_* alpha = sum_i A e_i ^ (e_i . alpha).
template <class S>
AltForm<S> derivation_action(const Matrix<S>& a, const AltForm<S>& alpha) {
    if (static_cast<int>(a.rows()) != alpha.dim()) throw std::invalid_argument("derivation_action: dimension mismatch");
    const int n = alpha.dim();
    if (alpha.degree() == 0) return AltForm<S>(n, 0);
    AltForm<S> out(n, alpha.degree());
    for (auto& [idx, v] : alpha.entries()) {
        // act slot by slot: replace index idx[p] by each basis direction of A e_{idx[p]}
        for (size_t p = 0; p < idx.size(); ++p) {
            int col = idx[p] - 1;
            for (int r = 0; r < n; ++r) {
                if (scalar_mode<S>::is_zero(a(r, col))) continue;
                MultiIndex m = idx;
                m[p] = r + 1;
                out.add(std::move(m), a(r, col) * v);
            }
        }
    }
    return out;
}

// Derivation action on endomorphisms: A_* B = [A, B].
template <class S>
Matrix<S> derivation_action_endo(const Matrix<S>& a, const Matrix<S>& b) {
    return a * b - b * a;
}

// Hodge star for the standard orientation vol = e_1^...^e_n.
template <class S>
AltForm<S> hodge_star(const AltForm<S>& a) {
    const int n = a.dim(), k = a.degree();
    AltForm<S> out(n, n - k);
    for (auto& [idx, v] : a.entries()) {
        MultiIndex comp;
        comp.reserve(n - k);
        size_t p = 0;
        for (int i = 1; i <= n; ++i) {
            if (p < idx.size() && idx[p] == i) ++p;
            else comp.push_back(i);
        }
        // sign of permutation (idx, comp) relative to (1..n)
        MultiIndex full = idx;
        full.insert(full.end(), comp.begin(), comp.end());
        int inv = 0;
        for (size_t x = 0; x < full.size(); ++x)
            for (size_t y = x + 1; y < full.size(); ++y)
                if (full[x] > full[y]) ++inv;
        S c = (inv % 2 == 0) ? v : S(-v);
        out.add(std::move(comp), std::move(c));
    }
    return out;
}

template <class S>
AltForm<S> volume_form(int n) {
    MultiIndex all(n);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    return AltForm<S>::basis(n, all);
}

// tau_X as a 2-form / endomorphism for a 3-form tau: X . tau.
template <class S>
Endo<S> three_form_endo(const AltForm<S>& tau, const Vector<S>& x) {
    return form_endo(interior(x, tau));
}

// tau_X Y as a vector.
template <class S>
Vector<S> three_form_map(const AltForm<S>& tau, const Vector<S>& x, const Vector<S>& y) {
    return Vector<S>(three_form_endo(tau, x) * y);
}

}  // namespace skt
