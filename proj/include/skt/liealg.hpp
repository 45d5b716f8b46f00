#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "skt/exterior.hpp"
#include "skt/linalg.hpp"

namespace skt {

template <class S>
Vector<S> vec_matrix(const Matrix<S>& m) {
    Vector<S> v(m.size());
    int k = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v(k++) = m(i, j);
    return v;
}

template <class S>
Matrix<S> unvec_matrix(int rows, int cols, const Vector<S>& v) {
    Matrix<S> m(rows, cols);
    int k = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = v(k++);
    return m;
}

// Bracket-closed span of skew endomorphisms of R^n with exact structure
// constants: [b_i, b_j] = sum_k c(i,j,k) b_k.
template <class S>
struct LieSubalgebra {
    int n = 0;
    std::vector<Matrix<S>> basis;
    std::vector<Matrix<S>> structure;  // structure[k](i,j) = c(i,j,k)

    int dim() const { return static_cast<int>(basis.size()); }

    Matrix<S> basis_matrix() const {
        Matrix<S> m(n * n, dim());
        for (int a = 0; a < dim(); ++a) m.col(a) = vec_matrix(basis[a]);
        return m;
    }

    // Coordinates of a matrix in this basis; nullopt if outside the span.
    std::optional<Vector<S>> coords(const Matrix<S>& x, const S& tol = scalar_mode<S>::default_tol()) const {
        if (dim() == 0) return scalar_mode<S>::is_zero(abs_sum<S>(x), tol) ? std::optional<Vector<S>>(Vector<S>(0)) : std::nullopt;
        return solve<S>(basis_matrix(), vec_matrix(x), tol);
    }

    bool contains(const Matrix<S>& x, const S& tol = scalar_mode<S>::default_tol()) const {
        return coords(x, tol).has_value();
    }

    Matrix<S> ad(int a) const {
        Matrix<S> m(dim(), dim());
        for (int k = 0; k < dim(); ++k)
            for (int j = 0; j < dim(); ++j) m(k, j) = structure[k](a, j);
        return m;
    }

    // Residual of bracket closure: sum over pairs of the part of [b_i,b_j]
    // not reproduced by the structure constants.
    S closure_residual() const {
        S acc(0);
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j) {
                Matrix<S> br = basis[i] * basis[j] - basis[j] * basis[i];
                for (int k = 0; k < dim(); ++k) br -= structure[k](i, j) * basis[k];
                acc += abs_sum<S>(br);
            }
        return acc;
    }
};

namespace detail {

// Echelonized span tracker for matrices-as-vectors.
template <class S>
class SpanTracker {
public:
    explicit SpanTracker(int veclen) : veclen_(veclen) {}

    // Returns true when v was independent (and got added).
    bool add(Vector<S> v, const S& tol = scalar_mode<S>::default_tol()) {
        for (size_t r = 0; r < rows_.size(); ++r) {
            const S& lead = rows_[r](lead_cols_[r]);
            S f = v(lead_cols_[r]) / lead;
            if (!scalar_mode<S>::is_zero(f, tol)) v -= f * rows_[r];
        }
        int lead = -1;
        for (int c = 0; c < veclen_; ++c)
            if (!scalar_mode<S>::is_zero(v(c), tol)) { lead = c; break; }
        if (lead < 0) return false;
        rows_.push_back(std::move(v));
        lead_cols_.push_back(lead);
        return true;
    }

    int rank() const { return static_cast<int>(rows_.size()); }

private:
    int veclen_;
    std::vector<Vector<S>> rows_;
    std::vector<int> lead_cols_;
};

}  // namespace detail

// Recompute structure constants for an independent list of skew matrices,
// requiring bracket closure (throws otherwise).
template <class S>
LieSubalgebra<S> make_subalgebra(int n, std::vector<Matrix<S>> basis,
                                 const S& tol = scalar_mode<S>::default_tol()) {
    LieSubalgebra<S> g;
    g.n = n;
    g.basis = std::move(basis);
    const int d = g.dim();
    g.structure.assign(d, Matrix<S>::Zero(d, d));
    if (d == 0) return g;
    Matrix<S> bm = g.basis_matrix();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Matrix<S> br = g.basis[i] * g.basis[j] - g.basis[j] * g.basis[i];
            auto c = solve<S>(bm, vec_matrix(br), tol);
            if (!c) throw std::domain_error("make_subalgebra: basis is not bracket-closed");
            for (int k = 0; k < d; ++k) g.structure[k](i, j) = (*c)(k);
        }
    return g;
}

// Smallest bracket-closed subspace containing the generators.
template <class S>
LieSubalgebra<S> span_close(int n, const std::vector<Matrix<S>>& generators,
                            const S& tol = scalar_mode<S>::default_tol()) {
    for (const auto& gmat : generators)
        if (!is_skew(gmat, tol)) throw std::invalid_argument("span_close: generator is not skew");
    detail::SpanTracker<S> tracker(n * n);
    std::vector<Matrix<S>> basis;
    auto push = [&](const Matrix<S>& m) {
        if (tracker.add(vec_matrix(m), tol)) {
            basis.push_back(m);
            return true;
        }
        return false;
    };
    for (const auto& gmat : generators) push(gmat);
    size_t lo = 0;
    while (lo < basis.size()) {
        size_t hi = basis.size();
        for (size_t i = lo; i < hi; ++i)
            for (size_t j = 0; j < hi; ++j) {
                Matrix<S> br = basis[i] * basis[j] - basis[j] * basis[i];
                push(br);
            }
        lo = hi;
    }
    return make_subalgebra<S>(n, std::move(basis), tol);
}

// so(n) with the standard basis e_i ^ e_j, i < j (lexicographic).
template <class S>
LieSubalgebra<S> so_algebra(int n) {
    std::vector<Matrix<S>> basis;
    for (auto& idx : multi_indices(n, 2)) basis.push_back(form_endo(AltForm<S>::basis(n, idx)));
    return make_subalgebra<S>(n, std::move(basis));
}

// Infinitesimal stabilizer of a form inside so(n): kernel of A -> A_* tau.
template <class S>
LieSubalgebra<S> stabilizer(const AltForm<S>& tau, const S& tol = scalar_mode<S>::default_tol()) {
    const int n = tau.dim();
    auto pairs = multi_indices(n, 2);
    auto targets = multi_indices(n, tau.degree());
    Matrix<S> sys(static_cast<int>(targets.size()), static_cast<int>(pairs.size()));
    for (size_t c = 0; c < pairs.size(); ++c) {
        auto act = derivation_action(form_endo(AltForm<S>::basis(n, pairs[c])), tau);
        sys.col(static_cast<int>(c)) = form_to_vector(act);
    }
    Matrix<S> k = kernel(sys, tol);
    std::vector<Matrix<S>> basis;
    for (int c = 0; c < k.cols(); ++c) {
        Matrix<S> m = Matrix<S>::Zero(n, n);
        for (size_t p = 0; p < pairs.size(); ++p) {
            const S& v = k(static_cast<int>(p), c);
            if (scalar_mode<S>::is_zero(v, tol)) continue;
            int i = pairs[p][0] - 1, j = pairs[p][1] - 1;
            m(j, i) += v;
            m(i, j) -= v;
        }
        basis.push_back(m);
    }
    return make_subalgebra<S>(n, std::move(basis), tol);  // asserts bracket closure
}

// Full commutant {T : [T, b_a] = 0}, split into symmetric and skew parts.
template <class S>
struct Commutant {
    int full_dim = 0;
    std::vector<Matrix<S>> symmetric;
    std::vector<Matrix<S>> skew;
};

template <class S>
Commutant<S> commutant(int n, const std::vector<Matrix<S>>& ops, const S& tol = scalar_mode<S>::default_tol()) {
    const int d = static_cast<int>(ops.size());
    Matrix<S> sys = Matrix<S>::Zero(d * n * n, n * n);
    for (int a = 0; a < d; ++a) {
        // [T, B] entries are linear in T: (TB - BT)(i,j) = sum_k T(i,k)B(k,j) - B(i,k)T(k,j)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int row = a * n * n + i * n + j;
                for (int k = 0; k < n; ++k) {
                    sys(row, i * n + k) += ops[a](k, j);
                    sys(row, k * n + j) -= ops[a](i, k);
                }
            }
    }
    Matrix<S> k = kernel(sys, tol);
    Commutant<S> out;
    out.full_dim = static_cast<int>(k.cols());
    detail::SpanTracker<S> sym_span(n * n), skew_span(n * n);
    for (int c = 0; c < k.cols(); ++c) {
        Matrix<S> t = unvec_matrix(n, n, Vector<S>(k.col(c)));
        Matrix<S> ts = (t + t.transpose()) * (S(1) / S(2));
        Matrix<S> ta = (t - t.transpose()) * (S(1) / S(2));
        if (sym_span.add(vec_matrix(ts), tol)) out.symmetric.push_back(ts);
        if (skew_span.add(vec_matrix(ta), tol)) out.skew.push_back(ta);
    }
    return out;
}

template <class S>
Commutant<S> commutant(const LieSubalgebra<S>& g, const S& tol = scalar_mode<S>::default_tol()) {
    if (g.dim() == 0) {
        // commutant of the zero algebra is all of End(R^n)
        Commutant<S> out;
        out.full_dim = g.n * g.n;
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                Matrix<S> m = Matrix<S>::Zero(g.n, g.n);
                m(i, j) = S(1);
                Matrix<S> ms = (m + m.transpose()) * (S(1) / S(2));
                Matrix<S> ma = (m - m.transpose()) * (S(1) / S(2));
                if (i <= j) out.symmetric.push_back(ms);
                if (i < j) out.skew.push_back(ma);
            }
        return out;
    }
    return commutant(g.n, g.basis, tol);
}

// Casimir of so(n) acting on R^n: -sum_{i<j} (e_i^e_j)^2 = (n-1) Id.
template <class S>
Matrix<S> casimir_so(int n) {
    Matrix<S> cas = Matrix<S>::Zero(n, n);
    for (auto& idx : multi_indices(n, 2)) {
        Matrix<S> l = form_endo(AltForm<S>::basis(n, idx));
        cas -= l * l;
    }
    return cas;
}

// Casimir of a subalgebra acting by its given skew matrices, normalized by the
// Lambda^2 trace form <A,B> = -tr(AB)/2 (matching casimir_so on so(n)).
template <class S>
Matrix<S> casimir(const LieSubalgebra<S>& g, const S& tol = scalar_mode<S>::default_tol()) {
    const int d = g.dim();
    if (d == 0) return Matrix<S>::Zero(g.n, g.n);
    Matrix<S> gram(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) gram(a, b) = lambda2_inner(g.basis[a], g.basis[b]);
    if (rank(gram, tol) < d) throw std::domain_error("casimir: degenerate trace form");
    Matrix<S> gi = inverse(gram, tol);
    Matrix<S> cas = Matrix<S>::Zero(g.n, g.n);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) cas -= gi(a, b) * (g.basis[a] * g.basis[b]);
    return cas;
}

// Killing form B(X,Y) = tr(ad X ad Y) on any finite-dimensional algebra given
// by structure constants, with its exact signature.
template <class S>
struct KillingReport {
    Matrix<S> gram;
    Signature sig;
    bool negative_definite = false;
    bool nondegenerate = false;
};

template <class S>
KillingReport<S> killing_from_structure(const std::vector<Matrix<S>>& structure,
                                        const S& tol = scalar_mode<S>::default_tol()) {
    const int d = static_cast<int>(structure.size());
    std::vector<Matrix<S>> ad(d, Matrix<S>::Zero(d, d));
    for (int a = 0; a < d; ++a)
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j) ad[a](k, j) = structure[k](a, j);
    KillingReport<S> rep;
    rep.gram = Matrix<S>::Zero(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
            Matrix<S> p = ad[a] * ad[b];
            S tr(0);
            for (int i = 0; i < d; ++i) tr += p(i, i);
            rep.gram(a, b) = tr;
            rep.gram(b, a) = tr;
        }
    rep.sig = signature(rep.gram, tol);
    rep.negative_definite = rep.sig.negative_definite(d);
    rep.nondegenerate = rep.sig.nondegenerate();
    return rep;
}

template <class S>
KillingReport<S> killing(const LieSubalgebra<S>& g, const S& tol = scalar_mode<S>::default_tol()) {
    return killing_from_structure(g.structure, tol);
}

// Joint kernel of the basis endomorphisms (algebraic shadow of parallel
// vector fields).
template <class S>
Matrix<S> invariant_vectors(const LieSubalgebra<S>& g, const S& tol = scalar_mode<S>::default_tol()) {
    if (g.dim() == 0) return Matrix<S>::Identity(g.n, g.n);
    Matrix<S> stacked(g.n * g.dim(), g.n);
    for (int a = 0; a < g.dim(); ++a) stacked.middleRows(a * g.n, g.n) = g.basis[a];
    return kernel(stacked, tol);
}

// K(h) = ker(b : Sym h -> Lambda^4 V): dimension and a basis of curvature
// operators, computed by exact kernel rank.
template <class S>
struct CurvatureSpace {
    int dim = 0;
    std::vector<CurvOperator<S>> basis;
};

template <class S>
CurvatureSpace<S> curvature_space(const LieSubalgebra<S>& h, const S& tol = scalar_mode<S>::default_tol()) {
    const int d = h.dim(), n = h.n;
    std::vector<std::pair<int, int>> sym_pairs;
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) sym_pairs.emplace_back(a, b);
    std::vector<AltForm<S>> hb;
    for (int a = 0; a < d; ++a) hb.push_back(endo_form(h.basis[a], tol));
    auto lam4 = multi_indices(n, 4);
    Matrix<S> sys = Matrix<S>::Zero(std::max<size_t>(lam4.size(), 1), sym_pairs.size());
    std::vector<CurvOperator<S>> gens;
    for (size_t c = 0; c < sym_pairs.size(); ++c) {
        auto [a, b] = sym_pairs[c];
        CurvOperator<S> r = CurvOperator<S>::sym_product(hb[a], hb[b]);
        gens.push_back(r);
        if (!lam4.empty()) sys.col(static_cast<int>(c)) = form_to_vector(bianchi(r));
    }
    CurvatureSpace<S> out;
    if (sym_pairs.empty()) return out;
    Matrix<S> k = lam4.empty() ? Matrix<S>(Matrix<S>::Identity(sym_pairs.size(), sym_pairs.size()))
                               : kernel(sys, tol);
    // The sym products may be dependent (e.g. low rank h); quotient to a basis.
    detail::SpanTracker<S> span(pair_count(n) * pair_count(n));
    for (int c = 0; c < k.cols(); ++c) {
        CurvOperator<S> r(n);
        for (size_t p = 0; p < sym_pairs.size(); ++p) r += k(static_cast<int>(p), c) * gens[p];
        if (span.add(vec_matrix(r.matrix()), tol)) out.basis.push_back(r);
    }
    out.dim = static_cast<int>(out.basis.size());
    return out;
}

}  // namespace skt
