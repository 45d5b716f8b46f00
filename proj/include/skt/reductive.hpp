#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "skt/liealg.hpp"
#include "skt/repdecomp.hpp"

namespace skt {

// Reductive pair (h, m) with full bracket tables and an inner product on m.
// Bracket data:
//   [h_a, h_b]      = sum_c hh[c](a,b) h_c
//   [h_a, X]        = rho[a] X                        (X in m)
//   [X_i, X_j]      = sum_a mm_h[a](i,j) h_a  +  sum_k mm_m[k](i,j) X_k
template <class S>
struct ReductiveModel {
    int dim_h = 0, dim_m = 0;
    std::vector<Matrix<S>> hh;    // dim_h matrices dim_h x dim_h
    std::vector<Matrix<S>> rho;   // dim_h matrices dim_m x dim_m
    std::vector<Matrix<S>> mm_h;  // dim_h matrices dim_m x dim_m (skew)
    std::vector<Matrix<S>> mm_m;  // dim_m matrices dim_m x dim_m (skew)
    Matrix<S> gram;               // inner product on m

    Matrix<S> bracket_m_h(int i, int j) const {  // [e_i,e_j]_h coefficients
        Vector<S> v(dim_h);
        for (int a = 0; a < dim_h; ++a) v(a) = mm_h[a](i, j);
        return v;
    }

    Vector<S> bracket_m_m(const Vector<S>& x, const Vector<S>& y) const {
        Vector<S> out = Vector<S>::Zero(dim_m);
        for (int k = 0; k < dim_m; ++k) out(k) = (x.transpose() * mm_m[k] * y)(0, 0);
        return out;
    }

    Vector<S> bracket_m_h_coords(const Vector<S>& x, const Vector<S>& y) const {
        Vector<S> out = Vector<S>::Zero(dim_h);
        for (int a = 0; a < dim_h; ++a) out(a) = (x.transpose() * mm_h[a] * y)(0, 0);
        return out;
    }

    Matrix<S> rho_of(const Vector<S>& hcoords) const {
        Matrix<S> m = Matrix<S>::Zero(dim_m, dim_m);
        for (int a = 0; a < dim_h; ++a) m += hcoords(a) * rho[a];
        return m;
    }

    // Sum of residuals of all Jacobi identities on h (+) m.
    S jacobi_residual() const {
        S acc(0);
        // [h,[h,h]] via structure constants of h
        for (int a = 0; a < dim_h; ++a)
            for (int b = 0; b < dim_h; ++b)
                for (int c = 0; c < dim_h; ++c) {
                    // jacobi in h: [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
                    Vector<S> r = Vector<S>::Zero(dim_h);
                    for (int d = 0; d < dim_h; ++d) {
                        // [h_d, h_c] coefficient contribution of [[a,b],c]
                        for (int e2 = 0; e2 < dim_h; ++e2)
                            r(e2) += hh[d](a, b) * hh[e2](d, c) + hh[d](b, c) * hh[e2](d, a) + hh[d](c, a) * hh[e2](d, b);
                    }
                    acc += abs_sum<S>(r);
                }
        // [h,h] acting on m: rho is a Lie algebra homomorphism
        for (int a = 0; a < dim_h; ++a)
            for (int b = 0; b < dim_h; ++b) {
                Matrix<S> lhs = rho[a] * rho[b] - rho[b] * rho[a];
                for (int c = 0; c < dim_h; ++c) lhs -= hh[c](a, b) * rho[c];
                acc += abs_sum<S>(lhs);
            }
        // [h, [m,m]]: equivariance of both components of the m-bracket
        for (int a = 0; a < dim_h; ++a) {
            // m-part: rho(a) [X,Y]_m - [rho(a)X, Y]_m - [X, rho(a)Y]_m = 0
            for (int k = 0; k < dim_m; ++k) {
                // as bilinear forms: rho[a] acting on output vs inputs
                Matrix<S> lhs = Matrix<S>::Zero(dim_m, dim_m);
                for (int l = 0; l < dim_m; ++l) lhs += rho[a](k, l) * mm_m[l];
                lhs -= Matrix<S>(rho[a].transpose() * mm_m[k]) + Matrix<S>(mm_m[k] * rho[a]);
                acc += abs_sum<S>(lhs);
            }
            // h-part: [h_a, [X,Y]_h] = [rho(a)X, Y]_h + [X, rho(a)Y]_h
            for (int c = 0; c < dim_h; ++c) {
                Matrix<S> lhs = Matrix<S>::Zero(dim_m, dim_m);
                for (int b = 0; b < dim_h; ++b) lhs += hh[c](a, b) * mm_h[b];
                lhs -= Matrix<S>(rho[a].transpose() * mm_h[c]) + Matrix<S>(mm_h[c] * rho[a]);
                acc += abs_sum<S>(lhs);
            }
        }
        // [m, [m,m]] cyclic
        for (int i = 0; i < dim_m; ++i)
            for (int j = i + 1; j < dim_m; ++j)
                for (int k = j + 1; k < dim_m; ++k) {
                    Vector<S> ei = Vector<S>::Unit(dim_m, i), ej = Vector<S>::Unit(dim_m, j),
                              ek = Vector<S>::Unit(dim_m, k);
                    Vector<S> hres = Vector<S>::Zero(dim_h);
                    Vector<S> mres = Vector<S>::Zero(dim_m);
                    auto add_term = [&](const Vector<S>& x, const Vector<S>& y, const Vector<S>& z) {
                        // [[x,y], z] with [x,y] = (h-part, m-part)
                        Vector<S> hb = bracket_m_h_coords(x, y);
                        Vector<S> mb = bracket_m_m(x, y);
                        // [h-part, z] lands in m
                        mres += rho_of(hb) * z;
                        // [m-part, z]: h and m components
                        hres += bracket_m_h_coords(mb, z);
                        mres += bracket_m_m(mb, z);
                    };
                    add_term(ei, ej, ek);
                    add_term(ej, ek, ei);
                    add_term(ek, ei, ej);
                    acc += abs_sum<S>(hres) + abs_sum<S>(mres);
                }
        return acc;
    }

    // h acts by gram-skew endomorphisms.
    S isotropy_skew_residual() const {
        S acc(0);
        for (int a = 0; a < dim_h; ++a)
            acc += abs_sum<S>(Matrix<S>(rho[a].transpose() * gram + gram * rho[a]));
        return acc;
    }

    // g([X,Y]_m, Z) + g(Y, [X,Z]_m) = 0.
    S natural_reductivity_residual() const {
        S acc(0);
        for (int i = 0; i < dim_m; ++i) {
            Matrix<S> adi = Matrix<S>::Zero(dim_m, dim_m);  // [e_i, .]_m
            for (int k = 0; k < dim_m; ++k)
                for (int j = 0; j < dim_m; ++j) adi(k, j) = mm_m[k](i, j);
            acc += abs_sum<S>(Matrix<S>(adi.transpose() * gram + gram * adi));
        }
        return acc;
    }
};

// Linear map m -> End(m) defining an invariant connection; entry [i] is
// Lambda(e_i). Lambda = 0 is the canonical connection.
template <class S>
using NomizuMap = std::vector<Matrix<S>>;

template <class S>
NomizuMap<S> zero_nomizu(const ReductiveModel<S>& model) {
    return NomizuMap<S>(model.dim_m, Matrix<S>::Zero(model.dim_m, model.dim_m));
}

// Nomizu map of the Levi-Civita connection:
//   Lambda(X)Y = 1/2 [X,Y]_m + U(X,Y),
//   g(U(X,Y),Z) = 1/2 ( g([Z,X]_m, Y) + g(X, [Z,Y]_m) ).
// U = 0 in the naturally reductive case.
template <class S>
NomizuMap<S> levi_civita_nomizu(const ReductiveModel<S>& model,
                                const S& tol = scalar_mode<S>::default_tol()) {
    const int m = model.dim_m;
    Matrix<S> ginv = inverse(model.gram, tol);
    NomizuMap<S> lam(m, Matrix<S>::Zero(m, m));
    for (int i = 0; i < m; ++i) {
        Matrix<S> li = Matrix<S>::Zero(m, m);
        for (int j = 0; j < m; ++j) {
            Vector<S> x = Vector<S>::Unit(m, i), y = Vector<S>::Unit(m, j);
            Vector<S> half = model.bracket_m_m(x, y) * (S(1) / S(2));
            Vector<S> u_flat(m);
            for (int k = 0; k < m; ++k) {
                Vector<S> z = Vector<S>::Unit(m, k);
                Vector<S> zx = model.bracket_m_m(z, x), zy = model.bracket_m_m(z, y);
                u_flat(k) = ((zx.transpose() * model.gram * y)(0, 0) + (x.transpose() * model.gram * zy)(0, 0)) *
                            (S(1) / S(2));
            }
            li.col(j) = half + ginv * u_flat;
        }
        lam[i] = li;
    }
    return lam;
}

// Nomizu map of nabla^g + tau for a 3-form tau on m (orthonormal gram only).
template <class S>
NomizuMap<S> torsion_nomizu(const ReductiveModel<S>& model, const AltForm<S>& tau,
                            const S& tol = scalar_mode<S>::default_tol()) {
    if (tau.dim() != model.dim_m) throw std::invalid_argument("torsion_nomizu: dimension mismatch");
    NomizuMap<S> lam = levi_civita_nomizu(model, tol);
    for (int i = 0; i < model.dim_m; ++i) lam[i] += three_form_endo(tau, Vector<S>(Vector<S>::Unit(model.dim_m, i)));
    return lam;
}

// h-equivariance residual of a Nomizu map: Lambda([A,X]) = [rho(A), Lambda(X)].
template <class S>
S nomizu_equivariance_residual(const ReductiveModel<S>& model, const NomizuMap<S>& lam) {
    S acc(0);
    for (int a = 0; a < model.dim_h; ++a)
        for (int i = 0; i < model.dim_m; ++i) {
            Matrix<S> lhs = Matrix<S>::Zero(model.dim_m, model.dim_m);
            for (int k = 0; k < model.dim_m; ++k) lhs += model.rho[a](k, i) * lam[k];
            Matrix<S> rhs = model.rho[a] * lam[i] - lam[i] * model.rho[a];
            acc += abs_sum<S>(Matrix<S>(lhs - rhs));
        }
    return acc;
}

template <class S>
struct ConnectionReport {
    // torsion T(e_i,e_j) as columns of blocks: torsion[i] is the matrix whose
    // column j is T(e_i, e_j)
    std::vector<Matrix<S>> torsion;
    std::optional<AltForm<S>> torsion_form;  // tau with T = 2 tau when totally skew
    CurvOperator<S> curvature;               // entries R(X,Y,Z,W) = g(R(X,Y)Z, W)
    std::vector<Matrix<S>> curvature_endos;  // R(e_i, e_j) for i<j, pair order
    LieSubalgebra<S> holonomy;
};

// Curvature endomorphism R(X,Y) = [Lambda X, Lambda Y] - Lambda([X,Y]_m) - rho([X,Y]_h).
template <class S>
Matrix<S> curvature_endo(const ReductiveModel<S>& model, const NomizuMap<S>& lam, int i, int j) {
    Matrix<S> lx = lam[i], ly = lam[j];
    Vector<S> ei = Vector<S>::Unit(model.dim_m, i), ej = Vector<S>::Unit(model.dim_m, j);
    Vector<S> mb = model.bracket_m_m(ei, ej);
    Matrix<S> lam_mb = Matrix<S>::Zero(model.dim_m, model.dim_m);
    for (int k = 0; k < model.dim_m; ++k) lam_mb += mb(k) * lam[k];
    return lx * ly - ly * lx - lam_mb - model.rho_of(model.bracket_m_h_coords(ei, ej));
}

template <class S>
LieSubalgebra<S> holonomy(const ReductiveModel<S>& model, const NomizuMap<S>& lam,
                          const S& tol = scalar_mode<S>::default_tol());

template <class S>
ConnectionReport<S> connection_report(const ReductiveModel<S>& model, const NomizuMap<S>& lam,
                                      const S& tol = scalar_mode<S>::default_tol()) {
    S eq = nomizu_equivariance_residual(model, lam);
    if (!scalar_mode<S>::is_zero(eq, tol)) throw std::invalid_argument("connection_report: non-equivariant Nomizu map");
    const int m = model.dim_m;
    ConnectionReport<S> rep;
    rep.torsion.assign(m, Matrix<S>::Zero(m, m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Vector<S> ei = Vector<S>::Unit(m, i), ej = Vector<S>::Unit(m, j);
            Vector<S> t = lam[i] * ej - lam[j] * ei - model.bracket_m_m(ei, ej);
            rep.torsion[i].col(j) = t;
        }
    // when g(T(X,Y),Z) is totally skew, emit tau = T^flat / 2 (so T = 2 tau)
    AltForm<S> tau(m, 3);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Vector<S> tf = model.gram * rep.torsion[i].col(j);
            for (int k = j + 1; k < m; ++k)
                if (!scalar_mode<S>::is_zero(tf(k), tol)) tau.add({i + 1, j + 1, k + 1}, tf(k) / S(2));
        }
    bool skew_ok = true;
    for (int i = 0; i < m && skew_ok; ++i) {
        Matrix<S> ti = three_form_endo(tau, Vector<S>(Vector<S>::Unit(m, i)));
        for (int j = 0; j < m && skew_ok; ++j) {
            Vector<S> expect = S(2) * (ti * Vector<S>::Unit(m, j));
            Vector<S> diff = Vector<S>(model.gram * rep.torsion[i].col(j)) - expect;
            if (!scalar_mode<S>::is_zero(abs_sum<S>(diff), tol)) skew_ok = false;
        }
    }
    if (skew_ok) rep.torsion_form = tau;
    // curvature
    rep.curvature = CurvOperator<S>(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Matrix<S> r = curvature_endo(model, lam, i, j);
            rep.curvature_endos.push_back(r);
            Matrix<S> rf = model.gram * r;  // g(R(ei,ej) e_k, e_l) = rf(l,k)
            for (int k = 0; k < m; ++k)
                for (int l = k + 1; l < m; ++l) rep.curvature.set(i, j, k, l, rf(l, k));
        }
    rep.holonomy = holonomy(model, lam, tol);
    return rep;
}

// Infinitesimal holonomy: bracket closure of span{R(X,Y)} that is also closed
// under A -> [Lambda(X), A]. Monotone dimension, hard cap dim so(m).
template <class S>
LieSubalgebra<S> holonomy(const ReductiveModel<S>& model, const NomizuMap<S>& lam, const S& tol) {
    const int m = model.dim_m;
    detail::SpanTracker<S> span(m * m);
    std::vector<Matrix<S>> basis;
    auto push = [&](const Matrix<S>& x) {
        if (span.add(vec_matrix(x), tol)) {
            basis.push_back(x);
            return true;
        }
        return false;
    };
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) push(curvature_endo(model, lam, i, j));
    int guard = pair_count(m) + 2;
    bool grew = true;
    while (grew && guard-- > 0) {
        grew = false;
        size_t hi = basis.size();
        for (size_t x = 0; x < hi; ++x) {
            for (size_t y = x + 1; y < hi; ++y) grew |= push(Matrix<S>(basis[x] * basis[y] - basis[y] * basis[x]));
            for (int i = 0; i < m; ++i) grew |= push(Matrix<S>(lam[i] * basis[x] - basis[x] * lam[i]));
        }
    }
    return make_subalgebra<S>(m, std::move(basis), tol);
}

// Derivation action of an endomorphism on a mixed tensor, used for parallel
// transport residuals. Supported tensors: vectors, endomorphisms, forms.
template <class S>
struct InvariantTensor {
    enum class Kind { VectorT, EndoT, FormT } kind;
    Vector<S> vec;
    Matrix<S> endo;
    AltForm<S> form;

    static InvariantTensor vector(Vector<S> v) { return {Kind::VectorT, std::move(v), {}, {}}; }
    static InvariantTensor endomorphism(Matrix<S> m) { return {Kind::EndoT, {}, std::move(m), {}}; }
    static InvariantTensor of_form(AltForm<S> f) { return {Kind::FormT, {}, {}, std::move(f)}; }
};

template <class S>
S tensor_action_abs(const Matrix<S>& a, const InvariantTensor<S>& t) {
    switch (t.kind) {
        case InvariantTensor<S>::Kind::VectorT: return abs_sum<S>(Vector<S>(a * t.vec));
        case InvariantTensor<S>::Kind::EndoT: return abs_sum<S>(Matrix<S>(a * t.endo - t.endo * a));
        case InvariantTensor<S>::Kind::FormT: return derivation_action(a, t.form).abs_sum_coeffs();
    }
    return S(0);
}

// Residual of h-invariance of a tensor.
template <class S>
S h_invariance_residual(const ReductiveModel<S>& model, const InvariantTensor<S>& t) {
    S acc(0);
    for (int a = 0; a < model.dim_h; ++a) acc += tensor_action_abs<S>(model.rho[a], t);
    return acc;
}

struct not_invariant : std::runtime_error {
    not_invariant() : std::runtime_error("tensor is not h-invariant") {}
};

// max over basis X of |Lambda(X)_* S|; zero iff the invariant tensor S is
// parallel for the connection with Nomizu map Lambda.
template <class S>
S parallel_residual(const ReductiveModel<S>& model, const NomizuMap<S>& lam, const InvariantTensor<S>& t,
                    const S& tol = scalar_mode<S>::default_tol()) {
    if (!scalar_mode<S>::is_zero(h_invariance_residual(model, t), tol)) throw not_invariant();
    S acc(0);
    for (int i = 0; i < model.dim_m; ++i) acc += tensor_action_abs<S>(lam[i], t);
    return acc;
}

// Derivation-action residual of the curvature tensor (3,1) and torsion (2,1)
// under Lambda(X); both zero is the Ambrose-Singer condition.
template <class S>
std::pair<S, S> ambrose_singer_residuals(const ReductiveModel<S>& model, const NomizuMap<S>& lam,
                                         const S& tol = scalar_mode<S>::default_tol()) {
    auto rep = connection_report(model, lam, tol);
    const int m = model.dim_m;
    S racc(0), tacc(0);
    for (int x = 0; x < m; ++x) {
        const Matrix<S>& a = lam[x];
        // torsion: (A_*T)(X,Y) = A T(X,Y) - T(AX,Y) - T(X,AY)
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                Vector<S> v = a * rep.torsion[i].col(j);
                for (int k = 0; k < m; ++k) {
                    if (!scalar_mode<S>::is_zero(a(k, i), tol)) v -= a(k, i) * rep.torsion[k].col(j);
                    if (!scalar_mode<S>::is_zero(a(k, j), tol)) v -= a(k, j) * rep.torsion[i].col(k);
                }
                tacc += abs_sum<S>(v);
            }
        // curvature: (A_*R)(X,Y) = [A, R(X,Y)] - R(AX,Y) - R(X,AY)
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                Matrix<S> r = curvature_endo(model, lam, i, j);
                Matrix<S> v = a * r - r * a;
                for (int k = 0; k < m; ++k) {
                    if (!scalar_mode<S>::is_zero(a(k, i), tol)) v -= a(k, i) * curvature_endo(model, lam, k, j);
                    if (!scalar_mode<S>::is_zero(a(k, j), tol)) v -= a(k, j) * curvature_endo(model, lam, i, k);
                }
                racc += abs_sum<S>(v);
            }
    }
    return {racc, tacc};
}

struct not_ambrose_singer : std::runtime_error {
    explicit not_ambrose_singer(const std::string& what) : std::runtime_error(what) {}
};

// Transvection algebra hol (+) m with mixed bracket [X,Y] = (-R(X,Y), -T(X,Y)).
// Returns abstract structure constants in the basis (hol basis, m basis).
template <class S>
struct TransvectionAlgebra {
    int dim_hol = 0, dim_m = 0;
    std::vector<Matrix<S>> structure;  // (dim_hol+dim_m) structure matrices
    S jacobi_residual;

    int dim() const { return dim_hol + dim_m; }
};

template <class S>
TransvectionAlgebra<S> transvection(const ReductiveModel<S>& model, const NomizuMap<S>& lam,
                                    const S& tol = scalar_mode<S>::default_tol()) {
    auto [r_res, t_res] = ambrose_singer_residuals(model, lam, tol);
    if (!scalar_mode<S>::is_zero(r_res, tol) || !scalar_mode<S>::is_zero(t_res, tol))
        throw not_ambrose_singer("transvection: connection is not Ambrose-Singer (|nabla R| = " +
                                 std::to_string(to_double(r_res)) + ", |nabla T| = " + std::to_string(to_double(t_res)) + ")");
    auto rep = connection_report(model, lam, tol);
    const auto& hol = rep.holonomy;
    const int dh = hol.dim(), dm = model.dim_m, d = dh + dm;
    Matrix<S> hol_mat = hol.basis_matrix();
    auto hol_coords = [&](const Matrix<S>& x) {
        auto c = hol.coords(x, tol);
        if (!c) throw not_ambrose_singer("transvection: curvature endomorphism escapes holonomy span");
        return *c;
    };
    TransvectionAlgebra<S> out;
    out.dim_hol = dh;
    out.dim_m = dm;
    out.structure.assign(d, Matrix<S>::Zero(d, d));
    auto set_bracket = [&](int i, int j, const Vector<S>& hpart, const Vector<S>& mpart) {
        for (int a = 0; a < dh; ++a) {
            out.structure[a](i, j) = hpart(a);
            out.structure[a](j, i) = -hpart(a);
        }
        for (int k = 0; k < dm; ++k) {
            out.structure[dh + k](i, j) = mpart(k);
            out.structure[dh + k](j, i) = -mpart(k);
        }
    };
    // [hol, hol]
    for (int a = 0; a < dh; ++a)
        for (int b = a + 1; b < dh; ++b) {
            Matrix<S> br = hol.basis[a] * hol.basis[b] - hol.basis[b] * hol.basis[a];
            set_bracket(a, b, hol_coords(br), Vector<S>(Vector<S>::Zero(dm)));
        }
    // [hol, m]: A X
    for (int a = 0; a < dh; ++a)
        for (int k = 0; k < dm; ++k)
            set_bracket(a, dh + k, Vector<S>(Vector<S>::Zero(dh)), Vector<S>(hol.basis[a].col(k)));
    // [m, m] = (-R(X,Y), -T(X,Y))
    for (int i = 0; i < dm; ++i)
        for (int j = i + 1; j < dm; ++j) {
            Matrix<S> r = curvature_endo(model, lam, i, j);
            Vector<S> h = -hol_coords(r);
            Vector<S> t = -rep.torsion[i].col(j);
            set_bracket(dh + i, dh + j, h, t);
        }
    // Jacobi residual of the abstract structure constants
    S acc(0);
    auto ad_of = [&](int a) {
        Matrix<S> m = Matrix<S>::Zero(d, d);
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j) m(k, j) = out.structure[k](a, j);
        return m;
    };
    std::vector<Matrix<S>> ads;
    for (int a = 0; a < d; ++a) ads.push_back(ad_of(a));
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
            Matrix<S> lhs = ads[a] * ads[b] - ads[b] * ads[a];
            Matrix<S> rhs = Matrix<S>::Zero(d, d);
            for (int k = 0; k < d; ++k) rhs += out.structure[k](a, b) * ads[k];
            acc += abs_sum<S>(Matrix<S>(lhs - rhs));
        }
    out.jacobi_residual = acc;
    return out;
}

// Riemannian curvature from the torsion correction:
//   R^g = R^tau + tau^2 + b(tau^2)
// cross-checked against the bracket form R^g(X,Y) = R^tau(X,Y) + [tau_X,tau_Y] - 2 tau_{tau_X Y}.
template <class S>
struct RiemannReport {
    CurvOperator<S> r_tau, r_g;
    Matrix<S> ricci;
    S scal;
    S cross_check_residual;  // the two curvature-difference formulas
    S bianchi_residual;      // b(R^g)
    S einstein_residual;     // |Ric - (scal/n) Id|
};

template <class S>
RiemannReport<S> riemann_from_tau(const ReductiveModel<S>& model, const AltForm<S>& tau,
                                  const S& tol = scalar_mode<S>::default_tol()) {
    const int m = model.dim_m;
    // requires an orthonormal presentation for the AltForm dictionary
    if (!scalar_mode<S>::is_zero(abs_sum<S>(Matrix<S>(model.gram - Matrix<S>::Identity(m, m))), tol))
        throw std::invalid_argument("riemann_from_tau: model must carry an orthonormal frame");
    NomizuMap<S> lam = torsion_nomizu(model, tau, tol);
    auto rep = connection_report(model, lam, tol);
    if (!rep.torsion_form) throw std::invalid_argument("riemann_from_tau: torsion not totally skew");
    RiemannReport<S> out;
    out.r_tau = rep.curvature;
    CurvOperator<S> t2 = tau_squared(tau);
    out.r_g = rep.curvature + t2 + CurvOperator<S>::from_four_form(bianchi(t2));
    // bracket-form cross-check
    S acc(0);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Matrix<S> tx = three_form_endo(tau, Vector<S>(Vector<S>::Unit(m, i)));
            Matrix<S> ty = three_form_endo(tau, Vector<S>(Vector<S>::Unit(m, j)));
            Matrix<S> ttxy = three_form_endo(tau, Vector<S>(tx * Vector<S>::Unit(m, j)));
            Matrix<S> rg_bracket = rep.curvature.skew(i, j) + (tx * ty - ty * tx) - S(2) * ttxy;
            acc += abs_sum<S>(Matrix<S>(out.r_g.skew(i, j) - rg_bracket));
        }
    out.cross_check_residual = acc;
    out.bianchi_residual = bianchi(out.r_g).abs_sum_coeffs();
    out.ricci = ricci_endo(out.r_g);
    out.scal = S(0);
    for (int i = 0; i < m; ++i) out.scal += out.ricci(i, i);
    Matrix<S> eres = out.ricci - (out.scal / S(m)) * Matrix<S>::Identity(m, m);
    out.einstein_residual = abs_sum<S>(eres);
    return out;
}

// Exact least-squares fit R^tau = kappa tau^2 (normal equations); requires tau^2 != 0.
template <class S>
struct KappaFit {
    S kappa;
    S residual;  // sum of |entries| of R^tau - kappa tau^2
};

template <class S>
KappaFit<S> fit_kappa(const ReductiveModel<S>& model, const NomizuMap<S>& lam, const AltForm<S>& tau,
                      const S& tol = scalar_mode<S>::default_tol()) {
    auto rep = connection_report(model, lam, tol);
    CurvOperator<S> t2 = tau_squared(tau);
    S denom(0), numer(0);
    const auto& a = t2.matrix();
    const auto& b = rep.curvature.matrix();
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            denom += a(i, j) * a(i, j);
            numer += a(i, j) * b(i, j);
        }
    if (scalar_mode<S>::is_zero(denom, tol)) throw std::domain_error("fit_kappa: tau^2 = 0");
    KappaFit<S> out;
    out.kappa = numer / denom;
    out.residual = abs_sum<S>(Matrix<S>(b - out.kappa * a));
    return out;
}

}  // namespace skt
