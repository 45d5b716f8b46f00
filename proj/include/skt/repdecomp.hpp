#pragma once

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "skt/liealg.hpp"

namespace skt {

struct indeterminate_split : std::runtime_error {
    indeterminate_split() : std::runtime_error("indeterminate split") {}
};

template <class S>
bool equivalent_reps(const std::vector<Matrix<S>>& xs, const std::vector<Matrix<S>>& ys,
                     const S& tol = scalar_mode<S>::default_tol());

template <class S>
struct SubRep {
    Matrix<S> basis;  // ambient columns
    bool invariant = true;
    bool irreducible = false;
    bool orthonormal = false;
    int sym_commutant_dim = -1;
    int full_commutant_dim = -1;
    int isotypic_class = -1;

    int dim() const { return static_cast<int>(basis.cols()); }
};

template <class S>
struct RepDecomposition {
    int ambient = 0;
    std::vector<SubRep<S>> blocks;
    int isotypic_classes = 0;

    // Projector onto the sum of all blocks in an isotypic class (w.r.t. the
    // splitting form); independent of the per-block basis choice.
    Matrix<S> isotypic_projector(int cls, const Matrix<S>& form) const {
        Matrix<S> p = Matrix<S>::Zero(ambient, ambient);
        for (const auto& b : blocks) {
            if (b.isotypic_class != cls) continue;
            Matrix<S> gram = b.basis.transpose() * form * b.basis;
            p += b.basis * inverse(gram) * b.basis.transpose() * form;
        }
        return p;
    }
};

namespace detail {

// Restrict operators to an invariant subspace: ops[a] * B = B * X[a].
template <class S>
std::vector<Matrix<S>> restrict_ops(const std::vector<Matrix<S>>& ops, const Matrix<S>& basis,
                                    const S& tol = scalar_mode<S>::default_tol()) {
    std::vector<Matrix<S>> out;
    for (const auto& op : ops) {
        auto x = solve_matrix<S>(basis, Matrix<S>(op * basis), tol);
        if (!x) throw std::domain_error("restrict_ops: subspace not invariant");
        out.push_back(*x);
    }
    return out;
}

// T commuting with all ops and self-adjoint w.r.t. gram.
template <class S>
std::vector<Matrix<S>> sym_commutant(const std::vector<Matrix<S>>& ops, const Matrix<S>& gram,
                                     const S& tol = scalar_mode<S>::default_tol()) {
    const int d = static_cast<int>(gram.rows());
    const int rows = static_cast<int>(ops.size()) * d * d + d * d;
    Matrix<S> sys = Matrix<S>::Zero(rows, d * d);
    int r0 = 0;
    for (const auto& op : ops) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                int row = r0 + i * d + j;
                for (int k = 0; k < d; ++k) {
                    sys(row, i * d + k) += op(k, j);
                    sys(row, k * d + j) -= op(i, k);
                }
            }
        r0 += d * d;
    }
    // gram * T - T^T * gram = 0
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            int row = r0 + i * d + j;
            for (int k = 0; k < d; ++k) {
                sys(row, k * d + j) += gram(i, k);
                sys(row, k * d + i) -= gram(k, j);
            }
        }
    Matrix<S> k = kernel(sys, tol);
    std::vector<Matrix<S>> out;
    for (int c = 0; c < k.cols(); ++c) out.push_back(unvec_matrix(d, d, Vector<S>(k.col(c))));
    return out;
}

template <class S>
bool is_scalar_matrix(const Matrix<S>& t, const S& tol = scalar_mode<S>::default_tol()) {
    Matrix<S> diff = t - t(0, 0) * Matrix<S>::Identity(t.rows(), t.cols());
    return scalar_mode<S>::is_zero(abs_sum<S>(diff), tol);
}

// Try to split W (in local d-coords) by eigenspaces of self-adjoint commutant
// elements with rational eigenvalues. Returns a proper invariant subspace.
inline std::optional<QMatrix> eigen_split(const std::vector<QMatrix>& comm, RationalRng& rng) {
    auto attempt = [](const QMatrix& t) -> std::optional<QMatrix> {
        if (is_scalar_matrix(t)) return std::nullopt;
        auto roots = rational_roots(charpoly(t));
        for (const auto& lam : roots) {
            QMatrix shifted = t - lam * QMatrix::Identity(t.rows(), t.cols());
            QMatrix e = kernel(shifted);
            if (e.cols() > 0 && e.cols() < t.cols()) return e;
        }
        return std::nullopt;
    };
    for (const auto& t : comm) {
        auto e = attempt(t);
        if (e) return e;
    }
    for (int trial = 0; trial < 40; ++trial) {
        QMatrix t = QMatrix::Zero(comm[0].rows(), comm[0].cols());
        for (const auto& c : comm) t += rng.small(4, 2) * c;
        auto e = attempt(t);
        if (e) return e;
    }
    return std::nullopt;
}

inline std::optional<DMatrix> eigen_split(const std::vector<DMatrix>& comm, RationalRng& rng) {
    // float mode: cluster eigenvalues of a generic symmetric element
    const double tol = 1e-7;
    for (int trial = 0; trial < 20; ++trial) {
        DMatrix t = DMatrix::Zero(comm[0].rows(), comm[0].cols());
        for (const auto& c : comm) t += rng.small(4, 2).to_double() * c;
        DMatrix ts = (t + t.transpose()) / 2.0;
        Eigen::SelfAdjointEigenSolver<DMatrix> es(ts);
        auto vals = es.eigenvalues();
        // cluster
        int d = static_cast<int>(vals.size());
        std::vector<int> cls(d, -1);
        int nc = 0;
        for (int i = 0; i < d; ++i) {
            if (cls[i] >= 0) continue;
            cls[i] = nc;
            for (int j = i + 1; j < d; ++j) {
                double gap = std::abs(vals[j] - vals[i]);
                if (gap < tol) cls[j] = nc;
                else if (gap < 1e-4)
                    throw indeterminate_split();  // ambiguous clustering, refuse to guess
            }
            ++nc;
        }
        if (nc < 2) continue;
        DMatrix e(d, std::count(cls.begin(), cls.end(), 0));
        int c = 0;
        for (int i = 0; i < d; ++i)
            if (cls[i] == 0) e.col(c++) = es.eigenvectors().col(i);
        return e;
    }
    return std::nullopt;
}

// Smallest invariant subspace containing v (local coordinates).
template <class S>
Matrix<S> cyclic_subspace(const std::vector<Matrix<S>>& ops, const Vector<S>& v,
                          const S& tol = scalar_mode<S>::default_tol()) {
    const int d = static_cast<int>(v.size());
    SpanTracker<S> span(d);
    std::vector<Vector<S>> vecs;
    if (span.add(v, tol)) vecs.push_back(v);
    size_t lo = 0;
    while (lo < vecs.size()) {
        size_t hi = vecs.size();
        for (size_t i = lo; i < hi; ++i)
            for (const auto& op : ops) {
                Vector<S> w = op * vecs[i];
                if (span.add(w, tol)) vecs.push_back(w);
            }
        lo = hi;
    }
    Matrix<S> out(d, static_cast<int>(vecs.size()));
    for (size_t i = 0; i < vecs.size(); ++i) out.col(static_cast<int>(i)) = vecs[i];
    return out;
}

}  // namespace detail

// Orthogonal decomposition of the representation generated by `ops` on the
// space with invariant SPD form `form`, into invariant irreducible summands.
// Irreducibility certificate: self-adjoint commutant is scalar. All splits are
// exact; when no exact split of a reducible block is found the routine throws
// indeterminate_split rather than guessing.
template <class S>
RepDecomposition<S> decompose_with_form(int n, const std::vector<Matrix<S>>& ops, const Matrix<S>& form,
                                        unsigned long seed, const S& tol = scalar_mode<S>::default_tol()) {
    RationalRng rng(seed * 0x9e3779b97f4a7c15ULL + 12345);
    RepDecomposition<S> out;
    out.ambient = n;
    std::vector<Matrix<S>> work;
    work.push_back(Matrix<S>::Identity(n, n));
    while (!work.empty()) {
        Matrix<S> basis = work.back();
        work.pop_back();
        const int d = static_cast<int>(basis.cols());
        auto rops = detail::restrict_ops(ops, basis, tol);
        Matrix<S> gram = basis.transpose() * form * basis;
        auto comm = detail::sym_commutant(rops, gram, tol);
        if (comm.size() == 1) {
            SubRep<S> blk;
            blk.basis = basis;
            blk.irreducible = true;
            blk.sym_commutant_dim = 1;
            out.blocks.push_back(std::move(blk));
            continue;
        }
        // find a proper invariant subspace in local coordinates
        std::optional<Matrix<S>> e = detail::eigen_split(comm, rng);
        if (!e) {
            // cyclic subspaces from coordinate and seeded vectors
            Matrix<S> best;
            int best_dim = d;
            for (int t = 0; t < d + 20 && best_dim > 1; ++t) {
                Vector<S> v;
                if (t < d) {
                    v = Vector<S>::Zero(d);
                    v(t) = S(1);
                } else {
                    v = vector_cast<S>(rng.vector(d, 3, 2));
                }
                if (scalar_mode<S>::is_zero(abs_sum<S>(v), tol)) continue;
                Matrix<S> z = detail::cyclic_subspace(rops, v, tol);
                if (z.cols() < best_dim) {
                    best = z;
                    best_dim = static_cast<int>(z.cols());
                }
            }
            if (best_dim < d) e = best;
        }
        if (!e) throw indeterminate_split();
        // complement w.r.t. gram
        Matrix<S> comp = kernel(Matrix<S>(e->transpose() * gram), tol);
        if (e->cols() + comp.cols() != d) throw indeterminate_split();
        work.push_back(Matrix<S>(basis * (*e)));
        work.push_back(Matrix<S>(basis * comp));
    }
    // canonical order: by dim, then by lexicographic comparison of the
    // reduced column space (deterministic given the split tree)
    for (auto& blk : out.blocks) {
        blk.basis = column_space_basis(blk.basis, tol);
        auto rops = detail::restrict_ops(ops, blk.basis, tol);
        Matrix<S> gram = blk.basis.transpose() * form * blk.basis;
        blk.sym_commutant_dim = static_cast<int>(detail::sym_commutant(rops, gram, tol).size());
        blk.irreducible = (blk.sym_commutant_dim == 1);
        blk.full_commutant_dim = commutant<S>(static_cast<int>(blk.basis.cols()), rops, tol).full_dim;
        // opportunistic orthonormalization (rational search in exact mode)
        if constexpr (scalar_mode<S>::exact) {
            auto t = rational_orthonormalize(gram);
            if (t) {
                blk.basis = blk.basis * (*t);
                blk.orthonormal = true;
            }
        } else {
            Eigen::HouseholderQR<Matrix<S>> qr(blk.basis);
            Matrix<S> q = qr.householderQ() * Matrix<S>::Identity(n, static_cast<int>(blk.basis.cols()));
            blk.basis = q;
            blk.orthonormal = true;
        }
    }
    std::sort(out.blocks.begin(), out.blocks.end(), [&](const SubRep<S>& a, const SubRep<S>& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        // compare reduced row-echelon shape of basis columns for determinism
        for (int j = 0; j < a.dim(); ++j)
            for (int i = 0; i < a.basis.rows(); ++i) {
                bool za = scalar_mode<S>::is_zero(a.basis(i, j), tol);
                bool zb = scalar_mode<S>::is_zero(b.basis(i, j), tol);
                if (za != zb) return zb;
            }
        return false;
    });
    // isotypic grouping by intertwiner existence
    int nc = 0;
    for (size_t i = 0; i < out.blocks.size(); ++i) {
        if (out.blocks[i].isotypic_class >= 0) continue;
        out.blocks[i].isotypic_class = nc;
        auto ri = detail::restrict_ops(ops, out.blocks[i].basis, tol);
        for (size_t j = i + 1; j < out.blocks.size(); ++j) {
            if (out.blocks[j].isotypic_class >= 0 || out.blocks[j].dim() != out.blocks[i].dim()) continue;
            auto rj = detail::restrict_ops(ops, out.blocks[j].basis, tol);
            if (equivalent_reps<S>(ri, rj, tol)) out.blocks[j].isotypic_class = nc;
        }
        ++nc;
    }
    out.isotypic_classes = nc;
    return out;
}

// Existence of a nonzero intertwiner T with X_a T = T Y_a for all a.
template <class S>
bool equivalent_reps(const std::vector<Matrix<S>>& xs, const std::vector<Matrix<S>>& ys, const S& tol) {
    const int p = static_cast<int>(xs.empty() ? 0 : xs[0].rows());
    const int q = static_cast<int>(ys.empty() ? 0 : ys[0].rows());
    if (xs.empty()) return p == q;  // zero algebra: any equal-dim spaces equivalent
    const int rows = static_cast<int>(xs.size()) * p * q;
    Matrix<S> sys = Matrix<S>::Zero(rows, p * q);
    for (size_t a = 0; a < xs.size(); ++a)
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < q; ++j) {
                int row = static_cast<int>(a) * p * q + i * q + j;
                for (int k = 0; k < p; ++k) sys(row, k * q + j) += xs[a](i, k);
                for (int k = 0; k < q; ++k) sys(row, i * q + k) -= ys[a](k, j);
            }
    return kernel(sys, tol).cols() > 0;
}

template <class S>
RepDecomposition<S> decompose(const LieSubalgebra<S>& g, unsigned long seed,
                              const S& tol = scalar_mode<S>::default_tol()) {
    return decompose_with_form<S>(g.n, g.basis, Matrix<S>(Matrix<S>::Identity(g.n, g.n)), seed, tol);
}

// Minimal ideals of an algebra given by structure constants, via the adjoint
// representation with complements taken w.r.t. -Killing (requires negative
// definite Killing form, i.e. a compact semisimple algebra).
template <class S>
RepDecomposition<S> split_ideals(const std::vector<Matrix<S>>& structure, unsigned long seed,
                                 const S& tol = scalar_mode<S>::default_tol()) {
    const int d = static_cast<int>(structure.size());
    auto rep = killing_from_structure(structure, tol);
    if (!rep.negative_definite) throw std::domain_error("split_ideals: Killing form not negative definite");
    std::vector<Matrix<S>> ad(d, Matrix<S>::Zero(d, d));
    for (int a = 0; a < d; ++a)
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j) ad[a](k, j) = structure[k](a, j);
    return decompose_with_form<S>(d, ad, Matrix<S>(-rep.gram), seed, tol);
}

}  // namespace skt
