#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skt/forms_catalog.hpp"
#include "skt/liealg.hpp"
#include "skt/repdecomp.hpp"

using namespace skt;

namespace {

AltForm<Rational> e(int n, MultiIndex idx) { return AltForm<Rational>::basis(n, std::move(idx)); }

}  // namespace

TEST_CASE("span_close basics") {
    auto one = span_close<Rational>(3, {form_endo(e(3, {1, 2}))});
    CHECK(one.dim() == 1);
    CHECK(one.closure_residual().is_zero());

    auto so3 = span_close<Rational>(3, {form_endo(e(3, {1, 2})), form_endo(e(3, {2, 3}))});
    CHECK(so3.dim() == 3);
    CHECK(so3.closure_residual().is_zero());

    auto zero = span_close<Rational>(4, {});
    CHECK(zero.dim() == 0);

    QMatrix notskew = QMatrix::Zero(3, 3);
    notskew(0, 0) = Rational(1);
    CHECK_THROWS(span_close<Rational>(3, {notskew}));
}

TEST_CASE("stabilizer dimensions") {
    auto s_vol = stabilizer(volume_form<Rational>(3));
    CHECK(s_vol.dim() == 3);

    auto s_g2 = stabilizer(g2_three_form());
    CHECK(s_g2.dim() == 14);
    CHECK(s_g2.closure_residual().is_zero());

    auto s_su3 = stabilizer(su3_real_volume());
    CHECK(s_su3.dim() == 8);
    CHECK(s_su3.closure_residual().is_zero());

    // scaling leaves the stabilizer unchanged
    auto s_scaled = stabilizer(Rational(7, 3) * g2_three_form());
    CHECK(s_scaled.dim() == 14);

    // direct-sum law instance: vol3 (+) vol3 on R^6 -> so(3)+so(3), dim 6
    AltForm<Rational> two_vols(6, 3);
    two_vols.add({1, 2, 3}, Rational(1));
    two_vols.add({4, 5, 6}, Rational(1));
    CHECK(stabilizer(two_vols).dim() == 6);
}

TEST_CASE("commutant") {
    auto so4 = so_algebra<Rational>(4);
    auto c = commutant(so4);
    CHECK(c.symmetric.size() == 1);  // Schur, real type
    CHECK(c.full_dim == 1);

    auto su3 = stabilizer(su3_real_volume());
    auto c3 = commutant(su3);
    CHECK(c3.full_dim == 2);  // complex type: Id and J
    CHECK(c3.symmetric.size() == 1);
    CHECK(c3.skew.size() == 1);
    // the skew part squares to a negative multiple of the identity
    QMatrix j = c3.skew[0];
    QMatrix j2 = j * j;
    CHECK(detail::is_scalar_matrix(j2));
    CHECK(j2(0, 0) < Rational(0));

    LieSubalgebra<Rational> zero;
    zero.n = 3;
    auto cz = commutant(zero);
    CHECK(cz.full_dim == 9);
}

TEST_CASE("casimir") {
    for (int n = 3; n <= 8; ++n) {
        QMatrix cas = casimir_so<Rational>(n);
        CHECK(cas == QMatrix(Rational(n - 1) * QMatrix::Identity(n, n)));
    }
    // general version agrees on so(n) and commutes with the representation
    for (int n = 3; n <= 5; ++n) {
        auto so_n = so_algebra<Rational>(n);
        QMatrix cas = casimir(so_n);
        CHECK(cas == QMatrix(Rational(n - 1) * QMatrix::Identity(n, n)));
        for (const auto& b : so_n.basis) CHECK(abs_sum<Rational>(QMatrix(cas * b - b * cas)).is_zero());
    }
    // su(3) acting on R^6: Casimir commutes with everything
    auto su3 = stabilizer(su3_real_volume());
    QMatrix cas = casimir(su3);
    for (const auto& b : su3.basis) CHECK(abs_sum<Rational>(QMatrix(cas * b - b * cas)).is_zero());

    LieSubalgebra<Rational> zero;
    zero.n = 4;
    CHECK(casimir(zero) == QMatrix::Zero(4, 4));
}

TEST_CASE("killing form") {
    // su(2) (as so(3)): negative definite
    auto so3 = so_algebra<Rational>(3);
    auto rep = killing(so3);
    CHECK(rep.negative_definite);
    CHECK(rep.nondegenerate);

    // abelian: zero form
    auto ab = span_close<Rational>(4, {form_endo(e(4, {1, 2}))});
    auto rep2 = killing(ab);
    CHECK(rep2.sig.zero == 1);
    CHECK(abs_sum<Rational>(rep2.gram).is_zero());

    // g2: compact semisimple
    auto g2 = stabilizer(g2_three_form());
    auto rep3 = killing(g2);
    CHECK(rep3.negative_definite);
}

TEST_CASE("invariant vectors") {
    LieSubalgebra<Rational> zero;
    zero.n = 5;
    CHECK(invariant_vectors(zero).cols() == 5);

    auto so3 = so_algebra<Rational>(3);
    CHECK(invariant_vectors(so3).cols() == 0);

    // stab_{g2}(e7) = su(3) has a 1-dim invariant subspace in R^7
    auto su3_in_so7 = g2_vector_stabilizer(7);
    CHECK(su3_in_so7.dim() == 8);
    QMatrix inv = invariant_vectors(su3_in_so7);
    CHECK(inv.cols() == 1);
    CHECK(inv(6, 0) != Rational(0));
    for (int i = 0; i < 6; ++i) CHECK(inv(i, 0).is_zero());
}

TEST_CASE("curvature spaces") {
    // K(so(3)) on R^3 is all of Sym^2 so(3), dim 6
    auto so3 = so_algebra<Rational>(3);
    CHECK(curvature_space(so3).dim == 6);

    // K(so(4)) on R^4 = full curvature space, dim n^2(n^2-1)/12 = 20
    auto so4 = so_algebra<Rational>(4);
    CHECK(curvature_space(so4).dim == 20);

    // every K(h) element satisfies the first Bianchi identity
    auto ks = curvature_space(so4);
    for (const auto& r : ks.basis) CHECK(bianchi(r).is_zero());
}

TEST_CASE("decompose") {
    // zero algebra on R^4: four 1-dim summands
    LieSubalgebra<Rational> zero;
    zero.n = 4;
    auto dec = decompose(zero, 0);
    CHECK(dec.blocks.size() == 4);
    for (auto& b : dec.blocks) CHECK(b.dim() == 1);
    CHECK(dec.isotypic_classes == 1);  // all trivial lines are equivalent

    // so(3) on R^3 irreducible
    auto so3 = so_algebra<Rational>(3);
    auto d3 = decompose(so3, 1);
    CHECK(d3.blocks.size() == 1);
    CHECK(d3.blocks[0].irreducible);

    // so(3) block inside so(5): R^3 + two trivial lines
    std::vector<QMatrix> gens;
    for (auto idx : {MultiIndex{1, 2}, MultiIndex{1, 3}, MultiIndex{2, 3}}) {
        gens.push_back(form_endo(e(5, idx)));
    }
    auto so3_in_5 = span_close<Rational>(5, gens);
    auto d5 = decompose(so3_in_5, 2);
    CHECK(d5.blocks.size() == 3);
    CHECK(d5.blocks[0].dim() == 1);
    CHECK(d5.blocks[1].dim() == 1);
    CHECK(d5.blocks[2].dim() == 3);
    CHECK(d5.blocks[0].isotypic_class == d5.blocks[1].isotypic_class);
    CHECK(d5.blocks[2].isotypic_class != d5.blocks[0].isotypic_class);

    // diagonal so(3) acting on R^3 (+) R^3: two equivalent 3-dim summands
    std::vector<QMatrix> diag_gens;
    for (auto idx : {MultiIndex{1, 2}, MultiIndex{1, 3}, MultiIndex{2, 3}}) {
        QMatrix l3 = form_endo(e(3, idx));
        QMatrix m = QMatrix::Zero(6, 6);
        m.block(0, 0, 3, 3) = l3;
        m.block(3, 3, 3, 3) = l3;
        diag_gens.push_back(m);
    }
    auto diag = span_close<Rational>(6, diag_gens);
    auto dd = decompose(diag, 3);
    CHECK(dd.blocks.size() == 2);
    CHECK(dd.blocks[0].dim() == 3);
    CHECK(dd.blocks[1].dim() == 3);
    CHECK(dd.isotypic_classes == 1);

    // isotypic projector sums agree exactly across 5 seeds
    QMatrix id6 = QMatrix::Identity(6, 6);
    QMatrix p0 = decompose(diag, 10).isotypic_projector(0, id6);
    for (unsigned long seed : {11ul, 12ul, 13ul, 14ul}) {
        QMatrix p = decompose(diag, seed).isotypic_projector(0, id6);
        CHECK(p == p0);
    }

    // su(3) in so(7) decomposes R^7 = R (+) R^6
    auto su3_in_7 = g2_vector_stabilizer(7);
    auto d7 = decompose(su3_in_7, 4);
    CHECK(d7.blocks.size() == 2);
    CHECK(d7.blocks[0].dim() == 1);
    CHECK(d7.blocks[1].dim() == 6);
    CHECK(d7.blocks[1].irreducible);
}

TEST_CASE("split_ideals on so(3)+so(3)") {
    std::vector<QMatrix> basis;
    for (auto idx : {MultiIndex{1, 2}, MultiIndex{1, 3}, MultiIndex{2, 3}}) basis.push_back(form_endo(e(3, idx)));
    std::vector<QMatrix> twisted;
    for (int a = 0; a < 3; ++a) {
        QMatrix m = QMatrix::Zero(6, 6);
        m.block(0, 0, 3, 3) = basis[a];
        twisted.push_back(m);
        QMatrix m2 = QMatrix::Zero(6, 6);
        m2.block(3, 3, 3, 3) = basis[a];
        twisted.push_back(m2);
    }
    // mix the basis so the ideals are not coordinate-aligned
    std::vector<QMatrix> mixed;
    for (int a = 0; a < 3; ++a) {
        mixed.push_back(twisted[2 * a] + twisted[2 * a + 1]);
        mixed.push_back(twisted[2 * a] - twisted[2 * a + 1]);
    }
    auto g = make_subalgebra<Rational>(6, mixed);
    auto ideals = split_ideals(g.structure, 0);
    CHECK(ideals.blocks.size() == 2);
    CHECK(ideals.blocks[0].dim() == 3);
    CHECK(ideals.blocks[1].dim() == 3);
}
