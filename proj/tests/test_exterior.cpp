#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skt/exterior.hpp"

using namespace skt;

namespace {

AltForm<Rational> e(int n, MultiIndex idx) { return AltForm<Rational>::basis(n, std::move(idx)); }

QVector unit(int n, int i /*1-based*/) {
    QVector v = QVector::Zero(n);
    v(i - 1) = Rational(1);
    return v;
}

}  // namespace

TEST_CASE("wedge on basis forms") {
    auto w = wedge(e(3, {1, 2}), e(3, {3}));
    CHECK(w == e(3, {1, 2, 3}));
    // anticommutation sign
    auto w2 = wedge(e(3, {3}), e(3, {1, 2}));
    CHECK(w2 == e(3, {1, 2, 3}));
    auto w3 = wedge(e(3, {2}), e(3, {1}));
    CHECK(w3.coeff({1, 2}) == Rational(-1));
}

TEST_CASE("wedge: omega ^ omega on R^4") {
    // brute-force oracle: expand the shuffle sum by evaluating on the full tuple
    AltForm<Rational> omega = e(4, {1, 2}) + e(4, {3, 4});
    auto w = wedge(omega, omega);
    // oracle: (omega^omega)(X1..X4) = sum over 2|2 shuffles with signs
    int perm[4] = {0, 1, 2, 3};
    Rational oracle(0);
    std::vector<std::array<int, 4>> shuffles;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            std::array<int, 4> sh{a, b, 0, 0};
            int pos = 2;
            for (int c = 0; c < 4; ++c)
                if (c != a && c != b) sh[pos++] = c;
            shuffles.push_back(sh);
        }
    for (auto& sh : shuffles) {
        int inv = 0;
        for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y)
                if (sh[x] > sh[y]) ++inv;
        Rational term = omega.coeff({perm[sh[0]] + 1, perm[sh[1]] + 1}) * omega.coeff({perm[sh[2]] + 1, perm[sh[3]] + 1});
        oracle += (inv % 2 ? -term : term);
    }
    CHECK(w.coeff({1, 2, 3, 4}) == oracle);
    CHECK(w.coeff({1, 2, 3, 4}) == Rational(2));
    CHECK(w == Rational(2) * e(4, {1, 2, 3, 4}));
}

TEST_CASE("wedge degree overflow is zero") {
    auto w = wedge(e(3, {1, 2}), e(3, {2, 3}));
    CHECK(w.degree() == 4);
    CHECK(w.is_zero());
}

TEST_CASE("wedge errors") {
    CHECK_THROWS(wedge(e(3, {1}), e(4, {1})));
}

TEST_CASE("interior product") {
    CHECK(interior(1, e(3, {1, 2, 3})) == e(3, {2, 3}));
    CHECK(interior(2, e(3, {1, 2, 3})).coeff({1, 3}) == Rational(-1));
    // X . (X . a) = 0
    RationalRng rng(7);
    for (int t = 0; t < 20; ++t) {
        QVector x = rng.vector(5);
        AltForm<Rational> a(5, 3);
        for (auto& idx : multi_indices(5, 3)) a.add(idx, rng.small());
        CHECK(interior(x, interior(x, a)).is_zero());
    }
    // zero vector contracts to zero
    CHECK(interior(QVector(QVector::Zero(3)), e(3, {1, 2})).is_zero());
    CHECK_THROWS(interior(1, AltForm<Rational>(3, 0)));
}

TEST_CASE("form_endo dictionary") {
    auto m = form_endo(e(3, {1, 2}));
    CHECK(m(1, 0) == Rational(1));   // e1 -> e2
    CHECK(m(0, 1) == Rational(-1));  // e2 -> -e1
    CHECK(m(2, 2) == Rational(0));
    CHECK(form_endo(AltForm<Rational>(4, 2)) == QMatrix::Zero(4, 4));
    CHECK_THROWS(form_endo(e(3, {1, 2, 3})));
    // round trip over random skew matrices
    RationalRng rng(11);
    for (int t = 0; t < 30; ++t) {
        QMatrix a = rng.skew(6);
        CHECK(form_endo(endo_form(a)) == a);
    }
}

TEST_CASE("derivation action") {
    // Eq-style commutator oracle for 2-forms
    auto a12 = e(3, {1, 2});
    auto a23 = e(3, {2, 3});
    auto act = derivation_action(form_endo(a12), a23);
    QMatrix oracle = form_endo(a12) * form_endo(a23) - form_endo(a23) * form_endo(a12);
    CHECK(form_endo(act) == oracle);
    CHECK(act == endo_form(oracle));
    // e3 ^ e1 expected
    CHECK(act.coeff({1, 3}) == Rational(-1));

    // zero endo acts as zero
    CHECK(derivation_action(QMatrix(QMatrix::Zero(3, 3)), a23).is_zero());

    // vol3 is so(3)-invariant
    RationalRng rng(3);
    for (int t = 0; t < 10; ++t) CHECK(derivation_action(rng.skew(3), volume_form<Rational>(3)).is_zero());

    // Leibniz rule for random A, alpha, beta (exact)
    RationalRng rng2(5);
    for (int t = 0; t < 200; ++t) {
        QMatrix a = rng2.matrix(4, 4);
        AltForm<Rational> alpha(4, 1), beta(4, 2);
        for (auto& idx : multi_indices(4, 1)) alpha.add(idx, rng2.small());
        for (auto& idx : multi_indices(4, 2)) beta.add(idx, rng2.small());
        auto lhs = derivation_action(a, wedge(alpha, beta));
        auto rhs = wedge(derivation_action(a, alpha), beta) + wedge(alpha, derivation_action(a, beta));
        CHECK(lhs == rhs);
    }

    // commutator law on 200 random rational pairs of 2-forms
    RationalRng rng3(9);
    for (int t = 0; t < 200; ++t) {
        QMatrix x = rng3.skew(5), y = rng3.skew(5);
        auto lhs = derivation_action(x, endo_form(y));
        CHECK(form_endo(lhs) == QMatrix(x * y - y * x));
    }
}

TEST_CASE("hodge star") {
    CHECK(hodge_star(e(3, {1})) == e(3, {2, 3}));
    CHECK(hodge_star(e(3, {2})).coeff({1, 3}) == Rational(-1));
    // double application sign law for all 0<=k<=n<=7
    RationalRng rng(13);
    for (int n = 1; n <= 7; ++n)
        for (int k = 0; k <= n; ++k) {
            AltForm<Rational> a(n, k);
            for (auto& idx : multi_indices(n, k)) a.add(idx, rng.small());
            auto ss = hodge_star(hodge_star(a));
            int sgn = ((k * (n - k)) % 2 == 0) ? 1 : -1;
            CHECK(ss == Rational(sgn) * a);
        }
}

TEST_CASE("tau_squared") {
    // tau = t vol3 gives constant-curvature type: tau^2(X,Y) endo = -t^2 X^Y
    Rational t(3, 2);
    auto tau = t * volume_form<Rational>(3);
    auto t2 = tau_squared(tau);
    CHECK(t2.symmetry_residual().is_zero());
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            QMatrix expect = QMatrix::Zero(3, 3);
            expect(j, i) = -t * t;
            expect(i, j) = t * t;
            CHECK(t2.skew(i, j) == expect);
        }
    CHECK(tau_squared(AltForm<Rational>(5, 3)).matrix() == QMatrix::Zero(10, 10));
    CHECK_THROWS(tau_squared(e(4, {1, 2})));

    // (tau_X)_* tau = X . b(tau^2)
    RationalRng rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        AltForm<Rational> tt(5, 3);
        for (auto& idx : multi_indices(5, 3)) tt.add(idx, rng.small());
        auto b = bianchi(tau_squared(tt));
        for (int i = 1; i <= 5; ++i) {
            auto lhs = derivation_action(form_endo(interior(i, tt)), tt);
            auto rhs = interior(i, b);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("bianchi map") {
    // n = 3: Lambda^4 = 0
    RationalRng rng(17);
    CurvOperator<Rational> r3(3, rng.matrix(3, 3) + rng.matrix(3, 3).transpose());
    CHECK(bianchi(r3).is_zero());

    // constant curvature R = Id on Lambda^2 R^n satisfies first Bianchi
    for (int n = 4; n <= 6; ++n) CHECK(bianchi(CurvOperator<Rational>::identity(n)).is_zero());

    // R = omega (x) omega for omega = e12 + e34: brute-force cyclic sum oracle
    AltForm<Rational> omega = e(4, {1, 2}) + e(4, {3, 4});
    auto r = CurvOperator<Rational>::sym_product(omega, omega);
    r *= Rational(1, 2);  // omega (x) omega exactly
    auto b = bianchi(r);
    Rational oracle = r.value(0, 1, 2, 3) + r.value(1, 2, 0, 3) + r.value(2, 0, 1, 3);
    CHECK(b.coeff({1, 2, 3, 4}) == oracle);
    CHECK_FALSE(b.is_zero());
    CHECK(b.coeff({1, 2, 3, 4}) == Rational(1));

    // projection to Lambda^4 is b/3: idempotence of b/3 on its image
    RationalRng rng2(19);
    for (int t = 0; t < 10; ++t) {
        QMatrix m = rng2.matrix(pair_count(5), pair_count(5));
        CurvOperator<Rational> rr(5, QMatrix(m + m.transpose()));
        auto eta = bianchi(rr);
        auto again = bianchi(CurvOperator<Rational>::from_four_form(eta));
        CHECK(again == Rational(3) * eta);
    }

    // surjectivity onto Lambda^4 for the full space: rank of b on Sym^2 Lambda^2
    {
        int n = 4;
        auto pairs = multi_indices(n, 2);
        int np = static_cast<int>(pairs.size());
        std::vector<QVector> cols;
        for (int p = 0; p < np; ++p)
            for (int q = p; q < np; ++q) {
                CurvOperator<Rational> basis_op(n);
                basis_op.matrix()(p, q) = Rational(1);
                basis_op.matrix()(q, p) = Rational(1);
                cols.push_back(form_to_vector(bianchi(basis_op)));
            }
        QMatrix m(cols[0].size(), static_cast<int>(cols.size()));
        for (size_t c = 0; c < cols.size(); ++c) m.col(static_cast<int>(c)) = cols[c];
        CHECK(rank(m) == 1);  // dim Lambda^4 R^4
    }
}

TEST_CASE("ricci of constant curvature") {
    // R(X,Y) = -t^2 X^Y corresponds to the round metric of sectional curvature t^2
    Rational t(2);
    auto tau = t * volume_form<Rational>(3);
    // flat torsion connection: R^g = -t^2 Id on Lambda^2
    CurvOperator<Rational> rg = Rational(-t * t) * CurvOperator<Rational>::identity(3);
    QMatrix ric = ricci_endo(rg);
    CHECK(ric == QMatrix(Rational(2) * t * t * QMatrix::Identity(3, 3)));
    CHECK(scalar_curvature(rg) == Rational(6) * t * t);
}

TEST_CASE("norm conventions") {
    auto tau = volume_form<Rational>(3);
    CHECK(tau.norm2_lambda() == Rational(1));
    CHECK(tau_norm2_contraction(tau) == Rational(3));
    auto a = e(4, {1, 2});
    CHECK(lambda2_inner(form_endo(a), form_endo(a)) == Rational(1));
    CHECK(endo_norm2(form_endo(a)) == Rational(2));
}
