#pragma once

#include "skt/liealg.hpp"

namespace skt {

// The integral G2 three-form on R^7. Its infinitesimal stabilizer in so(7)
// has dimension 14 (asserted in tests, not assumed).
inline AltForm<Rational> g2_three_form() {
    AltForm<Rational> phi(7, 3);
    phi.add({1, 2, 3}, Rational(1));
    phi.add({1, 4, 5}, Rational(1));
    phi.add({1, 6, 7}, Rational(1));
    phi.add({2, 4, 6}, Rational(1));
    phi.add({2, 5, 7}, Rational(-1));
    phi.add({3, 4, 7}, Rational(-1));
    phi.add({3, 5, 6}, Rational(-1));
    return phi;
}

// Re(dz1 ^ dz2 ^ dz3) on R^6 = C^3 in coordinates (x1,y1,x2,y2,x3,y3).
// Stabilizer su(3), dimension 8.
inline AltForm<Rational> su3_real_volume() {
    AltForm<Rational> psi(6, 3);
    psi.add({1, 3, 5}, Rational(1));
    psi.add({1, 4, 6}, Rational(-1));
    psi.add({2, 3, 6}, Rational(-1));
    psi.add({2, 4, 5}, Rational(-1));
    return psi;
}

// The standard complex structure paired with su3_real_volume: x_k -> y_k.
inline QMatrix standard_complex_structure(int n) {
    QMatrix j = QMatrix::Zero(n, n);
    for (int k = 0; k + 1 < n; k += 2) {
        j(k + 1, k) = Rational(1);
        j(k, k + 1) = Rational(-1);
    }
    return j;
}

// Subalgebra of stab(g2 form) annihilating e_i (1-based); for any nonzero
// vector this is a copy of su(3), dimension 8.
inline LieSubalgebra<Rational> g2_vector_stabilizer(int i /*1-based*/) {
    auto g2 = stabilizer(g2_three_form());
    QMatrix eval(7, g2.dim());
    for (int a = 0; a < g2.dim(); ++a) eval.col(a) = g2.basis[a].col(i - 1);
    QMatrix coeffs = kernel(eval);
    std::vector<QMatrix> basis;
    for (int c = 0; c < coeffs.cols(); ++c) {
        QMatrix m = QMatrix::Zero(7, 7);
        for (int a = 0; a < g2.dim(); ++a) m += coeffs(a, c) * g2.basis[a];
        basis.push_back(m);
    }
    return span_close<Rational>(7, basis);
}

}  // namespace skt
