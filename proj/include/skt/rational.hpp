#pragma once

#include <gmpxx.h>
#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace skt {

// Arbitrary-precision rational. Thin value wrapper around mpq_class so that
// all operators return plain values (no GMP expression templates), which is
// what Eigen expects from a custom scalar.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(long long n) : v_(static_cast<long>(n)) {}
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    static Rational from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: bad literal '" + s + "'");
        q.canonicalize();
        return Rational(q);
    }

    const mpq_class& raw() const { return v_; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+() const { return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    bool is_integer() const { return v_.get_den() == 1; }

    double to_double() const { return v_.get_d(); }
    std::string str() const { return v_.get_str(); }
    std::string num_str() const { return v_.get_num().get_str(); }
    std::string den_str() const { return v_.get_den().get_str(); }

    std::optional<std::pair<std::int64_t, std::int64_t>> to_int64_pair() const {
        if (!v_.get_num().fits_slong_p() || !v_.get_den().fits_slong_p()) return std::nullopt;
        return std::make_pair(static_cast<std::int64_t>(v_.get_num().get_si()),
                              static_cast<std::int64_t>(v_.get_den().get_si()));
    }

    // Exact square root if the value is a perfect square of a rational.
    std::optional<Rational> sqrt_exact() const {
        if (sign() < 0) return std::nullopt;
        mpz_class n = v_.get_num(), d = v_.get_den();
        if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
            mpz_class rn, rd;
            mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
            mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
            return Rational(mpq_class(rn, rd));
        }
        return std::nullopt;
    }

private:
    mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

inline Rational abs(const Rational& r) { return r.abs(); }
inline const Rational& conj(const Rational& r) { return r; }
inline const Rational& real(const Rational& r) { return r; }
inline Rational imag(const Rational&) { return Rational(0); }
inline Rational abs2(const Rational& r) { return r * r; }

// Scalar-mode tag. Every container in the library is templated on its scalar,
// so the type itself carries the mode: Rational = exact, double = float.
template <class S> struct scalar_mode;

template <> struct scalar_mode<Rational> {
    static constexpr bool exact = true;
    static const char* name() { return "exact"; }
    static bool is_zero(const Rational& x, const Rational& = Rational(0)) { return x.is_zero(); }
    static Rational default_tol() { return Rational(0); }
};

template <> struct scalar_mode<double> {
    static constexpr bool exact = false;
    static const char* name() { return "float"; }
    static bool is_zero(double x, double tol = 1e-9) { return std::abs(x) <= tol; }
    static double default_tol() { return 1e-9; }
};

template <class S> S scalar_from_rational(const Rational& q);
template <> inline Rational scalar_from_rational<Rational>(const Rational& q) { return q; }
template <> inline double scalar_from_rational<double>(const Rational& q) { return q.to_double(); }

inline double to_double(const Rational& q) { return q.to_double(); }
inline double to_double(double x) { return x; }

}  // namespace skt

namespace Eigen {

template <> struct NumTraits<skt::Rational> : GenericNumTraits<skt::Rational> {
    typedef skt::Rational Real;
    typedef skt::Rational NonInteger;
    typedef skt::Rational Nested;
    typedef skt::Rational Literal;

    static inline Real epsilon() { return skt::Rational(0); }
    static inline Real dummy_precision() { return skt::Rational(0); }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 60,
        MulCost = 60
    };
};

}  // namespace Eigen
