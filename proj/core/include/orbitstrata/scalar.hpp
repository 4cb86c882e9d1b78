#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "orbitstrata/errors.hpp"

namespace orbitstrata {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact element a + b*sqrt(D) of the real quadratic field Q(sqrt(D)).
///
/// D is a square-free non-negative integer chosen once per problem; D == 0
/// marks a pure rational. Normalization keeps the invariant b == 0 => D == 0,
/// so pure rationals coming from any field compare equal componentwise.
/// Rationals are stored gcd-reduced with positive denominator (cpp_rational
/// canonical form).
class Scalar {
public:
    Scalar() : d_(0) {}
    Scalar(long v) : a_(v), d_(0) {}
    explicit Scalar(Rational a) : a_(std::move(a)), d_(0) {}
    Scalar(Rational a, Rational b, unsigned d);

    /// The element 0 + 1*sqrt(d).
    static Scalar sqrt_d(unsigned d) { return Scalar(Rational(0), Rational(1), d); }
    static Scalar ratio(long num, long den) { return Scalar(Rational(num, den)); }

    const Rational& rational_part() const { return a_; }
    const Rational& radical_part() const { return b_; }
    unsigned field() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    /// Exact sign of the real number a + b*sqrt(D): -1, 0, or +1.
    int sign() const;

    Scalar operator-() const { return Scalar(-a_, -b_, d_); }
    Scalar inverse() const;

    friend Scalar operator+(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x, const Scalar& y);
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    friend Scalar operator/(const Scalar& x, const Scalar& y);

    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    /// Structural total order (not numeric): for deterministic containers.
    static int cmp(const Scalar& x, const Scalar& y);

    double to_double() const;

private:
    Rational a_;
    Rational b_;
    unsigned d_;

    static unsigned merged_field(const Scalar& x, const Scalar& y);
};

/// Exact square root within Q(sqrt(D)) if it exists there.
/// `ambient_d` supplies the field when `s` itself is pure rational.
std::optional<Scalar> field_sqrt(const Scalar& s, unsigned ambient_d);

/// Exact square root of a non-negative rational, if the result is rational.
std::optional<Rational> rational_sqrt(const Rational& q);

} // namespace orbitstrata
