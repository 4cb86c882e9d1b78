#include "orbitstrata/scalar.hpp"

#include <cmath>

namespace orbitstrata {

Scalar::Scalar(Rational a, Rational b, unsigned d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d_ == 1) { // sqrt(1) = 1
        a_ += b_;
        b_ = 0;
        d_ = 0;
    }
    if (d_ == 0) b_ = 0; // sqrt(0) = 0
    if (b_ == 0) d_ = 0;
}

unsigned Scalar::merged_field(const Scalar& x, const Scalar& y) {
    if (x.d_ == y.d_) return x.d_;
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0) return x.d_;
    throw Error(Error::Kind::MixedField,
                "scalars live in different fields: sqrt(" + std::to_string(x.d_) + ") vs sqrt(" +
                    std::to_string(y.d_) + ")");
}

int Scalar::sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: sign of a + b*sqrt(D) equals sa * sign(a^2 - D b^2)
    const Rational c = a_ * a_ - Rational(d_) * b_ * b_;
    return sa * c.sign();
}

Scalar operator+(const Scalar& x, const Scalar& y) {
    const unsigned d = Scalar::merged_field(x, y);
    return Scalar(x.a_ + y.a_, x.b_ + y.b_, d);
}

Scalar operator-(const Scalar& x, const Scalar& y) {
    const unsigned d = Scalar::merged_field(x, y);
    return Scalar(x.a_ - y.a_, x.b_ - y.b_, d);
}

Scalar operator*(const Scalar& x, const Scalar& y) {
    const unsigned d = Scalar::merged_field(x, y);
    return Scalar(x.a_ * y.a_ + Rational(d) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error(Error::Kind::DivisionByZero, "inverse of zero scalar");
    // (a + b sqrt(D))^-1 = (a - b sqrt(D)) / (a^2 - D b^2)
    const Rational n = a_ * a_ - Rational(d_) * b_ * b_;
    return Scalar(a_ / n, -b_ / n, d_);
}

Scalar operator/(const Scalar& x, const Scalar& y) {
    Scalar::merged_field(x, y); // field check before the zero check, for a clear error
    return x * y.inverse();
}

int Scalar::cmp(const Scalar& x, const Scalar& y) {
    if (x.a_ < y.a_) return -1;
    if (y.a_ < x.a_) return 1;
    if (x.b_ < y.b_) return -1;
    if (y.b_ < x.b_) return 1;
    if (x.d_ < y.d_) return -1;
    if (y.d_ < x.d_) return 1;
    return 0;
}

double Scalar::to_double() const {
    double v = a_.convert_to<double>();
    if (b_ != 0) v += b_.convert_to<double>() * std::sqrt(static_cast<double>(d_));
    return v;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return Rational(0);
    const BigInt num = numerator(q);
    const BigInt den = denominator(q);
    const BigInt rn = sqrt(num);
    const BigInt rd = sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
}

std::optional<Scalar> field_sqrt(const Scalar& s, unsigned ambient_d) {
    if (s.is_zero()) return Scalar(0);
    if (s.sign() < 0) return std::nullopt;
    if (s.field() != 0 && ambient_d != 0 && s.field() != ambient_d) return std::nullopt;
    const unsigned d = s.field() != 0 ? s.field() : ambient_d;

    if (s.is_rational()) {
        if (auto r = rational_sqrt(s.rational_part())) return Scalar(*r);
        if (d != 0) {
            // try b*sqrt(D) with b^2 = a/D
            if (auto b = rational_sqrt(s.rational_part() / Rational(d)))
                return Scalar(Rational(0), *b, d);
        }
        return std::nullopt;
    }

    // Solve (x + y sqrt(D))^2 = a + b sqrt(D): x^2 + D y^2 = a, 2xy = b.
    // Then x^2 = (a +- t)/2 with t = sqrt(a^2 - D b^2), which must be rational.
    const Rational a = s.rational_part();
    const Rational b = s.radical_part();
    const Rational disc = a * a - Rational(d) * b * b;
    const auto t = rational_sqrt(disc);
    if (!t) return std::nullopt;
    for (const Rational& u : {Rational((a + *t) / 2), Rational((a - *t) / 2)}) {
        if (u <= 0) continue;
        if (auto x = rational_sqrt(u)) {
            const Rational y = b / (2 * *x);
            Scalar root(*x, y, d);
            if (root * root == s) return root.sign() >= 0 ? root : -root;
        }
    }
    return std::nullopt;
}

} // namespace orbitstrata
