#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "fairdiv/errors.hpp"

namespace fairdiv {

/// Exact arbitrary-precision rational. All fairness decisions in this
/// toolkit compare utilities through this type; there is no floating point
/// anywhere on a decision path. Values are kept canonical (gcd-reduced,
/// positive denominator).
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long long n) : q_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
    Rational(long long num, long long den);

    /// Parses "p", "-p" or "p/q" with decimal integer parts. Anything else
    /// (floats, exponents, whitespace) is a usage_error: instance files must
    /// be exact.
    static Rational parse(const std::string& text);

    /// "p" when the denominator is 1, "p/q" otherwise; always canonical.
    std::string str() const;

    Rational operator+(const Rational& o) const { return Rational(q_ + o.q_); }
    Rational operator-(const Rational& o) const { return Rational(q_ - o.q_); }
    Rational operator*(const Rational& o) const { return Rational(q_ * o.q_); }
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }
    bool operator<(const Rational& o) const { return q_ < o.q_; }
    bool operator<=(const Rational& o) const { return q_ <= o.q_; }
    bool operator>(const Rational& o) const { return q_ > o.q_; }
    bool operator>=(const Rational& o) const { return q_ >= o.q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_negative() const { return sgn(q_) < 0; }
    bool is_positive() const { return sgn(q_) > 0; }
    int sign() const { return sgn(q_); }

    std::string numerator_str() const { return q_.get_num().get_str(); }
    std::string denominator_str() const { return q_.get_den().get_str(); }

    /// Exact n-choose-k as a Rational (denominator 1).
    static Rational binomial(unsigned long n, unsigned long k);

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace fairdiv
