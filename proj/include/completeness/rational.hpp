#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational numbers over arbitrary-precision integers.
 *
 * Every parameter (t, alpha), every corner of a parameter rectangle and every
 * comparison in this library goes through Rational. Values are always kept in
 * lowest terms with a positive denominator, so equality is structural and the
 * canonical text form "p/q" is unique.
 */

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace completeness {

using BigInt = mpz_class;

/// Raised when a caller violates a documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when text cannot be parsed into a value.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Rational {
public:
    Rational() : value_(0) {}
    Rational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : value_(n) {}   // NOLINT(google-explicit-constructor)
    explicit Rational(const BigInt& n) : value_(n) {}
    Rational(const BigInt& num, const BigInt& den);
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    /// Parses "p/q", "-p/q", "p" or an exact decimal such as "1.35" or "-.5".
    static Rational parse(std::string_view text);

    BigInt numerator() const { return value_.get_num(); }
    BigInt denominator() const { return value_.get_den(); }

    int sign() const { return sgn(value_); }
    bool is_integer() const { return value_.get_den() == 1; }

    /// Largest integer <= this.
    BigInt floor() const;
    /// Smallest integer >= this.
    BigInt ceil() const;

    /// this^exponent for a non-negative exponent.
    Rational pow(unsigned long exponent) const;

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Canonical "p/q" in lowest terms (integers print as "p/1").
    std::string str() const;

    /// Nearest double, for plotting coordinates only.
    double approx() const { return value_.get_d(); }

    const mpq_class& raw() const { return value_; }

private:
    explicit Rational(mpq_class v) : value_(std::move(v)) {}
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Least integer w >= 0 with w*w >= x, for x >= 0. Exact ceil(sqrt(x)).
BigInt ceil_sqrt(const Rational& x);

/// Converts an integer that is known to fit; throws std::overflow_error otherwise.
std::uint64_t to_u64(const BigInt& v);

}  // namespace completeness
