#include "completeness/rational.hpp"

#include <cctype>
#include <ostream>

namespace completeness {

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) {
        throw PreconditionError("rational with zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);

    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) {
        throw ParseError("empty rational '" + std::string(text) + "'");
    }

    Rational out;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = s.substr(0, slash);
        const auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw ParseError("malformed rational '" + std::string(text) + "'");
        }
        const BigInt d{std::string(den)};
        if (d == 0) {
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        }
        out = Rational(BigInt(std::string(num)), d);
    } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto whole = s.substr(0, dot);
        const auto frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac))) {
            throw ParseError("malformed decimal '" + std::string(text) + "'");
        }
        BigInt scale = 1;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        const BigInt w = whole.empty() ? BigInt(0) : BigInt(std::string(whole));
        const BigInt f = frac.empty() ? BigInt(0) : BigInt(std::string(frac));
        out = Rational(BigInt(w * scale + f), scale);
    } else {
        if (!all_digits(s)) {
            throw ParseError("malformed rational '" + std::string(text) + "'");
        }
        out = Rational(BigInt(std::string(s)));
    }
    return negative ? -out : out;
}

BigInt Rational::floor() const {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
}

BigInt Rational::ceil() const {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
}

Rational Rational::pow(unsigned long exponent) const {
    BigInt n;
    BigInt d;
    mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), exponent);
    mpq_class q(n, d);  // already coprime
    return Rational(std::move(q));
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.sign() == 0) {
        throw PreconditionError("division by zero");
    }
    value_ /= rhs.value_;
    return *this;
}

std::string Rational::str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

BigInt ceil_sqrt(const Rational& x) {
    if (x.sign() < 0) {
        throw PreconditionError("ceil_sqrt of a negative value");
    }
    // isqrt(ceil(x)) is within one of the answer; settle it exactly.
    BigInt w;
    const BigInt c = x.ceil();
    mpz_sqrt(w.get_mpz_t(), c.get_mpz_t());
    while (Rational(BigInt(w * w)) < x) ++w;
    while (w > 0 && Rational(BigInt((w - 1) * (w - 1))) >= x) --w;
    return w;
}

std::uint64_t to_u64(const BigInt& v) {
    if (v < 0 || !mpz_fits_ulong_p(v.get_mpz_t())) {
        throw std::overflow_error("integer " + v.get_str() + " does not fit in 64 bits");
    }
    return v.get_ui();
}

}  // namespace completeness
