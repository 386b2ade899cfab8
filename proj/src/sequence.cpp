#include "completeness/sequence.hpp"

#include <stdexcept>
#include <string>

namespace completeness {

namespace {

void require_positive(const Rational& t, const Rational& alpha) {
    if (t.sign() <= 0) throw PreconditionError("t must be positive, got " + t.str());
    if (alpha.sign() <= 0) throw PreconditionError("alpha must be positive, got " + alpha.str());
}

}  // namespace

BigInt SeqPrefix::partial_sum(std::size_t r) const {
    if (r > terms.size()) {
        throw PreconditionError("partial sum beyond prefix length");
    }
    BigInt sum = 0;
    for (std::size_t i = 0; i < r; ++i) sum += terms[i];
    return sum;
}

BigInt term(const Rational& t, const Rational& alpha, std::size_t n) {
    require_positive(t, alpha);
    if (n == 0) throw PreconditionError("sequence indices start at 1");
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), alpha.numerator().get_mpz_t(), n);
    mpz_pow_ui(den.get_mpz_t(), alpha.denominator().get_mpz_t(), n);
    num *= t.numerator();
    den *= t.denominator();
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

SeqPrefix prefix(const Rational& t, const Rational& alpha, std::size_t n) {
    require_positive(t, alpha);
    if (n == 0) throw PreconditionError("prefix length must be at least 1");
    SeqPrefix out{t, alpha, {}};
    out.terms.reserve(n);
    BigInt num = t.numerator();
    BigInt den = t.denominator();
    const BigInt a = alpha.numerator();
    const BigInt b = alpha.denominator();
    BigInt q;
    for (std::size_t i = 1; i <= n; ++i) {
        num *= a;
        den *= b;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        out.terms.push_back(q);
    }
    return out;
}

bool superincreasing_from(const SeqPrefix& seq, std::size_t r) {
    if (seq.size() < r + 3) {
        throw PreconditionError("prefix of length " + std::to_string(seq.size()) +
                                " too short for superincreasing check from r = " + std::to_string(r));
    }
    for (std::size_t n = r + 1; n + 2 <= seq.size(); ++n) {
        if (seq.s(n) + seq.s(n + 1) > seq.s(n + 2)) return false;
    }
    return true;
}

std::strong_ordering golden_compare(const Rational& alpha) {
    if (alpha.sign() <= 0) throw PreconditionError("alpha must be positive");
    const Rational d = alpha * alpha - alpha - Rational(1);
    if (d.sign() == 0) {
        throw std::logic_error("rational alpha " + alpha.str() + " equal to the golden ratio");
    }
    return d.sign() < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

bool at_least_golden(const Rational& alpha) { return golden_compare(alpha) > 0; }

std::strong_ordering cube_compare_five(const Rational& alpha) {
    return alpha.pow(3) <=> Rational(5);
}

int doubling_threshold(const Rational& t, const Rational& alpha) {
    if (t < Rational(1)) throw PreconditionError("doubling threshold requires t >= 1");
    if (alpha <= Rational(1) || cube_compare_five(alpha) >= 0) {
        throw PreconditionError("doubling threshold requires 1 < alpha < 5^(1/3)");
    }
    if (alpha < Rational(3, 2)) return 1;
    if (golden_compare(alpha) < 0) return 2;
    return 3;
}

}  // namespace completeness
