#pragma once

/**
 * @file sequence.hpp
 * @brief Terms s_n = floor(t * alpha^n) of the sequence S_t(alpha), indexed from 1.
 *
 * All computations are exact: with t = p/q and alpha = a/b the n-th term is
 * floor(p * a^n / (q * b^n)). The irrational thresholds that partition the
 * parameter plane (the golden ratio and the cube root of five) are never
 * materialised; they are decided by the sign of alpha^2 - alpha - 1 and
 * alpha^3 - 5.
 */

#include <compare>
#include <cstddef>
#include <vector>

#include "completeness/rational.hpp"

namespace completeness {

inline constexpr std::size_t kDefaultPrefixLength = 64;

/// First N terms of S_t(alpha). terms[0] holds s_1.
struct SeqPrefix {
    Rational t;
    Rational alpha;
    std::vector<BigInt> terms;

    std::size_t size() const { return terms.size(); }
    /// 1-based access, s(1) is the first term.
    const BigInt& s(std::size_t n) const { return terms.at(n - 1); }
    /// s_1 + ... + s_r (0 for r = 0).
    BigInt partial_sum(std::size_t r) const;
};

/// floor(t * alpha^n). Requires t > 0, alpha > 0, n >= 1.
BigInt term(const Rational& t, const Rational& alpha, std::size_t n);

/// s_1..s_N computed incrementally.
SeqPrefix prefix(const Rational& t, const Rational& alpha, std::size_t n = kDefaultPrefixLength);

/// True iff s_n + s_{n+1} <= s_{n+2} for every r < n <= N-2.
bool superincreasing_from(const SeqPrefix& seq, std::size_t r);

/// The index from which s_{n+1} <= 2 s_n is guaranteed for t >= 1 and
/// 1 < alpha < 5^(1/3): 1 below 3/2, 2 below the golden ratio, 3 above.
int doubling_threshold(const Rational& t, const Rational& alpha);

/// Position of alpha relative to the golden ratio. Never returns equal for
/// rational input; an internal consistency failure throws std::logic_error.
std::strong_ordering golden_compare(const Rational& alpha);

/// alpha^2 >= alpha + 1, i.e. alpha >= golden ratio.
bool at_least_golden(const Rational& alpha);

/// Position of alpha^3 relative to 5.
std::strong_ordering cube_compare_five(const Rational& alpha);

}  // namespace completeness
