#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "completeness/rational.hpp"
#include "completeness/region.hpp"

namespace completeness::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen{0x5eed1234ULL};
    return gen;
}

inline long uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

// Random rational in [lo, hi] with denominator up to max_den.
inline Rational uniform_rational(const Rational& lo, const Rational& hi, long max_den = 1000) {
    const long den = uniform_int(1, max_den);
    const Rational frac(uniform_int(0, den), den);
    return lo + (hi - lo) * frac;
}

inline Rational interior_point(const Rational& lo, const Rational& hi) {
    return uniform_rational(lo, hi, 1L << 20);
}

// Independent reference for P(S): set-based doubling.
inline std::set<std::uint64_t> reference_sums(const std::vector<std::uint64_t>& values) {
    std::set<std::uint64_t> sums{0};
    for (const auto v : values) {
        std::vector<std::uint64_t> add;
        for (const auto s : sums) add.push_back(s + v);
        sums.insert(add.begin(), add.end());
    }
    sums.erase(0);
    return sums;
}

}  // namespace completeness::testing
