#pragma once

/**
 * @file sumset.hpp
 * @brief P(S), the set of sums of distinct elements, as a bitmap.
 *
 * The empty sum is excluded: bit 0 is never set. Repeated values in the
 * input are distinct elements (distinct sequence positions), so {3, 3}
 * yields {3, 6}.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace completeness {

class SumsetBitset {
public:
    SumsetBitset() = default;
    explicit SumsetBitset(std::uint64_t bound);

    std::uint64_t bound() const { return bound_; }

    bool test(std::uint64_t m) const {
        return m <= bound_ && ((words_[m >> 6] >> (m & 63)) & 1U) != 0;
    }

    /// Adds one element: bits |= (bits << v) | {v}.
    void add(std::uint64_t v);

    std::uint64_t count() const;
    std::vector<std::uint64_t> members() const;

    /// First index >= from whose bit is clear, or bound()+1.
    std::uint64_t next_clear(std::uint64_t from) const;
    /// First index >= from whose bit is set, or bound()+1.
    std::uint64_t next_set(std::uint64_t from) const;

private:
    std::uint64_t bound_ = 0;
    std::vector<std::uint64_t> words_;
};

/// P(values) intersected with [1, bound].
SumsetBitset subset_sums(std::span<const std::uint64_t> values, std::uint64_t bound);

/// P(values) with bound 1 + sum(values).
SumsetBitset subset_sums(std::span<const std::uint64_t> values);

inline constexpr std::size_t kNaiveSubsetLimit = 20;

/// P(values) by enumerating all non-empty subsets. At most 20 values.
std::set<std::uint64_t> naive_subset_sums(std::span<const std::uint64_t> values);

/// Smallest X <= limit with [X, X + length) all set, if any.
std::optional<std::uint64_t> find_run(const SumsetBitset& bits, std::uint64_t length,
                                      std::uint64_t limit);

}  // namespace completeness
