#include "completeness/sumset.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "completeness/rational.hpp"

namespace completeness {

SumsetBitset::SumsetBitset(std::uint64_t bound) : bound_(bound), words_((bound >> 6) + 1, 0) {}

void SumsetBitset::add(std::uint64_t v) {
    if (v == 0) throw PreconditionError("subset-sum values must be positive");
    if (v > bound_) return;
    const std::size_t n = words_.size();
    const std::size_t word_shift = v >> 6;
    const unsigned bit_shift = static_cast<unsigned>(v & 63);
    // Descending so every read sees the pre-update bitmap.
    for (std::size_t i = n; i-- > word_shift;) {
        const std::size_t src = i - word_shift;
        std::uint64_t shifted = words_[src] << bit_shift;
        if (bit_shift != 0 && src > 0) shifted |= words_[src - 1] >> (64 - bit_shift);
        words_[i] |= shifted;
    }
    words_[word_shift] |= std::uint64_t{1} << bit_shift;
    const unsigned tail = static_cast<unsigned>((bound_ + 1) & 63);
    if (tail != 0) words_.back() &= (std::uint64_t{1} << tail) - 1;
    words_[0] &= ~std::uint64_t{1};
}

std::uint64_t SumsetBitset::count() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

std::vector<std::uint64_t> SumsetBitset::members() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = next_set(0); m <= bound_; m = next_set(m + 1)) out.push_back(m);
    return out;
}

std::uint64_t SumsetBitset::next_set(std::uint64_t from) const {
    if (from > bound_) return bound_ + 1;
    std::size_t i = from >> 6;
    std::uint64_t w = words_[i] & (~std::uint64_t{0} << (from & 63));
    while (w == 0) {
        if (++i == words_.size()) return bound_ + 1;
        w = words_[i];
    }
    const std::uint64_t m = (static_cast<std::uint64_t>(i) << 6) + static_cast<unsigned>(std::countr_zero(w));
    return m <= bound_ ? m : bound_ + 1;
}

std::uint64_t SumsetBitset::next_clear(std::uint64_t from) const {
    if (from > bound_) return bound_ + 1;
    std::size_t i = from >> 6;
    std::uint64_t w = ~words_[i] & (~std::uint64_t{0} << (from & 63));
    while (w == 0) {
        if (++i == words_.size()) return bound_ + 1;
        w = ~words_[i];
    }
    const std::uint64_t m = (static_cast<std::uint64_t>(i) << 6) + static_cast<unsigned>(std::countr_zero(w));
    return m <= bound_ ? m : bound_ + 1;
}

SumsetBitset subset_sums(std::span<const std::uint64_t> values, std::uint64_t bound) {
    if (bound == 0) throw PreconditionError("subset-sum bound must be at least 1");
    SumsetBitset bits(bound);
    for (auto v : values) bits.add(v);
    return bits;
}

SumsetBitset subset_sums(std::span<const std::uint64_t> values) {
    const std::uint64_t total = std::accumulate(values.begin(), values.end(), std::uint64_t{0});
    return subset_sums(values, total + 1);
}

std::set<std::uint64_t> naive_subset_sums(std::span<const std::uint64_t> values) {
    if (values.size() > kNaiveSubsetLimit) {
        throw PreconditionError("naive subset sums limited to " + std::to_string(kNaiveSubsetLimit) +
                                " values, got " + std::to_string(values.size()));
    }
    // Gray-code walk: consecutive subsets differ in one element.
    const std::uint64_t total = std::accumulate(values.begin(), values.end(), std::uint64_t{0});
    std::vector<char> seen(total + 1, 0);
    const std::uint64_t subsets = std::uint64_t{1} << values.size();
    std::uint64_t sum = 0;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(k));
        if (((k ^ (k >> 1)) >> bit) & 1U) {
            sum += values[bit];
        } else {
            sum -= values[bit];
        }
        seen[sum] = 1;
    }
    std::set<std::uint64_t> out;
    for (std::uint64_t m = 1; m <= total; ++m) {
        if (seen[m] != 0) out.insert(out.end(), m);
    }
    return out;
}

std::optional<std::uint64_t> find_run(const SumsetBitset& bits, std::uint64_t length,
                                      std::uint64_t limit) {
    if (length == 0) throw PreconditionError("run length must be positive");
    std::uint64_t x = bits.next_set(1);
    while (x <= limit && x <= bits.bound()) {
        const std::uint64_t end = bits.next_clear(x);  // first gap after x
        if (end - x >= length) return x;
        x = bits.next_set(end);
    }
    return std::nullopt;
}

}  // namespace completeness
