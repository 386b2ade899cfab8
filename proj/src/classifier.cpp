#include "completeness/classifier.hpp"

#include <stdexcept>

#include "completeness/sumset.hpp"

namespace completeness {

namespace {

const Rational kOne(1);
const Rational kTwo(2);

// Brute-force bitmaps above this many bits are refused.
constexpr std::uint64_t kMaxBruteForceBound = std::uint64_t{1} << 34;

constexpr std::uint64_t kInitialRunCapacity = 1024;

// Terms searched for a run inside the proven regions, where alpha can be close to 1.
constexpr std::size_t kRegionRunTerms = std::size_t{1} << 15;

std::vector<std::uint64_t> positive_values(std::span<const BigInt> terms) {
    std::vector<std::uint64_t> out;
    out.reserve(terms.size());
    for (const auto& v : terms) {
        if (v > 0) out.push_back(to_u64(v));
    }
    return out;
}

// Least n >= 1 with t alpha^n (2 - alpha) > 2, for 1 < alpha < 2.
std::size_t doubling_onset(const Rational& t, const Rational& alpha) {
    const Rational slack = kTwo - alpha;
    Rational value = t * alpha;
    std::size_t n = 1;
    while (value * slack <= kTwo) {
        value *= alpha;
        ++n;
    }
    return n;
}

bool prefix_condition_holds(const SeqPrefix& seq, std::size_t r) {
    BigInt sum = 0;
    for (std::size_t n = 0; n <= r; ++n) {
        if (seq.s(n + 1) > sum + 1) return false;
        sum += seq.s(n + 1);
    }
    return true;
}

DoublingCert make_doubling_cert(const Rational& t, const Rational& alpha) {
    std::size_t r = 0;
    if (alpha == kTwo) {
        // t = 2^-k: terms double exactly from index k on.
        const BigInt den = t.denominator();
        r = mpz_sizeinbase(den.get_mpz_t(), 2) - 2;
    } else if (alpha > kOne) {
        r = doubling_onset(t, alpha) - 1;
    }
    const SeqPrefix seq = prefix(t, alpha, r + 1);
    return DoublingCert{r, prefix_condition_holds(seq, r)};
}

Classification not_complete_from_gap(const Rational& t, const Rational& alpha, Provenance p) {
    const auto gap = corollary_witness(t, alpha);
    if (!gap) {
        throw std::logic_error("no gap witness found for t=" + t.str() + " alpha=" + alpha.str());
    }
    auto chain = folkman_chain(t, alpha, gap->m, gap->r, kClassifierChainLength);
    return {Verdict::NotComplete, FolkmanChain{gap->m, gap->r, std::move(chain)}, p};
}

Provenance band_of(const Rational& alpha) {
    if (alpha < Rational(3, 2)) return Provenance::OneToThreeHalves;
    if (golden_compare(alpha) < 0) return Provenance::ThreeHalvesToGolden;
    return Provenance::GoldenToCubeRootFive;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::EntirelyComplete: return "EntirelyComplete";
        case Verdict::CompleteNotEntirely: return "CompleteNotEntirely";
        case Verdict::NotComplete: return "NotComplete";
        case Verdict::Unknown: return "Unknown";
        case Verdict::KnownExternally: return "KnownExternally";
    }
    return "?";
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::AlphaBelowOne: return "alpha-below-one";
        case Provenance::AlphaEqualsOne: return "alpha-equals-one";
        case Provenance::AlphaAboveTwo: return "alpha-above-two";
        case Provenance::AlphaEqualsTwo: return "alpha-equals-two";
        case Provenance::CubeRootFiveToTwo: return "cuberoot5-to-two";
        case Provenance::GoldenToCubeRootFive: return "golden-to-cuberoot5";
        case Provenance::ThreeHalvesToGolden: return "three-halves-to-golden";
        case Provenance::OneToThreeHalves: return "one-to-three-halves";
        case Provenance::SmallAlphaRun: return "small-alpha-run";
        case Provenance::ConsecutiveBlock: return "consecutive-block";
        case Provenance::TilingCertificate: return "tiling-certificate";
        case Provenance::ExternalCharacterization: return "external-characterization";
        case Provenance::Undecided: return "undecided";
    }
    return "?";
}

bool CertifiedCells::contains(const Rational& t, const Rational& alpha) const {
    for (const auto& r : rects) {
        if (r.contains(t, alpha)) return true;
    }
    return false;
}

Rational entire_frontier(const Rational& alpha) {
    if (alpha.sign() <= 0) throw PreconditionError("alpha must be positive");
    return min(min(kTwo / alpha, Rational(3) / alpha.pow(2)), Rational(5) / alpha.pow(3));
}

Classification classify(const Rational& t, const Rational& alpha, const CertifiedCells* cells) {
    if (t.sign() <= 0 || alpha.sign() <= 0) {
        throw PreconditionError("classify requires t > 0 and alpha > 0");
    }

    if (alpha < kOne) return {Verdict::NotComplete, std::monostate{}, Provenance::AlphaBelowOne};

    if (alpha == kOne) {
        if (kOne <= t && t < kTwo) {
            return {Verdict::EntirelyComplete, DoublingCert{0, true}, Provenance::AlphaEqualsOne};
        }
        return {Verdict::NotComplete, std::monostate{}, Provenance::AlphaEqualsOne};
    }

    if (alpha > kTwo) {
        const auto g = alpha_gt2_witness(t, alpha);
        return {Verdict::NotComplete, GapWitness{g.value, g.n}, Provenance::AlphaAboveTwo};
    }

    if (alpha == kTwo) {
        if (is_inverse_power_of_two(t)) {
            return {Verdict::EntirelyComplete, make_doubling_cert(t, alpha), Provenance::AlphaEqualsTwo};
        }
        if (t >= kOne) return {Verdict::NotComplete, GapWitness{1, 0}, Provenance::AlphaEqualsTwo};
        return {Verdict::NotComplete, dyadic_deviation_witness(t), Provenance::AlphaEqualsTwo};
    }

    if (cube_compare_five(alpha) <= 0) {
        const Provenance band = band_of(alpha);
        if (t < entire_frontier(alpha)) {
            return {Verdict::EntirelyComplete, make_doubling_cert(t, alpha), band};
        }
        if (at_least_golden(alpha)) return not_complete_from_gap(t, alpha, band);

        // Below the golden ratio and past the frontier: only proven sub-regions.
        if (alpha <= Rational(5, 4) && t * alpha < Rational(4)) {
            if (auto run = find_run_cert(t, alpha, kRegionRunTerms)) {
                return {Verdict::CompleteNotEntirely, *run, Provenance::SmallAlphaRun};
            }
            throw std::logic_error("no run certificate inside the small-alpha region at t=" + t.str() +
                                   " alpha=" + alpha.str());
        }
        if (auto block = block_cert(t, alpha)) {
            return {Verdict::CompleteNotEntirely, *block, Provenance::ConsecutiveBlock};
        }
        if (cells != nullptr && cells->contains(t, alpha)) {
            if (auto run = find_run_cert(t, alpha, kRegionRunTerms)) {
                return {Verdict::CompleteNotEntirely, *run, Provenance::TilingCertificate};
            }
            throw std::logic_error("no run certificate inside a verified certificate cell at t=" + t.str() +
                                   " alpha=" + alpha.str());
        }
        return {Verdict::Unknown, std::monostate{}, Provenance::Undecided};
    }

    // 5^(1/3) < alpha < 2.
    if (t >= kOne) return not_complete_from_gap(t, alpha, Provenance::CubeRootFiveToTwo);
    return {Verdict::KnownExternally,
            ExternalRef{"5^(1/3) < alpha < 2 with t < 1: Graham (1964) characterization"},
            Provenance::ExternalCharacterization};
}

std::optional<GapWitness> corollary_witness(const Rational& t, const Rational& alpha, std::size_t n) {
    if (!at_least_golden(alpha)) {
        throw PreconditionError("gap witnesses require alpha >= golden ratio, got " + alpha.str());
    }
    const SeqPrefix seq = prefix(t, alpha, n + 1);
    BigInt sum = 0;
    for (std::size_t r = 0; r <= n; ++r) {
        if (sum + 1 < seq.s(r + 1)) return GapWitness{sum + 1, r};
        sum += seq.s(r + 1);
    }
    return std::nullopt;
}

bool is_representable(const Rational& t, const Rational& alpha, const BigInt& v) {
    if (alpha <= kOne) throw PreconditionError("brute-force representability needs alpha > 1");
    if (v <= 0) return false;
    const std::uint64_t bound = to_u64(v);
    if (bound > kMaxBruteForceBound) {
        throw std::overflow_error("brute-force bound " + v.get_str() + " too large");
    }
    SumsetBitset bits(bound);
    BigInt num = t.numerator();
    BigInt den = t.denominator();
    BigInt s;
    for (;;) {
        num *= alpha.numerator();
        den *= alpha.denominator();
        mpz_fdiv_q(s.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (s > v) break;
        if (s > 0) bits.add(s.get_ui());
        if (bits.test(bound)) return true;
    }
    return bits.test(bound);
}

std::vector<BigInt> folkman_chain(const Rational& t, const Rational& alpha, const BigInt& m,
                                  std::size_t r, std::size_t k) {
    if (k == 0) throw PreconditionError("chain length must be at least 1");
    if (m < 1) throw HypothesisError("m must be a positive integer");
    const SeqPrefix seq = prefix(t, alpha, r + 2 * k + 2);
    if (!(seq.partial_sum(r) < m)) {
        throw HypothesisError("s_1 + ... + s_r < m fails: sum is " + seq.partial_sum(r).get_str());
    }
    if (!(m < seq.s(r + 2))) {
        throw HypothesisError("m < s_{r+2} fails: s_{r+2} = " + seq.s(r + 2).get_str());
    }
    if (!superincreasing_from(seq, r)) {
        throw HypothesisError("s_n + s_{n+1} <= s_{n+2} fails for some n > r");
    }
    if (is_representable(t, alpha, m)) {
        throw HypothesisError("m = " + m.get_str() + " is a sum of distinct terms");
    }
    std::vector<BigInt> chain;
    BigInt value = m;
    for (std::size_t j = 1; j <= k; ++j) {
        value += seq.s(r + 2 * j + 1);
        if (is_representable(t, alpha, value)) {
            throw std::logic_error("chain value " + value.get_str() + " is representable");
        }
        chain.push_back(value);
    }
    return chain;
}

GrowthWitness alpha_gt2_witness(const Rational& t, const Rational& alpha) {
    if (t.sign() <= 0) throw PreconditionError("t must be positive");
    if (alpha <= kTwo) throw PreconditionError("growth witness requires alpha > 2");
    const Rational lhs_factor = alpha - kTwo;
    const Rational rhs = kTwo * alpha - kTwo;
    Rational power = t * alpha.pow(2);  // t alpha^(n+1) at n = 1
    std::size_t n = 1;
    while (power * lhs_factor <= rhs) {
        power *= alpha;
        ++n;
    }
    return {n, term(t, alpha, n + 1) - 1};
}

bool is_inverse_power_of_two(const Rational& t) {
    const BigInt den = t.denominator();
    return t.numerator() == 1 && den > 1 && mpz_popcount(den.get_mpz_t()) == 1;
}

GapWitness dyadic_deviation_witness(const Rational& t) {
    if (t.sign() <= 0 || t >= kOne) throw PreconditionError("dyadic witness requires 0 < t < 1");
    if (is_inverse_power_of_two(t)) {
        throw PreconditionError("t = " + t.str() + " is a power 2^-k; the sequence is complete");
    }
    const Rational alpha(2);
    std::size_t n = 1;
    while (term(t, alpha, n) < 1) ++n;
    BigInt expected = 1;
    for (std::size_t j = 1;; ++j) {
        expected *= 2;
        if (term(t, alpha, n + j) != expected) return GapWitness{expected, n + j - 1};
    }
}

std::optional<RunCert> find_run_cert(const Rational& t, const Rational& alpha, std::size_t n) {
    if (t.sign() <= 0 || alpha.sign() <= 0) throw PreconditionError("t and alpha must be positive");
    constexpr std::uint64_t kSumCap = std::uint64_t{1} << 31;
    std::vector<std::uint64_t> values;
    std::uint64_t total = 0;
    SumsetBitset bits(kInitialRunCapacity);
    Rational scaled = t * alpha;  // t alpha^r
    BigInt current = scaled.floor();
    for (std::size_t r = 1; r < n; ++r) {
        scaled *= alpha;
        const BigInt next = scaled.floor();
        if (current > 0) {
            if (BigInt(total) + current + next > BigInt(kSumCap)) break;
            values.push_back(current.get_ui());
            total += current.get_ui();
            if (total + 1 > bits.bound()) {
                bits = subset_sums(values, std::max(2 * bits.bound(), total + 1));
            } else {
                bits.add(values.back());
            }
            const std::uint64_t length = next.get_ui();
            if (length != 0 && length <= total) {
                if (auto x = find_run(bits, length, total - length + 1)) return RunCert{r, *x};
            }
        }
        current = next;
    }
    return std::nullopt;
}

std::optional<BlockCert> block_cert(const Rational& t, const Rational& alpha) {
    if (t < kOne || alpha <= kOne) return std::nullopt;
    const BigInt v = t.ceil();
    const BigInt w = ceil_sqrt(t);
    const BigInt top = v + 2 * w;
    if (alpha > kOne + Rational(BigInt(1), top)) return std::nullopt;
    std::size_t r = 0;
    for (std::size_t n = 1;; ++n) {
        const BigInt s = term(t, alpha, n);
        if (s == top) r = n;
        if (s > top) break;
    }
    if (r == 0) return std::nullopt;
    return BlockCert{v, w, v * w + w * (w - 1) / 2, r};
}

namespace {

bool check_gap(const Rational& t, const Rational& alpha, const BigInt& m, std::size_t r) {
    if (!at_least_golden(alpha)) return false;
    const SeqPrefix seq = prefix(t, alpha, r + 1);
    return seq.partial_sum(r) < m && m < seq.s(r + 1) && !is_representable(t, alpha, m);
}

bool check_run(const SeqPrefix& seq, std::size_t r, std::uint64_t x) {
    const auto values = positive_values(std::span(seq.terms).first(r));
    const std::uint64_t length = to_u64(seq.s(r + 1));
    const std::uint64_t end = x + length;  // exclusive
    const SumsetBitset bits = subset_sums(values, end);
    for (std::uint64_t m = x; m < end; ++m) {
        if (!bits.test(m)) return false;
    }
    return x >= 1;
}

bool in_lemma_region(const Rational& t, const Rational& alpha) {
    return t >= kOne && alpha > kOne && golden_compare(alpha) < 0;
}

}  // namespace

bool check_witness(const Rational& t, const Rational& alpha, const Classification& c) {
    return std::visit(
        [&](const auto& w) -> bool {
            using W = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<W, GapWitness>) {
                return c.verdict == Verdict::NotComplete && check_gap(t, alpha, w.m, w.r);
            } else if constexpr (std::is_same_v<W, FolkmanChain>) {
                if (c.verdict != Verdict::NotComplete || !check_gap(t, alpha, w.m, w.r)) return false;
                const SeqPrefix seq = prefix(t, alpha, w.r + 2 * w.chain.size() + 1);
                BigInt value = w.m;
                for (std::size_t j = 1; j <= w.chain.size(); ++j) {
                    value += seq.s(w.r + 2 * j + 1);
                    if (value != w.chain[j - 1] || is_representable(t, alpha, value)) return false;
                }
                return true;
            } else if constexpr (std::is_same_v<W, DoublingCert>) {
                if (c.verdict != Verdict::EntirelyComplete || alpha < kOne || alpha > kTwo) return false;
                const SeqPrefix seq = prefix(t, alpha, w.r + 1);
                if (!prefix_condition_holds(seq, w.r)) return false;
                if (alpha == kOne) return true;
                if (alpha == kTwo) return (t * alpha.pow(w.r + 1)).is_integer();
                return t * alpha.pow(w.r + 1) * (kTwo - alpha) > kTwo;
            } else if constexpr (std::is_same_v<W, RunCert>) {
                if (c.verdict != Verdict::CompleteNotEntirely || !in_lemma_region(t, alpha) || w.r < 1) {
                    return false;
                }
                return check_run(prefix(t, alpha, w.r + 1), w.r, w.x);
            } else if constexpr (std::is_same_v<W, BlockCert>) {
                if (c.verdict != Verdict::CompleteNotEntirely || !in_lemma_region(t, alpha)) return false;
                if (w.v != t.ceil() || w.w != ceil_sqrt(t) || w.x != w.v * w.w + w.w * (w.w - 1) / 2) {
                    return false;
                }
                const SeqPrefix seq = prefix(t, alpha, w.r + 1);
                if (seq.s(w.r) != w.v + 2 * w.w) return false;
                for (BigInt m = w.v; m <= w.v + 2 * w.w; ++m) {
                    bool found = false;
                    for (const auto& s : seq.terms) found = found || s == m;
                    if (!found) return false;
                }
                return check_run(seq, w.r, to_u64(w.x));
            } else if constexpr (std::is_same_v<W, ExternalRef>) {
                return c.verdict == Verdict::KnownExternally && cube_compare_five(alpha) > 0 && alpha < kTwo &&
                       t < kOne;
            } else {
                return c.verdict == Verdict::Unknown ||
                       (c.verdict == Verdict::NotComplete &&
                        (alpha < kOne || (alpha == kOne && (t < kOne || t >= kTwo))));
            }
        },
        c.witness);
}

}  // namespace completeness
