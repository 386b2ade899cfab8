#pragma once

/**
 * @file classifier.hpp
 * @brief Completeness verdicts for S_t(alpha) with constructive witnesses.
 *
 * classify() walks a fixed decision table over the (t, alpha) plane. Every
 * verdict other than Unknown and KnownExternally carries a Witness that can be
 * re-checked independently with check_witness(), which only uses exact term
 * evaluation and brute-force subset sums.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "completeness/rational.hpp"
#include "completeness/region.hpp"
#include "completeness/sequence.hpp"

namespace completeness {

enum class Verdict { EntirelyComplete, CompleteNotEntirely, NotComplete, Unknown, KnownExternally };

std::string to_string(Verdict v);

/// Which rule of the decision table produced a verdict.
enum class Provenance {
    AlphaBelowOne,
    AlphaEqualsOne,
    AlphaAboveTwo,
    AlphaEqualsTwo,
    CubeRootFiveToTwo,     ///< 5^(1/3) < alpha < 2
    GoldenToCubeRootFive,  ///< golden ratio <= alpha <= 5^(1/3)
    ThreeHalvesToGolden,   ///< 3/2 <= alpha < golden ratio
    OneToThreeHalves,      ///< 1 < alpha < 3/2
    SmallAlphaRun,         ///< alpha <= 5/4, t < 4/alpha
    ConsecutiveBlock,      ///< alpha <= 1 + 1/(ceil(t) + 2 ceil(sqrt t))
    TilingCertificate,     ///< inside a verified certificate rectangle
    ExternalCharacterization,
    Undecided,
};

std::string to_string(Provenance p);

/// s_1 + ... + s_r < m < s_{r+1} with alpha at or above the golden ratio.
struct GapWitness {
    BigInt m;
    std::size_t r = 0;
};

/// Gap witness (m, r) extended by m + s_{r+3}, m + s_{r+3} + s_{r+5}, ...
struct FolkmanChain {
    BigInt m;
    std::size_t r = 0;
    std::vector<BigInt> chain;
};

/// s_{n+1} <= 1 + s_1 + ... + s_n for all n <= r and s_{n+1} <= 2 s_n for n > r.
struct DoublingCert {
    std::size_t r = 0;
    bool prefix_check = false;
};

/// Every m in [X, X + s_{r+1}) is a sum of distinct elements of s_1..s_r.
struct RunCert {
    std::size_t r = 0;
    std::uint64_t x = 0;
};

/// Consecutive block {v, ..., v + 2w} among the terms, with v = ceil(t),
/// w = ceil(sqrt t), X = v w + w (w - 1) / 2, and s_r = v + 2w.
struct BlockCert {
    BigInt v;
    BigInt w;
    BigInt x;
    std::size_t r = 0;
};

struct ExternalRef {
    std::string note;
};

using Witness = std::variant<std::monostate, GapWitness, FolkmanChain, DoublingCert, RunCert, BlockCert,
                             ExternalRef>;

struct Classification {
    Verdict verdict = Verdict::Unknown;
    Witness witness;
    Provenance provenance = Provenance::Undecided;
};

/// Rectangles of certificates that have already passed verification.
struct CertifiedCells {
    std::vector<Rect> rects;
    bool contains(const Rational& t, const Rational& alpha) const;
};

inline constexpr std::size_t kClassifierChainLength = 3;

Classification classify(const Rational& t, const Rational& alpha, const CertifiedCells* cells = nullptr);

/// min(2/alpha, 3/alpha^2, 5/alpha^3): the entire-completeness frontier.
Rational entire_frontier(const Rational& alpha);

/// Least r <= n with an m strictly between s_1 + ... + s_r and s_{r+1}.
/// Requires alpha >= golden ratio.
std::optional<GapWitness> corollary_witness(const Rational& t, const Rational& alpha,
                                            std::size_t n = kDefaultPrefixLength);

/// Raised when the hypotheses of a witness construction do not hold.
class HypothesisError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// The k values m + s_{r+3} + s_{r+5} + ... + s_{r+2j+1}, j = 1..k, each
/// checked non-representable. Throws HypothesisError naming the failed premise.
std::vector<BigInt> folkman_chain(const Rational& t, const Rational& alpha, const BigInt& m,
                                  std::size_t r, std::size_t k);

struct GrowthWitness {
    std::size_t n = 0;
    BigInt value;  ///< s_{n+1} - 1, not representable
};

/// For alpha > 2: least n with t alpha^(n+1) (alpha - 2) > 2 alpha - 2.
GrowthWitness alpha_gt2_witness(const Rational& t, const Rational& alpha);

/// For alpha = 2 and 0 < t < 1 not a power 2^-k: the gap witness found
/// where s_n, s_{n+1}, ... first stops being 1, 2, 4, ...
GapWitness dyadic_deviation_witness(const Rational& t);

/// t = 2^-k for some k >= 1.
bool is_inverse_power_of_two(const Rational& t);

/// Searches r = 1, 2, ... for a run of length s_{r+1} in P(s_1..s_r).
/// Requires t >= 1 and 1 < alpha < golden ratio for the result to imply completeness.
std::optional<RunCert> find_run_cert(const Rational& t, const Rational& alpha,
                                     std::size_t n = kDefaultPrefixLength);

/// Block construction for alpha <= 1 + 1/(ceil(t) + 2 ceil(sqrt t)).
std::optional<BlockCert> block_cert(const Rational& t, const Rational& alpha);

/// Whether v is a sum of distinct terms of S_t(alpha), by brute force over
/// every term <= v. Requires alpha > 1.
bool is_representable(const Rational& t, const Rational& alpha, const BigInt& v);

/// {"verdict", "witness": {"kind", ...}, "provenance"} as compact JSON.
std::string classification_to_json(const Classification& c);

/// Re-checks a witness from scratch for the given parameters and verdict.
bool check_witness(const Rational& t, const Rational& alpha, const Classification& c);

}  // namespace completeness
