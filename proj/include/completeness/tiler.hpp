#pragma once

/**
 * @file tiler.hpp
 * @brief Completeness certificates for whole rectangles of parameters.
 *
 * For a closed rectangle C with bottom-left corner (t_lo, a_lo) and top-right
 * corner (t_hi, a_hi), every term of every interior sequence lies between the
 * corresponding corner terms. Indices where the corners agree (the overlap)
 * therefore carry the same value everywhere in C, and the first index where
 * they disagree (the dummy) is pinned to a known integer range. If, for every
 * possible dummy value d,
 *
 *     [X, X + max(d, s_ik)) is inside P({s_i1, ..., s_i(k-1), min(d, s_ik)})
 *
 * for some X (i_k being the last overlap index), then every point of C has a
 * run of length s_{r+1} inside P(s_1..s_r), which together with
 * s_{n+1} <= 2 s_n (valid for t >= 1, 1 < alpha < golden ratio) makes S_t(alpha)
 * complete. tile() subdivides a region into such rectangles, splitting each
 * failing rectangle into four.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "completeness/rational.hpp"
#include "completeness/region.hpp"
#include "completeness/sequence.hpp"

namespace completeness {

inline constexpr std::size_t kDefaultTilePrefix = 40;

struct OverlapEntry {
    std::size_t index = 0;
    BigInt value;
    friend bool operator==(const OverlapEntry&, const OverlapEntry&) = default;
};

struct DummyRange {
    std::size_t index = 0;
    BigInt lo;
    BigInt hi;
    friend bool operator==(const DummyRange&, const DummyRange&) = default;
};

struct OverlapDummy {
    std::vector<OverlapEntry> overlap;  // strictly increasing indices
    std::optional<DummyRange> dummy;
    friend bool operator==(const OverlapDummy&, const OverlapDummy&) = default;
};

/// One run witness: for dummy value s_dummy (absent without a dummy), every m
/// in [x, x + length) is a subset sum of the rectangle's element set.
struct RunWitness {
    std::optional<BigInt> s_dummy;
    std::uint64_t x = 0;
    std::uint64_t length = 0;
    friend bool operator==(const RunWitness&, const RunWitness&) = default;
};

struct RectCertificate {
    Rect rect;
    OverlapDummy analysis;
    std::vector<RunWitness> witnesses;
    std::size_t prefix_length = kDefaultTilePrefix;
    friend bool operator==(const RectCertificate&, const RectCertificate&) = default;
};

struct Certificate {
    Region region;
    std::size_t prefix_length = kDefaultTilePrefix;
    int max_depth = 0;
    std::vector<RectCertificate> rects;
    std::vector<Rect> uncovered;

    bool total() const { return uncovered.empty(); }
};

inline constexpr int kCertificateFormatVersion = 1;

/// Overlap and dummy of the two extreme corners of rect over the first n terms.
OverlapDummy corner_analysis(const Rect& rect, std::size_t n);

/// Elements used for dummy value d (or without a dummy when d is absent) and
/// the run length they must cover.
struct RunTarget {
    std::vector<std::uint64_t> elements;
    std::uint64_t length = 0;
};
std::optional<RunTarget> run_target(const OverlapDummy& analysis, const std::optional<BigInt>& dummy_value);

/// Raised by check_rect when a rectangle leaves t >= 1, 1 < alpha < golden ratio.
class RectHypothesisError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Throws RectHypothesisError if rect is not inside t >= 1, 1 < alpha < golden.
void require_certifiable(const Rect& rect);

/// Certificate for rect, or nullopt if some dummy value admits no run.
std::optional<RectCertificate> check_rect(const Rect& rect, std::size_t n = kDefaultTilePrefix);

/// check_rect at n, then at each shorter prefix ending on an overlap index,
/// longest first. The certificate records the prefix length that worked.
std::optional<RectCertificate> certify_rect(const Rect& rect, std::size_t n = kDefaultTilePrefix);

/// Where a box sits relative to a region's side constraints.
enum class BoxPlacement { Outside, Inside, Straddles };
BoxPlacement place_box(const Rect& box, const std::vector<Constraint>& constraints);

/// The four closed quarters of rect, split at the rational midpoints.
std::vector<Rect> quarter(const Rect& rect);

struct TileOptions {
    int max_depth = 12;
    std::size_t prefix_length = kDefaultTilePrefix;
    unsigned jobs = 1;
};

/// Recursive four-way subdivision. Output is sorted canonically and does not
/// depend on jobs.
Certificate tile(const Region& region, const TileOptions& options);

/// Certificate as versioned JSON text.
std::string certificate_to_json(const Certificate& cert);

/// Largest dyadic eps = k / 2^precision such that (t + eps)(alpha + eps)^i < s_i + 1
/// for all i <= r + 1 and alpha + eps stays below the golden ratio. Requires
/// (r, x) to be a valid run witness at (t, alpha). nullopt when eps would be 0.
std::optional<Rational> epsilon_box(const Rational& t, const Rational& alpha, std::size_t r, std::uint64_t x,
                                    unsigned precision);

}  // namespace completeness
