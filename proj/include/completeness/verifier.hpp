#pragma once

/**
 * @file verifier.hpp
 * @brief Independent checker for certificate files.
 *
 * The verifier reads the JSON certificate format and re-derives everything
 * it needs from exact term evaluation and subset sums. It does not link the
 * tiler; the only thing the two share is the file format.
 *
 * Checks, in order:
 *   1. coverage: the certified rectangles cover the whole region;
 *   2. corners: each stored overlap/dummy equals the one recomputed from the
 *      two extreme corners of its rectangle;
 *   3. runs: each rectangle satisfies t >= 1 and 1 < alpha < golden ratio, has
 *      one witness per dummy value, and every witness run is present in the
 *      recomputed subset-sum set.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "completeness/rational.hpp"
#include "completeness/region.hpp"

namespace completeness::verify {

struct CertOverlap {
    std::size_t index = 0;
    std::uint64_t value = 0;
};

struct CertDummy {
    std::size_t index = 0;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
};

struct CertWitness {
    std::optional<std::uint64_t> s_dummy;
    std::uint64_t x = 0;
    std::uint64_t length = 0;
};

struct CertRect {
    Rect rect;
    std::size_t prefix_length = 0;
    std::vector<CertOverlap> overlap;
    std::optional<CertDummy> dummy;
    std::vector<CertWitness> witnesses;
};

/// In-memory form of a certificate file.
struct CertificateFile {
    int version = 0;
    Region region;
    std::vector<CertRect> rects;
    std::vector<Rect> uncovered;
};

/// Malformed JSON, wrong format tag or version, or bad field values.
class CertificateParseError : public ParseError {
public:
    using ParseError::ParseError;
};

CertificateFile parse_certificate(std::string_view json_text);
CertificateFile load_certificate(const std::string& path);

struct PointCounterexample {
    Rational t;
    Rational alpha;
};

struct StepResult {
    bool pass = true;
    std::string detail;
    std::optional<std::size_t> rect_index;
    std::optional<PointCounterexample> point;
    std::optional<std::uint64_t> dummy_value;
};

struct VerifyReport {
    StepResult coverage;
    StepResult corners;
    StepResult lemma;
    bool overall() const { return coverage.pass && corners.pass && lemma.pass; }
};

struct VerifyOptions {
    /// Witness element sets up to this size are checked by subset enumeration.
    std::size_t naive_limit = 20;
    /// Depth of extra bisection used to prove uncovered pieces lie outside the region.
    int exclusion_depth = 24;
};

/// Throws PreconditionError if the certificate declares a different region.
VerifyReport verify(const CertificateFile& cert, const Region& region, const VerifyOptions& options = {});

std::string report_to_json(const VerifyReport& report);

}  // namespace completeness::verify
