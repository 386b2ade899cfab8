#include "completeness/verifier.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "completeness/sequence.hpp"
#include "completeness/sumset.hpp"

namespace completeness::verify {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw CertificateParseError("certificate: " + what); }

const json& field(const json& obj, const char* name) {
    if (!obj.is_object() || !obj.contains(name)) bad(std::string("missing field '") + name + "'");
    return obj.at(name);
}

Rational rational_field(const json& obj, const char* name) {
    const json& v = field(obj, name);
    if (!v.is_string()) bad(std::string("field '") + name + "' must be a \"p/q\" string");
    try {
        return Rational::parse(v.get<std::string>());
    } catch (const std::exception& e) {
        bad(std::string("field '") + name + "': " + e.what());
    }
}

std::uint64_t uint_value(const json& v, const char* what) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        bad(std::string(what) + " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

Rect rect_of(const json& obj) {
    Rect r{rational_field(obj, "t_lo"), rational_field(obj, "t_hi"), rational_field(obj, "a_lo"),
           rational_field(obj, "a_hi")};
    if (!r.valid()) bad("rectangle with inverted bounds");
    return r;
}

Region region_of(const json& obj) {
    Region region;
    region.box = rect_of(field(obj, "box"));
    const json& cs = field(obj, "constraints");
    if (!cs.is_array()) bad("constraints must be an array");
    for (const auto& c : cs) {
        const json& poly = field(c, "poly");
        const json& rel = field(c, "relation");
        if (!poly.is_string() || !rel.is_string()) bad("constraint fields must be strings");
        try {
            region.constraints.push_back(
                Constraint{Polynomial::parse(poly.get<std::string>()), parse_relation(rel.get<std::string>())});
        } catch (const ParseError& e) {
            bad(e.what());
        }
    }
    return region;
}

CertRect cert_rect_of(const json& obj) {
    CertRect cr;
    cr.rect = rect_of(obj);
    cr.prefix_length = uint_value(field(obj, "N"), "N");
    const json& overlap = field(obj, "overlap");
    if (!overlap.is_array()) bad("overlap must be an array");
    for (const auto& pair : overlap) {
        if (!pair.is_array() || pair.size() != 2) bad("overlap entries must be [index, value]");
        cr.overlap.push_back({uint_value(pair[0], "overlap index"), uint_value(pair[1], "overlap value")});
    }
    const json& dummy = field(obj, "dummy");
    if (!dummy.is_null()) {
        cr.dummy = CertDummy{uint_value(field(dummy, "i0"), "i0"), uint_value(field(dummy, "lo"), "lo"),
                             uint_value(field(dummy, "hi"), "hi")};
    }
    const json& witnesses = field(obj, "witnesses");
    if (!witnesses.is_array()) bad("witnesses must be an array");
    for (const auto& w : witnesses) {
        CertWitness cw;
        const json& sd = field(w, "s_dummy");
        if (!sd.is_null()) cw.s_dummy = uint_value(sd, "s_dummy");
        cw.x = uint_value(field(w, "X"), "X");
        cw.length = uint_value(field(w, "L"), "L");
        cr.witnesses.push_back(cw);
    }
    return cr;
}

// ---- step 1: coverage ----------------------------------------------------

// Extremes of each monomial over a positive box are attained at corners.
bool constraint_fails_on_box(const Constraint& c, const Rect& b) {
    if (b.t_lo.sign() < 0 || b.a_lo.sign() < 0) return false;
    const Rational corners[4][2] = {{b.t_lo, b.a_lo}, {b.t_lo, b.a_hi}, {b.t_hi, b.a_lo}, {b.t_hi, b.a_hi}};
    Rational lowest;
    Rational highest;
    for (const auto& [exps, coeff] : c.poly.terms()) {
        std::optional<Rational> mn;
        std::optional<Rational> mx;
        for (const auto& corner : corners) {
            const Rational v = coeff * corner[0].pow(exps.first) * corner[1].pow(exps.second);
            if (!mn || v < *mn) mn = v;
            if (!mx || *mx < v) mx = v;
        }
        lowest += *mn;
        highest += *mx;
    }
    switch (c.relation) {
        case Relation::Less: return lowest.sign() >= 0;
        case Relation::LessEq: return lowest.sign() > 0;
        case Relation::Greater: return highest.sign() <= 0;
        case Relation::GreaterEq: return highest.sign() < 0;
    }
    return false;
}

bool excluded(const Region& region, const Rect& b) {
    return std::any_of(region.constraints.begin(), region.constraints.end(),
                       [&](const Constraint& c) { return constraint_fails_on_box(c, b); });
}

bool overlaps_1d(const Rational& rlo, const Rational& rhi, const Rational& blo, const Rational& bhi) {
    if (blo < bhi) return rlo < bhi && blo < rhi;
    return rlo <= blo && blo <= rhi;
}

Rational half(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

class CoverageChecker {
public:
    CoverageChecker(const Region& region, const std::vector<CertRect>& rects, int exclusion_depth)
        : region_(region), rects_(rects), exclusion_depth_(exclusion_depth) {}

    StepResult run() {
        std::vector<std::size_t> all(rects_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        StepResult result;
        cover(region_.box, all, 0, result);
        return result;
    }

private:
    void cover(const Rect& b, const std::vector<std::size_t>& candidates, int extra, StepResult& result) {
        if (!result.pass) return;
        if (excluded(region_, b)) return;

        std::vector<std::size_t> hits;
        for (auto i : candidates) {
            const Rect& r = rects_[i].rect;
            if (overlaps_1d(r.t_lo, r.t_hi, b.t_lo, b.t_hi) && overlaps_1d(r.a_lo, r.a_hi, b.a_lo, b.a_hi)) {
                if (r.contains(b)) return;
                hits.push_back(i);
            }
        }

        if (!hits.empty()) {
            std::vector<Rational> t_cuts;
            std::vector<Rational> a_cuts;
            for (auto i : hits) {
                const Rect& r = rects_[i].rect;
                for (const Rational* v : {&r.t_lo, &r.t_hi}) {
                    if (b.t_lo < *v && *v < b.t_hi) t_cuts.push_back(*v);
                }
                for (const Rational* v : {&r.a_lo, &r.a_hi}) {
                    if (b.a_lo < *v && *v < b.a_hi) a_cuts.push_back(*v);
                }
            }
            const bool cut_t = t_cuts.size() >= a_cuts.size();
            auto& cuts = cut_t ? t_cuts : a_cuts;
            if (cuts.empty()) {
                // Degenerate box touched by rectangles that do not contain it.
                fail_at(b, result, "degenerate piece not contained in any rectangle");
                return;
            }
            auto mid = cuts.begin() + static_cast<std::ptrdiff_t>(cuts.size() / 2);
            std::nth_element(cuts.begin(), mid, cuts.end());
            const Rational at = *mid;
            Rect first = b;
            Rect second = b;
            if (cut_t) {
                first.t_hi = at;
                second.t_lo = at;
            } else {
                first.a_hi = at;
                second.a_lo = at;
            }
            cover(first, hits, extra, result);
            cover(second, hits, extra, result);
            return;
        }

        // No rectangle here: this piece must miss the region entirely.
        const Rational tm = half(b.t_lo, b.t_hi);
        const Rational am = half(b.a_lo, b.a_hi);
        const Rational probes[9][2] = {{tm, am},       {b.t_lo, b.a_lo}, {b.t_lo, b.a_hi},
                                       {b.t_hi, b.a_lo}, {b.t_hi, b.a_hi}, {tm, b.a_lo},
                                       {tm, b.a_hi},     {b.t_lo, am},     {b.t_hi, am}};
        for (const auto& p : probes) {
            if (region_.contains(p[0], p[1])) {
                result.pass = false;
                result.point = PointCounterexample{p[0], p[1]};
                result.detail = "point of the region not covered by any rectangle";
                return;
            }
        }
        if (extra >= exclusion_depth_) {
            fail_at(b, result, "could not show an uncovered piece lies outside the region");
            return;
        }
        const Rect parts[4] = {{b.t_lo, tm, b.a_lo, am}, {b.t_lo, tm, am, b.a_hi},
                               {tm, b.t_hi, b.a_lo, am}, {tm, b.t_hi, am, b.a_hi}};
        for (const auto& p : parts) cover(p, {}, extra + 1, result);
    }

    static void fail_at(const Rect& b, StepResult& result, const std::string& why) {
        result.pass = false;
        result.point = PointCounterexample{half(b.t_lo, b.t_hi), half(b.a_lo, b.a_hi)};
        result.detail = why + " near [" + b.t_lo.str() + "," + b.t_hi.str() + "]x[" + b.a_lo.str() + "," +
                        b.a_hi.str() + "]";
    }

    const Region& region_;
    const std::vector<CertRect>& rects_;
    int exclusion_depth_;
};

// ---- step 2: corners -----------------------------------------------------

std::optional<std::string> corner_mismatch(const CertRect& cr) {
    if (cr.prefix_length < 2) return "prefix length below 2";
    if (cr.rect.t_lo.sign() <= 0 || cr.rect.a_lo.sign() <= 0) return "non-positive corner";
    const SeqPrefix low = prefix(cr.rect.t_lo, cr.rect.a_lo, cr.prefix_length);
    const SeqPrefix high = prefix(cr.rect.t_hi, cr.rect.a_hi, cr.prefix_length);
    std::size_t next_overlap = 0;
    bool dummy_seen = false;
    for (std::size_t i = 1; i <= cr.prefix_length; ++i) {
        const BigInt& a = low.s(i);
        const BigInt& b = high.s(i);
        if (a == b) {
            if (next_overlap >= cr.overlap.size()) return "overlap misses index " + std::to_string(i);
            const auto& stored = cr.overlap[next_overlap++];
            if (stored.index != i || BigInt(stored.value) != a) {
                return "overlap entry " + std::to_string(next_overlap - 1) + " should be [" + std::to_string(i) +
                       ", " + a.get_str() + "]";
            }
        } else if (!dummy_seen) {
            dummy_seen = true;
            if (!cr.dummy) return "dummy missing at index " + std::to_string(i);
            if (cr.dummy->index != i || BigInt(cr.dummy->lo) != a || BigInt(cr.dummy->hi) != b) {
                return "dummy should be index " + std::to_string(i) + " in [" + a.get_str() + ", " + b.get_str() +
                       "]";
            }
        }
    }
    if (next_overlap != cr.overlap.size()) return "overlap lists indices the corners do not share";
    if (!dummy_seen && cr.dummy) return "dummy recorded but corners agree on every index";
    return std::nullopt;
}

// ---- step 3: run lemma ---------------------------------------------------

bool run_present(const std::vector<std::uint64_t>& elements, std::uint64_t x, std::uint64_t length,
                 std::size_t naive_limit) {
    if (x == 0 || length == 0) return false;
    const std::uint64_t last = x + length - 1;
    if (elements.size() <= naive_limit) {
        const auto sums = naive_subset_sums(elements);
        for (std::uint64_t m = x; m <= last; ++m) {
            if (!sums.contains(m)) return false;
        }
        return true;
    }
    const SumsetBitset bits = subset_sums(elements, last);
    return bits.next_clear(x) > last;
}

std::optional<std::string> lemma_failure(const CertRect& cr, std::size_t naive_limit,
                                         std::optional<std::uint64_t>& bad_value) {
    const Rect& r = cr.rect;
    if (r.t_lo < Rational(1)) return "rectangle reaches t < 1";
    if (r.a_lo <= Rational(1)) return "rectangle reaches alpha <= 1";
    if (!(r.a_hi * r.a_hi < r.a_hi + Rational(1))) return "rectangle reaches alpha >= golden ratio";
    if (cr.overlap.empty()) return "empty overlap";

    const std::uint64_t last = cr.overlap.back().value;
    std::vector<std::uint64_t> base;
    for (std::size_t j = 0; j + 1 < cr.overlap.size(); ++j) {
        if (cr.overlap[j].value > 0) base.push_back(cr.overlap[j].value);
    }

    if (!cr.dummy) {
        if (cr.witnesses.size() != 1 || cr.witnesses[0].s_dummy) return "expected one witness without dummy value";
        const auto& w = cr.witnesses[0];
        if (w.length != last) return "run length should be " + std::to_string(last);
        if (!run_present(base, w.x, w.length, naive_limit)) return "run [X, X+L) not representable";
        return std::nullopt;
    }

    const CertDummy& d = *cr.dummy;
    if (d.hi < d.lo || cr.witnesses.size() != d.hi - d.lo + 1) return "witness count does not match dummy range";
    for (std::size_t j = 0; j < cr.witnesses.size(); ++j) {
        const auto& w = cr.witnesses[j];
        const std::uint64_t value = d.lo + j;
        bad_value = value;
        if (!w.s_dummy || *w.s_dummy != value) return "witness for dummy value " + std::to_string(value) + " missing";
        std::vector<std::uint64_t> elements = base;
        const std::uint64_t low = std::min(value, last);
        if (low > 0) elements.push_back(low);
        const std::uint64_t want = std::max(value, last);
        if (w.length != want) return "run length should be " + std::to_string(want);
        if (!run_present(elements, w.x, w.length, naive_limit)) return "run [X, X+L) not representable";
    }
    bad_value.reset();
    return std::nullopt;
}

json point_json(const std::optional<PointCounterexample>& p) {
    if (!p) return nullptr;
    return json{{"t", p->t.str()}, {"alpha", p->alpha.str()}};
}

json step_json(const StepResult& s) {
    json j;
    j["pass"] = s.pass;
    j["detail"] = s.detail;
    j["rect_index"] = s.rect_index ? json(*s.rect_index) : json(nullptr);
    j["point"] = point_json(s.point);
    j["dummy_value"] = s.dummy_value ? json(*s.dummy_value) : json(nullptr);
    return j;
}

std::string rect_text(const Rect& r) {
    return "[" + r.t_lo.str() + "," + r.t_hi.str() + "]x[" + r.a_lo.str() + "," + r.a_hi.str() + "]";
}

}  // namespace

CertificateFile parse_certificate(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
    try {
        const json& format = field(root, "format");
        if (!format.is_string() || format.get<std::string>() != "completeness-certificate") {
            bad("unknown format tag");
        }
        CertificateFile cert;
        cert.version = static_cast<int>(uint_value(field(root, "version"), "version"));
        if (cert.version != 1) bad("unsupported version " + std::to_string(cert.version));
        cert.region = region_of(field(root, "region"));
        const json& rects = field(root, "rects");
        if (!rects.is_array()) bad("rects must be an array");
        for (const auto& r : rects) cert.rects.push_back(cert_rect_of(r));
        const json& uncovered = field(root, "uncovered");
        if (!uncovered.is_array()) bad("uncovered must be an array");
        for (const auto& r : uncovered) cert.uncovered.push_back(rect_of(r));
        return cert;
    } catch (const json::exception& e) {
        bad(e.what());
    }
}

CertificateFile load_certificate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CertificateParseError("cannot open certificate '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_certificate(buf.str());
}

VerifyReport verify(const CertificateFile& cert, const Region& region, const VerifyOptions& options) {
    if (!(cert.region == region)) {
        throw PreconditionError("certificate region " + cert.region.str() + " differs from " + region.str());
    }
    VerifyReport report;

    report.coverage = CoverageChecker(region, cert.rects, options.exclusion_depth).run();

    for (std::size_t i = 0; i < cert.rects.size() && report.corners.pass; ++i) {
        if (auto why = corner_mismatch(cert.rects[i])) {
            report.corners.pass = false;
            report.corners.rect_index = i;
            report.corners.detail = "rect " + rect_text(cert.rects[i].rect) + ": " + *why;
            report.corners.point = PointCounterexample{cert.rects[i].rect.t_lo, cert.rects[i].rect.a_lo};
        }
    }

    for (std::size_t i = 0; i < cert.rects.size() && report.lemma.pass; ++i) {
        std::optional<std::uint64_t> bad_value;
        if (auto why = lemma_failure(cert.rects[i], options.naive_limit, bad_value)) {
            report.lemma.pass = false;
            report.lemma.rect_index = i;
            report.lemma.dummy_value = bad_value;
            report.lemma.detail = "rect " + rect_text(cert.rects[i].rect) + ": " + *why;
            report.lemma.point = PointCounterexample{cert.rects[i].rect.t_lo, cert.rects[i].rect.a_lo};
        }
    }
    return report;
}

std::string report_to_json(const VerifyReport& report) {
    json j;
    j["step1_coverage"] = step_json(report.coverage);
    j["step2_corners"] = step_json(report.corners);
    j["step3_lemma"] = step_json(report.lemma);
    j["overall"] = report.overall() ? "pass" : "fail";
    return j.dump(2) + "\n";
}

}  // namespace completeness::verify
