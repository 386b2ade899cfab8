#include "completeness/tiler.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>
#include <variant>

#include <json.hpp>

#include "completeness/sumset.hpp"

namespace completeness {

namespace {

// Rectangles whose dummy can take more values than this are split rather than checked.
constexpr std::uint64_t kMaxDummySpread = 64;
// Subset-sum bitmaps are grown from this size until a run appears.
constexpr std::uint64_t kInitialRunBound = 256;

std::optional<std::uint64_t> smallest_run_start(const RunTarget& target) {
    const std::uint64_t total =
        std::accumulate(target.elements.begin(), target.elements.end(), std::uint64_t{0});
    if (target.length == 0 || target.length > total) return std::nullopt;
    std::uint64_t bound = std::min(total, std::max(2 * target.length, kInitialRunBound));
    for (;;) {
        const SumsetBitset bits = subset_sums(target.elements, bound);
        if (auto x = find_run(bits, target.length, bound - target.length + 1)) return x;
        if (bound == total) return std::nullopt;
        bound = std::min(total, 2 * bound);
    }
}

// Range of a polynomial over a box with non-negative corners. Each monomial
// t^i alpha^j is non-decreasing in both variables there.
std::optional<std::pair<Rational, Rational>> poly_range(const Polynomial& p, const Rect& box) {
    if (box.t_lo.sign() < 0 || box.a_lo.sign() < 0) return std::nullopt;
    Rational lo;
    Rational hi;
    for (const auto& [e, c] : p.terms()) {
        const Rational at_lo = c * box.t_lo.pow(e.first) * box.a_lo.pow(e.second);
        const Rational at_hi = c * box.t_hi.pow(e.first) * box.a_hi.pow(e.second);
        lo += min(at_lo, at_hi);
        hi += max(at_lo, at_hi);
    }
    return std::make_pair(lo, hi);
}

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

struct Certified {
    RectCertificate cert;
};
struct Dropped {};
struct Unresolved {};
using NodeOutcome = std::variant<Dropped, Certified, Unresolved>;

NodeOutcome process(const Rect& rect, const Region& region, std::size_t n) {
    if (place_box(rect, region.constraints) == BoxPlacement::Outside) return Dropped{};
    if (auto cert = certify_rect(rect, n)) return Certified{std::move(*cert)};
    return Unresolved{};
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    workers.reserve(n);
    for (unsigned w = 0; w < n; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
}

nlohmann::ordered_json rect_json(const Rect& r) {
    nlohmann::ordered_json j;
    j["t_lo"] = r.t_lo.str();
    j["t_hi"] = r.t_hi.str();
    j["a_lo"] = r.a_lo.str();
    j["a_hi"] = r.a_hi.str();
    return j;
}

}  // namespace

OverlapDummy corner_analysis(const Rect& rect, std::size_t n) {
    if (!rect.valid()) throw PreconditionError("rectangle has inverted bounds");
    if (n < 2) throw PreconditionError("corner analysis needs at least two terms");
    const SeqPrefix low = prefix(rect.t_lo, rect.a_lo, n);
    const SeqPrefix high = prefix(rect.t_hi, rect.a_hi, n);
    OverlapDummy out;
    for (std::size_t i = 1; i <= n; ++i) {
        if (low.s(i) == high.s(i)) {
            out.overlap.push_back({i, low.s(i)});
        } else if (!out.dummy) {
            out.dummy = DummyRange{i, low.s(i), high.s(i)};
        }
    }
    return out;
}

std::optional<RunTarget> run_target(const OverlapDummy& analysis, const std::optional<BigInt>& dummy_value) {
    if (analysis.overlap.empty()) return std::nullopt;
    RunTarget target;
    const BigInt& last = analysis.overlap.back().value;
    for (std::size_t j = 0; j + 1 < analysis.overlap.size(); ++j) {
        const BigInt& v = analysis.overlap[j].value;
        if (v > 0) target.elements.push_back(to_u64(v));
    }
    if (dummy_value) {
        const BigInt lower = *dummy_value < last ? *dummy_value : last;
        const BigInt upper = *dummy_value < last ? last : *dummy_value;
        if (lower > 0) target.elements.push_back(to_u64(lower));
        target.length = to_u64(upper);
    } else {
        target.length = to_u64(last);
    }
    return target;
}

void require_certifiable(const Rect& rect) {
    if (!rect.valid()) throw RectHypothesisError("rectangle has inverted bounds");
    if (rect.t_lo < Rational(1)) {
        throw RectHypothesisError("rectangle reaches t = " + rect.t_lo.str() + " < 1");
    }
    if (rect.a_lo <= Rational(1)) {
        throw RectHypothesisError("rectangle reaches alpha = " + rect.a_lo.str() + " <= 1");
    }
    if (golden_compare(rect.a_hi) > 0) {
        throw RectHypothesisError("rectangle reaches alpha = " + rect.a_hi.str() + " above the golden ratio");
    }
}

std::optional<RectCertificate> check_rect(const Rect& rect, std::size_t n) {
    require_certifiable(rect);
    RectCertificate cert{rect, corner_analysis(rect, n), {}, n};
    const auto& analysis = cert.analysis;
    if (!analysis.dummy) {
        const auto target = run_target(analysis, std::nullopt);
        if (!target) return std::nullopt;
        const auto x = smallest_run_start(*target);
        if (!x) return std::nullopt;
        cert.witnesses.push_back({std::nullopt, *x, target->length});
        return cert;
    }
    const auto& dummy = *analysis.dummy;
    if (dummy.hi - dummy.lo > kMaxDummySpread) return std::nullopt;
    for (BigInt d = dummy.lo; d <= dummy.hi; ++d) {
        const auto target = run_target(analysis, d);
        if (!target) return std::nullopt;
        const auto x = smallest_run_start(*target);
        if (!x) return std::nullopt;
        cert.witnesses.push_back({d, *x, target->length});
    }
    return cert;
}

std::optional<RectCertificate> certify_rect(const Rect& rect, std::size_t n) {
    if (auto cert = check_rect(rect, n)) return cert;
    const OverlapDummy full = corner_analysis(rect, n);
    for (auto it = full.overlap.rbegin(); it != full.overlap.rend(); ++it) {
        if (it->index >= n || it->index < 2) continue;
        if (auto cert = check_rect(rect, it->index)) return cert;
    }
    return std::nullopt;
}

BoxPlacement place_box(const Rect& box, const std::vector<Constraint>& constraints) {
    bool inside = true;
    for (const auto& c : constraints) {
        const auto range = poly_range(c.poly, box);
        if (!range) {
            inside = false;
            continue;
        }
        const auto& [lo, hi] = *range;
        bool fails_everywhere = false;
        bool holds_everywhere = false;
        switch (c.relation) {
            case Relation::Less:
                fails_everywhere = lo.sign() >= 0;
                holds_everywhere = hi.sign() < 0;
                break;
            case Relation::LessEq:
                fails_everywhere = lo.sign() > 0;
                holds_everywhere = hi.sign() <= 0;
                break;
            case Relation::Greater:
                fails_everywhere = hi.sign() <= 0;
                holds_everywhere = lo.sign() > 0;
                break;
            case Relation::GreaterEq:
                fails_everywhere = hi.sign() < 0;
                holds_everywhere = lo.sign() >= 0;
                break;
        }
        if (fails_everywhere) return BoxPlacement::Outside;
        inside = inside && holds_everywhere;
    }
    return inside ? BoxPlacement::Inside : BoxPlacement::Straddles;
}

std::vector<Rect> quarter(const Rect& rect) {
    const Rational tm = midpoint(rect.t_lo, rect.t_hi);
    const Rational am = midpoint(rect.a_lo, rect.a_hi);
    return {
        Rect{rect.t_lo, tm, rect.a_lo, am},
        Rect{rect.t_lo, tm, am, rect.a_hi},
        Rect{tm, rect.t_hi, rect.a_lo, am},
        Rect{tm, rect.t_hi, am, rect.a_hi},
    };
}

Certificate tile(const Region& region, const TileOptions& options) {
    if (options.max_depth < 0) throw PreconditionError("max depth must be non-negative");
    Certificate cert{region, options.prefix_length, options.max_depth, {}, {}};

    std::vector<Rect> level{region.box};
    if (place_box(region.box, region.constraints) == BoxPlacement::Outside) level.clear();
    if (!level.empty()) require_certifiable(region.box);

    for (int depth = 0; !level.empty(); ++depth) {
        std::vector<NodeOutcome> outcomes(level.size());
        parallel_for(level.size(), options.jobs, [&](std::size_t i) {
            outcomes[i] = process(level[i], region, options.prefix_length);
        });
        std::vector<Rect> next;
        for (std::size_t i = 0; i < level.size(); ++i) {
            if (auto* c = std::get_if<Certified>(&outcomes[i])) {
                cert.rects.push_back(std::move(c->cert));
            } else if (std::holds_alternative<Unresolved>(outcomes[i])) {
                if (depth >= options.max_depth) {
                    cert.uncovered.push_back(level[i]);
                } else {
                    for (auto& child : quarter(level[i])) next.push_back(std::move(child));
                }
            }
        }
        level = std::move(next);
    }

    std::sort(cert.rects.begin(), cert.rects.end(),
              [](const RectCertificate& a, const RectCertificate& b) { return a.rect < b.rect; });
    std::sort(cert.uncovered.begin(), cert.uncovered.end());
    return cert;
}

std::string certificate_to_json(const Certificate& cert) {
    using nlohmann::ordered_json;
    ordered_json root;
    root["format"] = "completeness-certificate";
    root["version"] = kCertificateFormatVersion;

    ordered_json region;
    region["box"] = rect_json(cert.region.box);
    region["constraints"] = ordered_json::array();
    for (const auto& c : cert.region.constraints) {
        ordered_json jc;
        jc["poly"] = c.poly.str();
        jc["relation"] = to_string(c.relation);
        region["constraints"].push_back(std::move(jc));
    }
    root["region"] = std::move(region);
    root["N"] = cert.prefix_length;
    root["max_depth"] = cert.max_depth;

    ordered_json rects = ordered_json::array();
    for (const auto& rc : cert.rects) {
        ordered_json j = rect_json(rc.rect);
        j["N"] = rc.prefix_length;
        ordered_json overlap = ordered_json::array();
        for (const auto& e : rc.analysis.overlap) overlap.push_back({e.index, to_u64(e.value)});
        j["overlap"] = std::move(overlap);
        if (rc.analysis.dummy) {
            ordered_json d;
            d["i0"] = rc.analysis.dummy->index;
            d["lo"] = to_u64(rc.analysis.dummy->lo);
            d["hi"] = to_u64(rc.analysis.dummy->hi);
            j["dummy"] = std::move(d);
        } else {
            j["dummy"] = nullptr;
        }
        ordered_json witnesses = ordered_json::array();
        for (const auto& w : rc.witnesses) {
            ordered_json jw;
            if (w.s_dummy) {
                jw["s_dummy"] = to_u64(*w.s_dummy);
            } else {
                jw["s_dummy"] = nullptr;
            }
            jw["X"] = w.x;
            jw["L"] = w.length;
            witnesses.push_back(std::move(jw));
        }
        j["witnesses"] = std::move(witnesses);
        rects.push_back(std::move(j));
    }
    root["rects"] = std::move(rects);

    ordered_json uncovered = ordered_json::array();
    for (const auto& r : cert.uncovered) uncovered.push_back(rect_json(r));
    root["uncovered"] = std::move(uncovered);

    std::string out = root.dump();
    out += '\n';
    return out;
}

std::optional<Rational> epsilon_box(const Rational& t, const Rational& alpha, std::size_t r, std::uint64_t x,
                                    unsigned precision) {
    require_certifiable(Rect{t, t, alpha, alpha});
    if (r < 1) throw PreconditionError("run witness needs r >= 1");
    const SeqPrefix seq = prefix(t, alpha, r + 1);
    {
        std::vector<std::uint64_t> values;
        for (std::size_t i = 1; i <= r; ++i) values.push_back(to_u64(seq.s(i)));
        const std::uint64_t length = to_u64(seq.s(r + 1));
        const SumsetBitset bits = subset_sums(values, x + length);
        for (std::uint64_t m = x; m < x + length; ++m) {
            if (x == 0 || !bits.test(m)) {
                throw PreconditionError("(r, X) is not a run witness at this point");
            }
        }
    }

    const auto box_ok = [&](const Rational& eps) {
        const Rational a = alpha + eps;
        if (!(a * a < a + Rational(1))) return false;
        const Rational tt = t + eps;
        Rational power = a;
        for (std::size_t i = 1; i <= r + 1; ++i, power *= a) {
            if (!(tt * power < Rational(BigInt(seq.s(i) + 1)))) return false;
        }
        return true;
    };

    BigInt scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), precision);
    BigInt lo = 0;  // box_ok(lo / scale) holds
    BigInt hi = scale + 1;  // exclusive
    while (hi - lo > 1) {
        const BigInt mid = (lo + hi) / 2;
        if (box_ok(Rational(mid, scale))) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (lo == 0) return std::nullopt;
    const Rational eps(lo, scale);
    if (!box_ok(eps)) throw std::logic_error("epsilon box failed its own verification");
    return eps;
}

}  // namespace completeness
