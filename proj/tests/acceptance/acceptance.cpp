// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "completeness/classifier.hpp"
#include "completeness/sequence.hpp"
#include "completeness/sumset.hpp"
#include "completeness/tiler.hpp"
#include "completeness/verifier.hpp"

using namespace completeness;
using nlohmann::json;

namespace {

// Pinned parameters. All arithmetic checks are exact.
constexpr int kGrid = 200;
constexpr std::size_t kBruteTerms = 25;
constexpr double kBudgetFrontier = 120.0;
constexpr double kBudgetSmallAlpha = 600.0;
constexpr double kBudgetBand = 1800.0;
constexpr double kBudgetWitness = 60.0;
constexpr double kBudgetBlock = 60.0;
constexpr int kWitnessPairs = 50;
constexpr std::size_t kChainLength = 4;
constexpr int kOracleTrials = 1000;
constexpr int kMutations = 1000;

const char* const kSmallAlphaRegion = "t=[1,400/101] alpha=[101/100,5/4] 't*alpha<4'";
constexpr int kSmallAlphaDepth = 12;
constexpr std::size_t kSmallAlphaPrefix = 80;
const char* const kBandRegion = "t=[1,3] alpha=[13/10,7/5]";
constexpr int kBandDepth = 16;
const char* const kFuzzRegion = "t=[1,3/2] alpha=[13/10,27/20]";
constexpr int kFuzzDepth = 14;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

bool report(int id, const std::string& name, double budget, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(start);
    const bool in_time = elapsed <= budget;
    const bool pass = o.pass && in_time;
    std::printf("[%s] criterion %d: %s (%s) %.1fs/%.0fs%s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                o.detail.c_str(), elapsed, budget, in_time ? "" : " over budget");
    std::fflush(stdout);
    return pass;
}

std::mt19937_64& rng() {
    static std::mt19937_64 gen{20240601ULL};
    return gen;
}

long uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

Rational uniform_rational(const Rational& lo, const Rational& hi, long max_den = 1000) {
    const long den = uniform_int(1, max_den);
    return lo + (hi - lo) * Rational(uniform_int(0, den), den);
}

// Every term of S_t(alpha) not exceeding v.
std::vector<std::uint64_t> terms_up_to(const Rational& t, const Rational& alpha, const BigInt& v) {
    std::vector<std::uint64_t> out;
    for (std::size_t n = 1;; ++n) {
        const BigInt s = term(t, alpha, n);
        if (s > v) break;
        if (s > 0) out.push_back(to_u64(s));
        if (n > 100000) throw std::runtime_error("sequence does not pass " + v.get_str());
    }
    return out;
}

bool brute_representable(const Rational& t, const Rational& alpha, const BigInt& v) {
    const auto values = terms_up_to(t, alpha, v);
    return subset_sums(values, to_u64(v)).test(to_u64(v));
}

bool gap_holds(const Rational& t, const Rational& alpha, const BigInt& m, std::size_t r) {
    const auto seq = prefix(t, alpha, r + 1);
    return seq.partial_sum(r) < m && m < seq.s(r + 1);
}

// ---- criterion 1 ---------------------------------------------------------

// All m up to s_1 + ... + s_K representable with K = max(25, n0), s_{K+1} <= 1 + sum,
// and t alpha^n (2 - alpha) > 2 from n0 on.
bool entire_oracle(const Rational& t, const Rational& alpha) {
    std::size_t n0 = 1;
    while (!(t * alpha.pow(n0) * (Rational(2) - alpha) > Rational(2))) {
        if (++n0 > 5000) return false;
    }
    const std::size_t k = std::max(kBruteTerms, n0);
    const auto seq = prefix(t, alpha, k + 1);
    std::vector<std::uint64_t> values;
    for (std::size_t n = 1; n <= k; ++n) {
        if (seq.s(n) > 0) values.push_back(to_u64(seq.s(n)));
    }
    const std::uint64_t total = to_u64(seq.partial_sum(k));
    if (total == 0) return false;
    const auto bits = subset_sums(values, total);
    return bits.next_clear(1) > total && seq.s(k + 1) <= seq.partial_sum(k) + 1;
}

bool not_complete_oracle(const Rational& t, const Rational& alpha, const Classification& c) {
    if (const auto* g = std::get_if<GapWitness>(&c.witness)) {
        return gap_holds(t, alpha, g->m, g->r) && !brute_representable(t, alpha, g->m);
    }
    if (const auto* f = std::get_if<FolkmanChain>(&c.witness)) {
        if (!gap_holds(t, alpha, f->m, f->r) || brute_representable(t, alpha, f->m) || f->chain.empty()) {
            return false;
        }
        for (const auto& v : f->chain) {
            if (brute_representable(t, alpha, v)) return false;
        }
        return true;
    }
    return false;
}

Outcome frontier_reproduction() {
    const Rational t0(1, 10);
    const Rational dt = (Rational(2) - t0) / Rational(kGrid - 1);
    const Rational a0(101, 100);
    const Rational da = (Rational(199, 100) - a0) / Rational(kGrid - 1);
    std::map<Verdict, int> tally;
    int bad = 0;
    std::string first_bad;
    for (int i = 0; i < kGrid; ++i) {
        const Rational t = t0 + dt * Rational(i);
        for (int j = 0; j < kGrid; ++j) {
            const Rational a = a0 + da * Rational(j);
            const auto c = classify(t, a);
            ++tally[c.verdict];
            bool ok = true;
            if (c.verdict == Verdict::EntirelyComplete) ok = entire_oracle(t, a);
            if (c.verdict == Verdict::NotComplete) ok = not_complete_oracle(t, a, c);
            if (!ok) {
                if (bad++ == 0) first_bad = "t=" + t.str() + " alpha=" + a.str();
            }
        }
    }
    std::ostringstream d;
    d << kGrid * kGrid << " points, EC " << tally[Verdict::EntirelyComplete] << ", NC " << tally[Verdict::NotComplete]
      << ", other " << tally[Verdict::CompleteNotEntirely] + tally[Verdict::Unknown] + tally[Verdict::KnownExternally]
      << ", failures " << bad;
    if (bad > 0) d << ", first " << first_bad;
    return {bad == 0 && tally[Verdict::EntirelyComplete] > 0 && tally[Verdict::NotComplete] > 0, d.str()};
}

// ---- criteria 2, 3, 8 ----------------------------------------------------

struct TiledRegion {
    Certificate cert;
    std::string json;
    verify::VerifyReport report;
};

TiledRegion tile_and_verify(const char* spec, int depth, std::size_t n, unsigned jobs = 1) {
    const Region region = Region::parse(spec);
    TileOptions options;
    options.max_depth = depth;
    options.prefix_length = n;
    options.jobs = jobs;
    TiledRegion out;
    out.cert = tile(region, options);
    out.json = certificate_to_json(out.cert);
    out.report = verify::verify(verify::parse_certificate(out.json), region);
    return out;
}

std::string tiling_detail(const TiledRegion& r) {
    std::ostringstream d;
    d << r.cert.rects.size() << " rects, " << r.cert.uncovered.size() << " uncovered, " << r.json.size()
      << " bytes, verify " << (r.report.coverage.pass ? "1" : "-") << (r.report.corners.pass ? "2" : "-")
      << (r.report.lemma.pass ? "3" : "-");
    return d.str();
}

// Distinct overlap values from 3 upward, matched against a family where
// 0 stands for x in [7, 8] and -1 for y in [9, 12].
bool matches_family(const RectCertificate& rc, const std::vector<int>& family) {
    std::set<std::uint64_t> values;
    for (const auto& e : rc.analysis.overlap) {
        if (e.value >= 3) values.insert(to_u64(e.value));
    }
    if (values.size() < family.size() || *values.begin() != 3) return false;
    auto it = values.begin();
    for (const int f : family) {
        const auto v = static_cast<long>(*it++);
        if (f == 0 && (v < 7 || v > 8)) return false;
        if (f == -1 && (v < 9 || v > 12)) return false;
        if (f > 0 && v != f) return false;
    }
    return true;
}

Outcome small_alpha_region() {
    const auto r = tile_and_verify(kSmallAlphaRegion, kSmallAlphaDepth, kSmallAlphaPrefix);
    const std::vector<std::vector<int>> families{
        {3, 4, 5, 6, 0}, {3, 4, 5, 7, 8, -1}, {3, 4, 5, 7, 9, -1}, {3, 4, 6, 7, 8, -1}, {3, 4, 6, 7, 9, -1}};
    std::ostringstream d;
    d << tiling_detail(r) << ", families";
    bool all_families = true;
    for (const auto& f : families) {
        const auto n = std::count_if(r.cert.rects.begin(), r.cert.rects.end(),
                                     [&](const RectCertificate& rc) { return matches_family(rc, f); });
        d << ' ' << n;
        all_families = all_families && n > 0;
    }
    return {r.cert.total() && r.report.overall() && all_families, d.str()};
}

Outcome band_region() {
    const auto r = tile_and_verify(kBandRegion, kBandDepth, kDefaultTilePrefix);
    return {r.cert.total() && r.report.overall(), tiling_detail(r)};
}

Outcome determinism() {
    const Region region = Region::parse(kBandRegion);
    TileOptions one;
    one.max_depth = kBandDepth;
    TileOptions eight = one;
    eight.jobs = 8;
    const auto a = certificate_to_json(tile(region, one));
    const auto b = certificate_to_json(tile(region, eight));
    std::ostringstream d;
    d << a.size() << " vs " << b.size() << " bytes";
    return {a == b, d.str()};
}

// ---- criterion 4 ---------------------------------------------------------

Outcome witness_suite() {
    int ok = 0;
    std::string first_bad;
    for (int i = 0; i < kWitnessPairs; ++i) {
        Rational a;
        do {
            a = uniform_rational(Rational(1618, 1000), Rational(3), 1000);
        } while (!at_least_golden(a) || a == Rational(2));
        const Rational floor_t = max(min(Rational(3) / a.pow(2), Rational(5) / a.pow(3)), 1);
        const Rational t = floor_t + uniform_rational(0, 10, 1000);
        bool pass = classify(t, a).verdict == Verdict::NotComplete;
        const auto gap = corollary_witness(t, a);
        pass = pass && gap && gap_holds(t, a, gap->m, gap->r) && !brute_representable(t, a, gap->m);
        if (pass) {
            const auto chain = folkman_chain(t, a, gap->m, gap->r, kChainLength);
            pass = chain.size() == kChainLength;
            const auto seq = prefix(t, a, gap->r + 2 * kChainLength + 1);
            BigInt expected = gap->m;
            for (std::size_t j = 0; pass && j < chain.size(); ++j) {
                expected += seq.s(gap->r + 2 * (j + 1) + 1);
                pass = chain[j] == expected && !brute_representable(t, a, chain[j]);
            }
        }
        if (pass) {
            ++ok;
        } else if (first_bad.empty()) {
            first_bad = " first failure t=" + t.str() + " alpha=" + a.str();
        }
    }
    return {ok == kWitnessPairs, std::to_string(ok) + "/" + std::to_string(kWitnessPairs) + " pairs" + first_bad};
}

// ---- criterion 5 ---------------------------------------------------------

bool block_construction(long t_int, std::string& why) {
    const Rational t(t_int);
    const BigInt v = t.ceil();
    const BigInt w = ceil_sqrt(t);
    const Rational alpha = Rational(1) + Rational(BigInt(1), BigInt(v + 2 * w));
    const BigInt top = v + 2 * w;

    std::vector<BigInt> terms;
    std::size_t r = 0;
    for (std::size_t n = 1; r == 0; ++n) {
        terms.push_back(term(t, alpha, n));
        if (terms.back() == top) r = n;
        if (terms.back() > top) {
            why = "no term equals v + 2w";
            return false;
        }
    }
    for (BigInt m = v; m <= top; ++m) {
        if (std::find(terms.begin(), terms.end(), m) == terms.end()) {
            why = "block element " + m.get_str() + " missing";
            return false;
        }
    }
    const BigInt x = v * w + w * (w - 1) / 2;
    const auto bc = block_cert(t, alpha);
    if (!bc || bc->v != v || bc->w != w || bc->x != x) {
        why = "block certificate disagrees";
        return false;
    }

    std::vector<std::uint64_t> values;
    for (const auto& s : terms) values.push_back(to_u64(s));
    const auto bits = subset_sums(values);
    auto covered = [&](const BigInt& lo, const BigInt& hi) {
        for (BigInt m = lo; m <= hi; ++m) {
            if (!bits.test(to_u64(m))) return false;
        }
        return true;
    };
    const BigInt lo1 = x;
    const BigInt hi1 = x + w + w * w;
    const BigInt lo2 = x + v + w;
    const BigInt hi2 = x + v + 2 * w + w * w;
    if (!covered(lo1, hi1) || !covered(lo2, hi2)) {
        why = "sum range not representable";
        return false;
    }
    const BigInt next = term(t, alpha, r + 1);
    // The union is one interval from X when the second range starts by hi1 + 1.
    if (lo2 > hi1 + 1 || x + next - 1 > hi2) {
        why = "union does not contain [X, X + s_{r+1})";
        return false;
    }
    return true;
}

Outcome block_suite() {
    int ok = 0;
    std::string first_bad;
    for (long t = 1; t <= 50; ++t) {
        std::string why;
        if (block_construction(t, why)) {
            ++ok;
        } else if (first_bad.empty()) {
            first_bad = " first failure t=" + std::to_string(t) + ": " + why;
        }
    }
    return {ok == 50, std::to_string(ok) + "/50 values of t" + first_bad};
}

// ---- criterion 6 ---------------------------------------------------------

Outcome oracle_equivalence() {
    int equal = 0;
    for (int i = 0; i < kOracleTrials; ++i) {
        std::vector<std::uint64_t> values(static_cast<std::size_t>(uniform_int(0, 15)));
        for (auto& v : values) v = static_cast<std::uint64_t>(uniform_int(1, 50));
        const auto members = subset_sums(values).members();
        if (std::set<std::uint64_t>(members.begin(), members.end()) == naive_subset_sums(values)) ++equal;
    }
    return {equal == kOracleTrials, std::to_string(equal) + "/" + std::to_string(kOracleTrials) + " equal"};
}

// ---- criterion 7 ---------------------------------------------------------

Rect rect_of(const json& r) {
    return Rect{Rational::parse(r["t_lo"].get<std::string>()), Rational::parse(r["t_hi"].get<std::string>()),
                Rational::parse(r["a_lo"].get<std::string>()), Rational::parse(r["a_hi"].get<std::string>())};
}

// Whether target lies inside the union of rects, by elementary cells.
bool union_covers(const Rect& target, const std::vector<Rect>& rects) {
    if (!target.valid()) return false;
    std::set<Rational> ts{target.t_lo, target.t_hi};
    std::set<Rational> as{target.a_lo, target.a_hi};
    for (const auto& r : rects) {
        for (const auto& v : {r.t_lo, r.t_hi}) {
            if (target.t_lo < v && v < target.t_hi) ts.insert(v);
        }
        for (const auto& v : {r.a_lo, r.a_hi}) {
            if (target.a_lo < v && v < target.a_hi) as.insert(v);
        }
    }
    const std::vector<Rational> tv(ts.begin(), ts.end());
    const std::vector<Rational> av(as.begin(), as.end());
    auto mid = [](const std::vector<Rational>& v, std::size_t i) {
        return v.size() == 1 ? v[0] : (v[i] + v[i + 1]) / Rational(2);
    };
    const std::size_t nt = std::max<std::size_t>(1, tv.size() - 1);
    const std::size_t na = std::max<std::size_t>(1, av.size() - 1);
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            const Rational t = mid(tv, i);
            const Rational a = mid(av, j);
            if (std::none_of(rects.begin(), rects.end(), [&](const Rect& r) { return r.contains(t, a); })) {
                return false;
            }
        }
    }
    return true;
}

// Semantic validity of one rectangle entry: the stated overlap holds at every
// point, and every dummy value the rectangle can take has a correct run.
bool rect_semantically_valid(const json& jr) {
    const Rect r = rect_of(jr);
    if (!r.valid() || r.t_lo < Rational(1) || r.a_lo <= Rational(1) || at_least_golden(r.a_hi)) return false;
    const std::size_t n = jr["N"];
    const auto low = prefix(r.t_lo, r.a_lo, n);
    const auto high = prefix(r.t_hi, r.a_hi, n);

    std::vector<std::pair<std::size_t, std::uint64_t>> overlap;
    for (const auto& e : jr["overlap"]) overlap.emplace_back(e[0].get<std::size_t>(), e[1].get<std::uint64_t>());
    if (overlap.empty()) return false;
    for (std::size_t k = 0; k < overlap.size(); ++k) {
        const auto [i, v] = overlap[k];
        if (i < 1 || i > n || (k > 0 && i <= overlap[k - 1].first)) return false;
        if (low.s(i) != v || high.s(i) != v) return false;
    }
    const std::uint64_t last = overlap.back().second;
    std::vector<std::uint64_t> base;
    for (std::size_t k = 0; k + 1 < overlap.size(); ++k) {
        if (overlap[k].second > 0) base.push_back(overlap[k].second);
    }

    auto run_ok = [&](std::vector<std::uint64_t> elements, std::uint64_t length,
                      const std::optional<std::uint64_t>& d) {
        for (const auto& w : jr["witnesses"]) {
            const std::optional<std::uint64_t> sd =
                w["s_dummy"].is_null() ? std::nullopt : std::optional<std::uint64_t>(w["s_dummy"]);
            if (sd != d) continue;
            const std::uint64_t x = w["X"];
            const std::uint64_t l = w["L"];
            if (x == 0 || l < length) continue;
            const auto bits = subset_sums(elements, x + l);
            if (bits.next_clear(x) >= x + l) return true;
        }
        return false;
    };

    if (jr["dummy"].is_null()) return run_ok(base, last, std::nullopt);
    const std::size_t i0 = jr["dummy"]["i0"];
    if (i0 < 1 || i0 > n) return false;
    if (std::any_of(overlap.begin(), overlap.end(), [&](const auto& e) { return e.first == i0; })) return false;
    for (BigInt d = low.s(i0); d <= high.s(i0); ++d) {
        const std::uint64_t dv = to_u64(d);
        std::vector<std::uint64_t> elements = base;
        if (std::min(dv, last) > 0) elements.push_back(std::min(dv, last));
        if (!run_ok(elements, std::max(dv, last), dv)) return false;
    }
    return true;
}

Outcome verifier_fuzzing() {
    const Region region = Region::parse(kFuzzRegion);
    TileOptions options;
    options.max_depth = kFuzzDepth;
    const auto cert = tile(region, options);
    const json original = json::parse(certificate_to_json(cert));
    if (!verify::verify(verify::parse_certificate(original.dump()), region).overall()) {
        return {false, "baseline certificate does not verify"};
    }
    std::vector<Rect> original_rects;
    for (const auto& r : original["rects"]) original_rects.push_back(rect_of(r));

    int rejected = 0;
    int still_valid = 0;
    int silent = 0;
    int no_counterexample = 0;
    std::map<std::string, int> kinds;
    const char* const corners[] = {"t_lo", "t_hi", "a_lo", "a_hi"};
    for (int k = 0; k < kMutations; ++k) {
        json mutated = original;
        const auto idx = static_cast<std::size_t>(uniform_int(0, static_cast<long>(original["rects"].size()) - 1));
        json& r = mutated["rects"][idx];
        const long delta = uniform_int(0, 1) == 0 ? -1 : 1;
        std::string kind;
        switch (uniform_int(0, 4)) {
            case 0: {
                const char* field = corners[uniform_int(0, 3)];
                const Rect rc = rect_of(r);
                const Rational width = std::string(field).front() == 't' ? rc.t_hi - rc.t_lo : rc.a_hi - rc.a_lo;
                const Rational step = width / Rational(1L << uniform_int(0, 6));
                const Rational value = Rational::parse(r[field].get<std::string>()) + (delta < 0 ? -step : step);
                r[field] = value.str();
                kind = "corner";
                break;
            }
            case 1: {
                auto& e = r["overlap"][static_cast<std::size_t>(uniform_int(0, static_cast<long>(r["overlap"].size()) - 1))];
                e[1] = std::max<std::int64_t>(0, e[1].get<std::int64_t>() + delta);
                kind = "overlap";
                break;
            }
            case 2: {
                if (r["dummy"].is_null()) {
                    r["dummy"] = json{{"i0", r["overlap"].back()[0].get<std::size_t>() + 1}, {"lo", 1}, {"hi", 1}};
                    kind = "dummy-added";
                } else {
                    const char* bound = uniform_int(0, 1) == 0 ? "lo" : "hi";
                    r["dummy"][bound] = std::max<std::int64_t>(0, r["dummy"][bound].get<std::int64_t>() + delta);
                    kind = "dummy";
                }
                break;
            }
            case 3: {
                auto& w = r["witnesses"][static_cast<std::size_t>(uniform_int(0, static_cast<long>(r["witnesses"].size()) - 1))];
                w["X"] = std::max<std::int64_t>(0, w["X"].get<std::int64_t>() + delta * uniform_int(1, 3));
                kind = "X";
                break;
            }
            default: {
                auto& w = r["witnesses"][static_cast<std::size_t>(uniform_int(0, static_cast<long>(r["witnesses"].size()) - 1))];
                w["L"] = std::max<std::int64_t>(0, w["L"].get<std::int64_t>() + delta * uniform_int(1, 3));
                kind = "L";
                break;
            }
        }
        ++kinds[kind];

        std::vector<Rect> rects = original_rects;
        bool semantic = true;
        try {
            rects[idx] = rect_of(r);
            semantic = union_covers(original_rects[idx], rects) && rect_semantically_valid(r);
        } catch (const std::exception&) {
            semantic = false;
        }

        verify::VerifyReport rep;
        try {
            rep = verify::verify(verify::parse_certificate(mutated.dump()), region);
        } catch (const ParseError&) {
            ++rejected;
            continue;
        }
        if (rep.overall()) {
            if (semantic) {
                ++still_valid;
            } else {
                ++silent;
            }
            continue;
        }
        ++rejected;
        const bool example = (!rep.coverage.pass && rep.coverage.point) ||
                             (!rep.corners.pass && rep.corners.rect_index) || (!rep.lemma.pass && rep.lemma.rect_index);
        if (!example) ++no_counterexample;
    }
    std::ostringstream d;
    d << kMutations << " mutations: " << rejected << " rejected, " << still_valid << " still valid, " << silent
      << " silent acceptances, " << no_counterexample << " rejections without counterexample;";
    for (const auto& [kind, count] : kinds) d << ' ' << kind << '=' << count;
    return {silent == 0 && no_counterexample == 0, d.str()};
}

}  // namespace

int main() {
    bool all = true;
    all &= report(1, "closed-form frontier reproduction", kBudgetFrontier, frontier_reproduction);
    all &= report(2, "small-alpha region certificate", kBudgetSmallAlpha, small_alpha_region);
    all &= report(3, "1.3 < alpha <= 1.4, t <= 3 certificate", kBudgetBand, band_region);
    all &= report(4, "non-completeness witness suite", kBudgetWitness, witness_suite);
    all &= report(5, "consecutive-block construction", kBudgetBlock, block_suite);
    all &= report(6, "subset-sum oracle equivalence", kBudgetWitness, oracle_equivalence);
    all &= report(7, "adversarial verifier fuzzing", kBudgetBand, verifier_fuzzing);
    all &= report(8, "tiling determinism across job counts", kBudgetBand, determinism);
    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return all ? 0 : 1;
}
