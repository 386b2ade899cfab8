#include <doctest.h>

#include <map>

#include "completeness/plot.hpp"

using namespace completeness;

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("two by two plot of one verdict") {
    PlotSpec spec;
    spec.box = Rect{Rational(1, 10), Rational(1, 5), Rational(11, 10), Rational(6, 5)};
    spec.resolution = 2;
    const auto grid = classify_grid(spec);
    for (const auto v : grid.verdicts) CHECK(v == Verdict::EntirelyComplete);
    const auto svg = render_plot(spec, grid);
    CHECK(svg.starts_with("<?xml version=\"1.0\""));
    CHECK(svg.ends_with("</svg>\n"));
    // Four cells plus one legend swatch in this colour.
    CHECK(count(svg, "fill=\"" + verdict_color(Verdict::EntirelyComplete) + "\"") == 5);
    CHECK(count(svg, "<text") >= 5);
    CHECK(svg.find("id=\"certificate\"") == std::string::npos);
}

TEST_CASE("overlay draws one outline per rectangle") {
    PlotSpec spec;
    spec.box = Rect{Rational(1), Rational(2), Rational(13, 10), Rational(7, 5)};
    spec.resolution = 3;
    spec.overlay = {Rect{Rational(1), Rational(3, 2), Rational(13, 10), Rational(27, 20)},
                    Rect{Rational(3, 2), Rational(2), Rational(13, 10), Rational(27, 20)},
                    Rect{Rational(1), Rational(2), Rational(27, 20), Rational(7, 5)}};
    const auto svg = render_plot(spec, classify_grid(spec));
    const auto start = svg.find("<g id=\"certificate\"");
    REQUIRE(start != std::string::npos);
    const auto end = svg.find("</g>", start);
    CHECK(count(svg.substr(start, end - start), "<rect") == 3);
}

TEST_CASE("plot cells follow classify at the cell centre") {
    PlotSpec spec;
    spec.box = Rect{Rational(1, 10), Rational(2), Rational(101, 100), Rational(199, 100)};
    spec.resolution = 20;
    const auto grid = classify_grid(spec, 2);
    for (unsigned j = 0; j < 20; ++j) {
        for (unsigned i = 0; i < 20; ++i) {
            const auto [t, a] = cell_center(spec, i, j);
            CHECK(grid.at(i, j) == classify(t, a).verdict);
        }
    }
    CHECK_THROWS_AS(render_plot(spec, ClassificationGrid{}), PreconditionError);
    spec.resolution = 1;
    CHECK_THROWS_AS(classify_grid(spec), PreconditionError);
}

TEST_CASE("frontier map snapshot") {
    PlotSpec spec;
    spec.box = Rect{Rational(1, 10), Rational(2), Rational(101, 100), Rational(199, 100)};
    spec.resolution = 200;
    const auto grid = classify_grid(spec, 4);
    std::map<Verdict, int> tally;
    for (const auto v : grid.verdicts) ++tally[v];
    const auto svg = render_plot(spec, grid);
    CHECK(tally[Verdict::EntirelyComplete] == 20768);
    CHECK(tally[Verdict::CompleteNotEntirely] == 1153);
    CHECK(tally[Verdict::NotComplete] == 7827);
    CHECK(tally[Verdict::Unknown] == 4837);
    CHECK(tally[Verdict::KnownExternally] == 5415);
    CHECK(fnv1a(svg) == 12606811675437372756ULL);
}
