#include "completeness/plot.hpp"

#include <array>
#include <atomic>
#include <cstdio>
#include <thread>

namespace completeness {

namespace {

constexpr double kPlotSize = 600.0;
constexpr double kMargin = 50.0;
constexpr double kLegendWidth = 220.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

constexpr std::array<Verdict, 5> kLegendOrder = {Verdict::EntirelyComplete, Verdict::CompleteNotEntirely,
                                                 Verdict::NotComplete, Verdict::Unknown,
                                                 Verdict::KnownExternally};

}  // namespace

std::pair<Rational, Rational> cell_center(const PlotSpec& spec, unsigned t_index, unsigned a_index) {
    const Rational res(static_cast<long>(spec.resolution));
    const Rational dt = (spec.box.t_hi - spec.box.t_lo) / res;
    const Rational da = (spec.box.a_hi - spec.box.a_lo) / res;
    const Rational half(1, 2);
    return {spec.box.t_lo + dt * (Rational(static_cast<long>(t_index)) + half),
            spec.box.a_lo + da * (Rational(static_cast<long>(a_index)) + half)};
}

ClassificationGrid classify_grid(const PlotSpec& spec, unsigned jobs) {
    if (spec.resolution < 2) throw PreconditionError("plot resolution must be at least 2");
    ClassificationGrid grid{spec.resolution, std::vector<Verdict>(std::size_t{spec.resolution} * spec.resolution)};
    const std::size_t count = grid.verdicts.size();
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) {
            const auto i = static_cast<unsigned>(k % spec.resolution);
            const auto j = static_cast<unsigned>(k / spec.resolution);
            const auto [t, a] = cell_center(spec, i, j);
            grid.verdicts[k] = classify(t, a, spec.cells).verdict;
        }
    };
    if (jobs <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work);
    }
    return grid;
}

std::string verdict_color(Verdict v) {
    switch (v) {
        case Verdict::EntirelyComplete: return "#2b8cbe";
        case Verdict::CompleteNotEntirely: return "#7bccc4";
        case Verdict::NotComplete: return "#e34a33";
        case Verdict::Unknown: return "#d9d9d9";
        case Verdict::KnownExternally: return "#fdbb84";
    }
    return "#000000";
}

std::string render_plot(const PlotSpec& spec, const ClassificationGrid& grid) {
    if (grid.resolution != spec.resolution || grid.verdicts.size() != std::size_t{grid.resolution} * grid.resolution) {
        throw PreconditionError("grid does not match plot resolution");
    }
    const double cell = kPlotSize / spec.resolution;
    const double t0 = spec.box.t_lo.approx();
    const double t1 = spec.box.t_hi.approx();
    const double a0 = spec.box.a_lo.approx();
    const double a1 = spec.box.a_hi.approx();
    const double tw = t1 > t0 ? t1 - t0 : 1.0;
    const double aw = a1 > a0 ? a1 - a0 : 1.0;
    auto x_of = [&](double t) { return kMargin + (t - t0) / tw * kPlotSize; };
    auto y_of = [&](double a) { return kMargin + kPlotSize - (a - a0) / aw * kPlotSize; };

    std::string out;
    out.reserve(std::size_t{grid.resolution} * grid.resolution * 90 + 4096);
    const double width = 2 * kMargin + kPlotSize + kLegendWidth;
    const double height = 2 * kMargin + kPlotSize;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(width) + "\" height=\"" +
           fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
    out += "<title>Completeness of floor(t alpha^n) for t in [" + spec.box.t_lo.str() + ", " + spec.box.t_hi.str() +
           "], alpha in [" + spec.box.a_lo.str() + ", " + spec.box.a_hi.str() + "]</title>\n";
    out += "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
    for (unsigned j = 0; j < grid.resolution; ++j) {
        for (unsigned i = 0; i < grid.resolution; ++i) {
            const double x = kMargin + i * cell;
            const double y = kMargin + kPlotSize - (j + 1) * cell;
            out += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(cell) + "\" height=\"" +
                   fmt(cell) + "\" fill=\"" + verdict_color(grid.at(i, j)) + "\"/>\n";
        }
    }
    out += "</g>\n";

    if (!spec.overlay.empty()) {
        out += "<g id=\"certificate\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.5\">\n";
        for (const auto& r : spec.overlay) {
            const double x = x_of(r.t_lo.approx());
            const double y = y_of(r.a_hi.approx());
            out += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(x_of(r.t_hi.approx()) - x) +
                   "\" height=\"" + fmt(y_of(r.a_lo.approx()) - y) + "\"/>\n";
        }
        out += "</g>\n";
    }

    // Axes.
    out += "<g id=\"axes\" stroke=\"#000000\" fill=\"none\">\n";
    out += "<rect x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kMargin) + "\" width=\"" + fmt(kPlotSize) + "\" height=\"" +
           fmt(kPlotSize) + "\"/>\n</g>\n";
    out += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(height - 20) + "\">t = " + spec.box.t_lo.str() + "</text>\n";
    out += "<text x=\"" + fmt(kMargin + kPlotSize) + "\" y=\"" + fmt(height - 20) +
           "\" text-anchor=\"end\">t = " + spec.box.t_hi.str() + "</text>\n";
    out += "<text x=\"5\" y=\"" + fmt(kMargin + kPlotSize) + "\">" + spec.box.a_lo.str() + "</text>\n";
    out += "<text x=\"5\" y=\"" + fmt(kMargin + 10) + "\">" + spec.box.a_hi.str() + "</text>\n";
    out += "<text x=\"5\" y=\"" + fmt(kMargin - 15) + "\">alpha</text>\n";
    out += "</g>\n";

    out += "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    double ly = kMargin;
    const double lx = 2 * kMargin + kPlotSize;
    for (const Verdict v : kLegendOrder) {
        out += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(ly) + "\" width=\"14\" height=\"14\" fill=\"" +
               verdict_color(v) + "\" stroke=\"#000000\"/>\n";
        out += "<text x=\"" + fmt(lx + 20) + "\" y=\"" + fmt(ly + 12) + "\">" + to_string(v) + "</text>\n";
        ly += 22;
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace completeness
