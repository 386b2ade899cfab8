#pragma once

/// @file plot.hpp
/// @brief Static SVG maps of classify() over a box of the (t, alpha) plane.

#include <optional>
#include <string>
#include <vector>

#include "completeness/classifier.hpp"
#include "completeness/region.hpp"

namespace completeness {

struct PlotSpec {
    Rect box;
    unsigned resolution = 100;               ///< cells per axis, at least 2
    std::vector<Rect> overlay;               ///< drawn as outlines
    const CertifiedCells* cells = nullptr;   ///< passed through to classify()
};

/// Row-major grid, row 0 at the lowest alpha.
struct ClassificationGrid {
    unsigned resolution = 0;
    std::vector<Verdict> verdicts;
    Verdict at(unsigned t_index, unsigned a_index) const { return verdicts[a_index * resolution + t_index]; }
};

/// Centre of cell (i, j): t_lo + (i + 1/2) dt, a_lo + (j + 1/2) da.
std::pair<Rational, Rational> cell_center(const PlotSpec& spec, unsigned t_index, unsigned a_index);

ClassificationGrid classify_grid(const PlotSpec& spec, unsigned jobs = 1);

std::string verdict_color(Verdict v);

std::string render_plot(const PlotSpec& spec, const ClassificationGrid& grid);

}  // namespace completeness
