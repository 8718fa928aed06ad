#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hourscap/sweep.hpp"

namespace hourscap::io {

// One contour polyline piece in heatmap index space (column, row), where cell
// (r, c) has its center at (c + 0.5, r + 0.5).
struct ContourSegment {
    double level = 0.0;
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

// Marching squares over a row-major grid of cell-center values. Squares that
// touch a missing value (NaN) are skipped.
std::vector<ContourSegment> contour_segments(const std::vector<double>& values, std::size_t rows,
                                             std::size_t cols, const std::vector<double>& levels);

// Round contour levels strictly inside (lo, hi): multiples of a 1/2/5 step
// chosen to give about `target` levels.
std::vector<double> nice_levels(double lo, double hi, int target = 6);

// Static SVG for a sweep: line chart (hours_curve), colored grid with
// labeled iso-A_req contours (heatmap), or one line per sigma_sub with a
// dashed zero line (frontier). Invalid cells are left blank and counted in a
// legend note.
std::string render_svg(const SweepResult& result);

void emit_plot(const SweepResult& result, const std::filesystem::path& path);

}  // namespace hourscap::io
