#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "hourscap/io/plot.hpp"

using namespace hourscap;
using namespace hourscap::io;

namespace {

SweepCell make_cell(double hbar, double sigma, double relief, double a_req, double d_inf) {
    SweepCell c;
    c.hbar = hbar;
    c.sigma_sub = sigma;
    c.relief = relief;
    c.valid = true;
    c.a_req_terminal_pct = a_req;
    c.d_informality_pp = d_inf;
    return c;
}

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST(NiceLevels, RoundValuesInsideRange) {
    EXPECT_EQ(nice_levels(2.3, 12.4), (std::vector<double>{4, 6, 8, 10, 12}));
    EXPECT_EQ(nice_levels(0.0, 1.0, 5), (std::vector<double>{0.2, 0.4, 0.6000000000000001, 0.8}));
    EXPECT_TRUE(nice_levels(3.0, 3.0).empty());
}

TEST(Contours, SingleSquareCrossing) {
    // 2x2 grid, left column 0, right column 10: the level-5 line is vertical at x = 1.
    const std::vector<double> v{0, 10, 0, 10};
    const auto segs = contour_segments(v, 2, 2, {5.0});
    ASSERT_EQ(segs.size(), 1u);
    EXPECT_DOUBLE_EQ(segs[0].x0, 1.0);
    EXPECT_DOUBLE_EQ(segs[0].x1, 1.0);
    EXPECT_DOUBLE_EQ(std::min(segs[0].y0, segs[0].y1), 0.5);
    EXPECT_DOUBLE_EQ(std::max(segs[0].y0, segs[0].y1), 1.5);
}

TEST(Contours, SaddleGivesTwoSegmentsAndMissingSkips) {
    const std::vector<double> saddle{10, 0, 0, 10};
    EXPECT_EQ(contour_segments(saddle, 2, 2, {5.0}).size(), 2u);
    const std::vector<double> hole{0, 10, std::numeric_limits<double>::quiet_NaN(), 10};
    EXPECT_TRUE(contour_segments(hole, 2, 2, {5.0}).empty());
}

TEST(RenderSvg, SinglePointHoursCurve) {
    SweepResult r;
    r.spec = SweepSpec::defaults(SweepKind::hours_curve);
    r.spec.hours = {44};
    r.cells = {make_cell(44, 1, 0, 0.0, 0.0)};
    const auto svg = render_svg(r);
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_EQ(count(svg, "<circle"), 1u);
    EXPECT_EQ(count(svg, "<polyline"), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(RenderSvg, HeatmapHasContoursAndMissingNote) {
    SweepResult r;
    r.spec = SweepSpec::defaults(SweepKind::heatmap);
    r.spec.sigma_sub = {0.5, 1.0, 1.5};
    r.spec.relief = {0.0, 0.4, 0.8};
    for (double s : r.spec.sigma_sub) {
        for (double rel : r.spec.relief) r.cells.push_back(make_cell(36, s, rel, 10 * s - 10 * rel, 0));
    }
    std::string svg = render_svg(r);
    EXPECT_GT(count(svg, "%</text>"), 2u);
    EXPECT_EQ(svg.find("no valid result"), std::string::npos);
    r.cells[4].valid = false;
    svg = render_svg(r);
    EXPECT_NE(svg.find("no valid result"), std::string::npos);
    EXPECT_NE(svg.find("(1 cell)"), std::string::npos);
}

TEST(RenderSvg, FrontierHasDashedZeroLineAndOneCurvePerSigma) {
    SweepResult r;
    r.spec = SweepSpec::defaults(SweepKind::frontier);
    r.spec.sigma_sub = {1.0, 2.0};
    r.spec.relief = {0.0, 0.1, 0.2};
    for (double s : r.spec.sigma_sub) {
        for (double rel : r.spec.relief) r.cells.push_back(make_cell(36, s, rel, 5, s * (1 - 10 * rel)));
    }
    r.crossings = {{1.0, 0.1}, {2.0, 0.1}};
    const auto svg = render_svg(r);
    EXPECT_GE(count(svg, "stroke-dasharray"), 1u);
    EXPECT_EQ(count(svg, "<polyline"), 2u);
}
