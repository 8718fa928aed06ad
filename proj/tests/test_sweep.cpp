#include <gtest/gtest.h>

#include "hourscap/error.hpp"
#include "hourscap/sweep.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

using namespace hourscap;
using hourscap::testing::Draw;
using hourscap::testing::reference;

namespace {

SweepCell cell(double relief, double d_inf, bool valid = true) {
    SweepCell c;
    c.relief = relief;
    c.d_informality_pp = d_inf;
    c.valid = valid;
    return c;
}

}  // namespace

TEST(SweepSpec, DefaultGrids) {
    const auto h = SweepSpec::defaults(SweepKind::hours_curve);
    ASSERT_EQ(h.hours.size(), 15u);
    EXPECT_EQ(h.hours.front(), 30);
    EXPECT_EQ(h.hours.back(), 44);
    const auto m = SweepSpec::defaults(SweepKind::heatmap);
    EXPECT_EQ(m.sigma_sub.size(), 9u);
    EXPECT_EQ(m.relief.size(), 9u);
    EXPECT_EQ(m.sigma_sub.front(), 0.75);
    EXPECT_EQ(m.sigma_sub.back(), 2.75);
    EXPECT_NEAR(m.relief.back(), 0.8, 1e-15);
    const auto f = SweepSpec::defaults(SweepKind::frontier);
    EXPECT_EQ(f.sigma_sub.size(), 5u);
    EXPECT_EQ(f.relief, m.relief);
}

TEST(SweepSpec, ValidationNamesField) {
    auto s = SweepSpec::defaults(SweepKind::heatmap);
    s.relief = {0.0, 0.5, 1.0};
    try {
        validate(s, reference());
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.path(), "sweep.relief[2]");
    }
    s = SweepSpec::defaults(SweepKind::heatmap);
    s.sigma_sub = {1.0, 0.5, 0.7};
    EXPECT_THROW(validate(s, reference()), ValidationError);
    s.sigma_sub = {};
    EXPECT_THROW(validate(s, reference()), ValidationError);
    auto h = SweepSpec::defaults(SweepKind::hours_curve);
    h.hours.push_back(50);
    EXPECT_THROW(validate(h, reference()), ValidationError);
}

TEST(HoursCurve, NonBindingPointIsZero) {
    auto s = SweepSpec::defaults(SweepKind::hours_curve);
    s.hours = {44};
    const auto r = hours_curve(reference(), s);
    ASSERT_EQ(r.cells.size(), 1u);
    EXPECT_TRUE(r.cells[0].valid);
    EXPECT_EQ(r.cells[0].a_req_terminal_pct, 0.0);
}

TEST(HoursCurve, ReferenceRequirementFallsWithTheCap) {
    const auto r = hours_curve(reference(), SweepSpec::defaults(SweepKind::hours_curve));
    for (std::size_t i = 1; i < r.cells.size(); ++i) {
        ASSERT_TRUE(r.cells[i].valid);
        EXPECT_LT(r.cells[i].a_req_terminal_pct, r.cells[i - 1].a_req_terminal_pct);
    }
}

TEST(HoursCurve, NonIncreasingInCapOnRandomDraws) {
    Draw d(hourscap::testing::test_seed() + 50);
    for (int i = 0; i < 6; ++i) {
        EconomyParams e = d.economy();
        // Mild fatigue, so a shorter week never raises output per worker.
        e.fatigue.kappa = d.uniform(0, 3e-4);
        for (auto& g : e.groups) g.mixture = HoursMixture::make({{36, 0.3}, {40, 0.3}, {44, 0.4}});
        auto s = SweepSpec::defaults(SweepKind::hours_curve);
        s.horizon = 6;
        const auto r = hours_curve(e, s);
        for (std::size_t k = 1; k < r.cells.size(); ++k) {
            if (!r.cells[k].valid || !r.cells[k - 1].valid) continue;
            EXPECT_LE(r.cells[k].a_req_terminal_pct, r.cells[k - 1].a_req_terminal_pct + 1e-9) << "draw " << i;
        }
    }
}

TEST(Heatmap, DegenerateGridMatchesSinglePair) {
    SweepSpec s = SweepSpec::defaults(SweepKind::heatmap);
    s.sigma_sub = {reference().sigma_sub};
    s.relief = {0.0};
    const auto r = heatmap(reference(), s);
    const auto run = run_and_measure(reference(), PairSetup{});
    ASSERT_EQ(r.cells.size(), 1u);
    EXPECT_EQ(r.cells[0].a_req_terminal_pct, run.report.a_req_terminal_pct);
    EXPECT_EQ(r.cells[0].d_informality_pp, run.report.terminal.d_informality_pp);
    EXPECT_EQ(r.cells[0].dY_pct, run.report.terminal.dY_pct);
}

TEST(Heatmap, CellsArePureFunctionsOfTheirCoordinates) {
    const SweepSpec s = SweepSpec::defaults(SweepKind::heatmap);
    const auto r = heatmap(reference(), s);
    ASSERT_EQ(r.cells.size(), 81u);
    Draw d(hourscap::testing::test_seed() + 51);
    for (int k = 0; k < 5; ++k) {
        const auto& c = r.cells[static_cast<std::size_t>(d.integer(0, 80))];
        EconomyParams e = reference();
        e.sigma_sub = c.sigma_sub;
        const auto run = run_and_measure(e, PairSetup{s.horizon, s.hbar_base, s.hbar_cap, c.relief});
        EXPECT_EQ(c.a_req_terminal_pct, run.report.a_req_terminal_pct);
        EXPECT_EQ(c.d_informality_pp, run.report.terminal.d_informality_pp);
    }
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
    const SweepSpec s = SweepSpec::defaults(SweepKind::frontier);
    const auto one = run_sweep(reference(), s, 1);
    const auto many = run_sweep(reference(), s, 4);
    EXPECT_EQ(one, many);
    ASSERT_EQ(one.crossings.size(), s.sigma_sub.size());
}

TEST(ZeroCrossing, InterpolatesFirstSignChange) {
    const std::vector<SweepCell> curve{cell(0.0, 2.0), cell(0.1, 1.0), cell(0.2, -1.0), cell(0.3, -3.0)};
    const auto z = zero_crossing(curve);
    ASSERT_TRUE(z);
    EXPECT_NEAR(*z, 0.15, 1e-15);
}

TEST(ZeroCrossing, MissingCellBreaksBracket) {
    const std::vector<SweepCell> curve{cell(0.0, 2.0), cell(0.1, 0.0, false), cell(0.2, -1.0)};
    EXPECT_FALSE(zero_crossing(curve));
    const std::vector<SweepCell> positive{cell(0.0, 2.0), cell(0.1, 1.0)};
    EXPECT_FALSE(zero_crossing(positive));
    const std::vector<SweepCell> touches{cell(0.0, 2.0), cell(0.1, 0.0)};
    EXPECT_EQ(zero_crossing(touches), 0.1);
}
