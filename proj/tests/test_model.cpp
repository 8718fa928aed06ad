#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hourscap/error.hpp"
#include "hourscap/model.hpp"
#include "support/generators.hpp"

using namespace hourscap;
using hourscap::testing::Draw;

namespace {

// 40-digit evaluations, rounded to double.
constexpr double kE44 = 0.87985337914464383;       // exp(-0.128)
constexpr double kIndex = 37.904826997815745;      // 10.8 + 8 e(40) + 22 e(44)
constexpr double kLabor50 = 1895.2413498907872;    // 50 * kIndex
constexpr double kInformal10 = 193.56774341182164; // 220 e(44)
constexpr double kCobbDouglas = 8.1225239635623552;
constexpr double kTwoPow033 = 1.2570133745218284;

const FatigueParams kFatigue{0.002, 36.0};

HoursMixture spec_mixture() { return HoursMixture::make({{36, 0.3}, {40, 0.2}, {44, 0.5}}); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

EconomyParams informal_params(double kappa) {
    EconomyParams p;
    p.eta_informal = 0.5;
    p.hours_informal = 44;
    p.fatigue = {kappa, 36.0};
    return p;
}

}  // namespace

TEST(Efficiency, PeaksAtOptimalHours) {
    EXPECT_EQ(efficiency(36, kFatigue), 1.0);
    EXPECT_EQ(efficiency(44, {0.0, 36.0}), 1.0);
    EXPECT_NEAR(efficiency(44, kFatigue), kE44, 1e-15);
}

TEST(Efficiency, DecreasesAwayFromOptimum) {
    Draw d(hourscap::testing::test_seed());
    for (int i = 0; i < 200; ++i) {
        const FatigueParams f{d.uniform(1e-4, 0.01), d.uniform(30, 42)};
        const double a = d.uniform(0, 10), b = a + d.uniform(0.01, 5);
        EXPECT_LE(efficiency(f.h_star + a, f), 1.0);
        EXPECT_GT(efficiency(f.h_star + a, f), efficiency(f.h_star + b, f));
        EXPECT_GT(efficiency(f.h_star - a, f), efficiency(f.h_star - b, f));
    }
}

TEST(CappedHours, Examples) {
    EXPECT_EQ(capped_hours(44, 36), 36);
    EXPECT_EQ(capped_hours(36, 44), 36);
    EXPECT_EQ(capped_hours(40, 40), 40);
}

TEST(FormalHoursIndex, Examples) {
    const auto m = spec_mixture();
    EXPECT_NEAR(formal_hours_index(m, 36, {0.0, 36}), 36.0, 1e-13);
    EXPECT_NEAR(formal_hours_index(m, 44, {0.0, 36}), 40.8, 1e-13);
    EXPECT_NEAR(formal_hours_index(m, 44, kFatigue), kIndex, 1e-13);
}

TEST(FormalHoursIndex, FrozenEfficiencyUsesItsOwnCap) {
    const auto m = spec_mixture();
    // Hours capped at 36 but efficiency evaluated at min(h, 44).
    const double expected = 36 * (0.3 * 1.0 + 0.2 * efficiency(40, kFatigue) + 0.5 * kE44);
    EXPECT_NEAR(formal_hours_index(m, 36, kFatigue, 44.0), expected, 1e-13);
}

TEST(FormalHoursIndex, NonDecreasingInCapAndFlatAboveMaxHour) {
    Draw d(hourscap::testing::test_seed() + 1);
    for (int i = 0; i < 100; ++i) {
        const auto m = d.mixture();
        // h*e(h) only rises while 2*kappa*h*(h - h*) <= 1, which holds on this range
        const FatigueParams f{d.uniform(0, 0.0005), d.uniform(30, 40)};
        double prev = -1.0;
        for (double h = 28; h <= 50; h += 0.5) {
            const double v = formal_hours_index(m, h, f);
            EXPECT_GE(v, prev - 1e-12);
            prev = v;
        }
        EXPECT_EQ(formal_hours_index(m, m.max_hours(), f), formal_hours_index(m, m.max_hours() + 3, f));
    }
}

TEST(EffectiveLabor, Examples) {
    EXPECT_EQ(effective_formal_labor(0, 40.8), 0.0);
    EXPECT_EQ(effective_formal_labor(100, 36), 3600.0);
    EXPECT_NEAR(effective_formal_labor(50, kIndex), kLabor50, 1e-11);
    EXPECT_EQ(effective_informal_labor(0, informal_params(0.002)), 0.0);
    EXPECT_NEAR(effective_informal_labor(10, informal_params(0.0)), 220.0, 1e-12);
    EXPECT_NEAR(effective_informal_labor(10, informal_params(0.002)), kInformal10, 1e-12);
}

TEST(Ces, Examples) {
    EXPECT_NEAR(ces_aggregate(10, 10, 0.5, 0.6), 10.0, 1e-13);
    EXPECT_NEAR(ces_aggregate(10, 10, 0.5, 2.5), 10.0, 1e-13);
    EXPECT_NEAR(ces_aggregate(10, 5, 0.7, 1.0), kCobbDouglas, 1e-14);
    EXPECT_EQ(ces_aggregate(10, 0, 0.7, 0.5), 0.0);
}

TEST(Ces, ZeroInputWithSubstitutesKeepsSurvivingTerm) {
    const double sigma = 2.0, rho = 0.5, omega = 0.7;
    EXPECT_NEAR(ces_aggregate(10, 0, omega, sigma), std::pow(omega, 1 / rho) * 10, 1e-13);
    EXPECT_NEAR(ces_aggregate(0, 10, omega, sigma), std::pow(1 - omega, 1 / rho) * 10, 1e-13);
}

TEST(Ces, CobbDouglasLimitIsContinuous) {
    Draw d(hourscap::testing::test_seed() + 2);
    for (int i = 0; i < 200; ++i) {
        const double lf = d.uniform(1, 5000), li = d.uniform(1, 5000), w = d.uniform(0.05, 0.95);
        const double cd = std::pow(lf, w) * std::pow(li, 1 - w);
        EXPECT_LE(rel(ces_aggregate(lf, li, w, 1 + 1e-6), cd), 1e-5);
        EXPECT_LE(rel(ces_aggregate(lf, li, w, 1 - 1e-6), cd), 1e-5);
    }
}

TEST(Ces, HomogeneousOfDegreeOne) {
    Draw d(hourscap::testing::test_seed() + 3);
    for (int i = 0; i < 500; ++i) {
        const double lf = d.uniform(0.1, 5000), li = d.uniform(0.1, 5000);
        const double w = d.uniform(0.05, 0.95), s = d.uniform(0.2, 5.0), c = d.uniform(0.01, 100);
        EXPECT_LE(rel(ces_aggregate(c * lf, c * li, w, s), c * ces_aggregate(lf, li, w, s)), 1e-10)
            << "lf=" << lf << " li=" << li << " w=" << w << " s=" << s << " c=" << c;
    }
}

TEST(Ces, NonDecreasingInEachInput) {
    Draw d(hourscap::testing::test_seed() + 4);
    for (int i = 0; i < 300; ++i) {
        const double lf = d.uniform(0, 5000), li = d.uniform(0, 5000), dl = d.uniform(0, 100);
        const double w = d.uniform(0.05, 0.95), s = d.uniform(0.2, 5.0);
        const double base = ces_aggregate(lf, li, w, s);
        EXPECT_GE(ces_aggregate(lf + dl, li, w, s), base * (1 - 1e-14));
        EXPECT_GE(ces_aggregate(lf, li + dl, w, s), base * (1 - 1e-14));
    }
}

TEST(Ces, GradientMatchesFiniteDifference) {
    Draw d(hourscap::testing::test_seed() + 5);
    for (int i = 0; i < 100; ++i) {
        const double lf = d.uniform(10, 5000), li = d.uniform(10, 5000);
        const double w = d.uniform(0.1, 0.9), s = d.uniform(0.3, 4.0);
        const auto g = ces_gradient(lf, li, w, s);
        const double h = 1e-4;
        const double df = (ces_aggregate(lf + h, li, w, s) - ces_aggregate(lf - h, li, w, s)) / (2 * h);
        const double di = (ces_aggregate(lf, li + h, w, s) - ces_aggregate(lf, li - h, w, s)) / (2 * h);
        EXPECT_NEAR(g.d_formal, df, 1e-6 * std::max(1.0, std::abs(df)));
        EXPECT_NEAR(g.d_informal, di, 1e-6 * std::max(1.0, std::abs(di)));
    }
}

TEST(Production, Examples) {
    EXPECT_EQ(production(1, 1, 1, 0.33), 1.0);
    EXPECT_EQ(production(1, 1, 0, 0.33), 0.0);
    EXPECT_NEAR(production(1, 2, 1, 0.33), kTwoPow033, 1e-15);
}

TEST(Production, MonotoneAndConstantReturns) {
    Draw d(hourscap::testing::test_seed() + 6);
    for (int i = 0; i < 200; ++i) {
        const double a = d.uniform(0.5, 2), k = d.uniform(1, 1e4), l = d.uniform(1, 1e4), al = d.uniform(0.2, 0.5);
        const double y = production(a, k, l, al);
        EXPECT_GT(production(a * 1.01, k, l, al), y);
        EXPECT_GT(production(a, k * 1.01, l, al), y);
        EXPECT_GT(production(a, k, l * 1.01, al), y);
        const double c = d.uniform(0.1, 10);
        EXPECT_LE(rel(production(a, c * k, c * l, al), c * y), 1e-12);
    }
}

TEST(Costs, Examples) {
    EXPECT_EQ(adjustment_cost(50, 50, 2), 0.0);
    EXPECT_EQ(adjustment_cost(53, 50, 2), 9.0);
    EXPECT_EQ(adjustment_cost(50, 53, 2), 9.0);
    EXPECT_EQ(informal_cost(0, 0.3, 0.4), 0.0);
    EXPECT_NEAR(informal_cost(10, 0.1, 0.2), 11.0, 1e-13);
    EXPECT_EQ(informal_cost(10, 0, 0), 0.0);
    EXPECT_EQ(deadweight(0.2, 100, 0), 0.0);
    EXPECT_NEAR(deadweight(0.2, 100, 1), 20.0, 1e-13);
    EXPECT_NEAR(deadweight(0.2, 100, 0.5), 10.0, 1e-13);
}

TEST(Consumption, Examples) {
    const std::vector<ResourceUse> one{{100, 0, 0, 0}};
    EXPECT_EQ(consumption(one), 100.0);
    const std::vector<ResourceUse> costly{{100, 10, 9, 11}};
    EXPECT_EQ(consumption(costly), 70.0);
    const std::vector<ResourceUse> two{{70, 0, 0, 0}, {30, 0, 0, 0}};
    EXPECT_EQ(consumption(two), 100.0);
}

TEST(Consumption, EqualsComponentIdentity) {
    Draw d(hourscap::testing::test_seed() + 7);
    for (int i = 0; i < 200; ++i) {
        const std::vector<ResourceUse> g{{d.uniform(0, 1e4), d.uniform(0, 50), d.uniform(0, 50), d.uniform(0, 50)},
                                         {d.uniform(0, 1e4), d.uniform(0, 50), d.uniform(0, 50), d.uniform(0, 50)}};
        double expected = 0.0;
        for (const auto& r : g) expected += r.output - r.deadweight - r.adjustment - r.informal_cost;
        EXPECT_EQ(consumption(g), expected);
    }
}

TEST(Mixture, RejectsBadSimplex) {
    EXPECT_THROW(HoursMixture::make({{36, 0.3}, {40, 0.2}, {44, 0.49}}), ValidationError);
    EXPECT_THROW(HoursMixture::make({{36, 0.5}, {36, 0.5}}), ValidationError);
    EXPECT_THROW(HoursMixture::make({{36, -0.1}, {40, 1.1}}), ValidationError);
    EXPECT_THROW(HoursMixture::make({}), ValidationError);
    try {
        HoursMixture::make({{36, 0.3}, {40, 0.2}, {44, 0.49}});
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.path().rfind("mixture", 0), 0u);
    }
}

TEST(Mixture, SortsByHours) {
    const auto m = HoursMixture::make({{44, 0.5}, {36, 0.3}, {40, 0.2}});
    ASSERT_EQ(m.size(), 3u);
    EXPECT_EQ(m.points()[0].hours, 36);
    EXPECT_EQ(m.max_hours(), 44);
}

TEST(Validate, NamesTheOffendingField) {
    Draw d(hourscap::testing::test_seed() + 8);
    EconomyParams p = d.economy();
    EXPECT_NO_THROW(validate(p));
    p.omega = 1.2;
    try {
        validate(p);
        FAIL() << "omega = 1.2 accepted";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.path(), "economy.omega");
        EXPECT_NE(std::string(e.what()).find("(0, 1)"), std::string::npos) << e.what();
    }
}

TEST(Domain, RejectsNonFiniteInputs) {
    EXPECT_THROW(efficiency(std::nan(""), kFatigue), DomainError);
    EXPECT_THROW(effective_formal_labor(-1, 40), DomainError);
    EXPECT_THROW(ces_aggregate(-1, 1, 0.5, 1), DomainError);
}
