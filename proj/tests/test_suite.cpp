#include "support.hpp"

#include <gtest/gtest.h>

using namespace whframe;

namespace {

void expect_all_claims(const Scenario& s)
{
    ASSERT_FALSE(s.claims.empty()) << s.name;
    for (const auto& c : s.claims)
        EXPECT_TRUE(c.passed) << s.name << "/" << c.name << ": expected " << c.expected << ", observed " << c.observed;
}

}  // namespace

TEST(Scenarios, EpsilonBoundary)
{
    for (const Rat& eps : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
        const Scenario s = scenario_epsilon_boundary(eps);
        expect_all_claims(s);
        EXPECT_EQ(s.claim("zak_lower_bound").observed, to_string(eps * eps));
        EXPECT_EQ(s.claim("cross_term_sum").observed, to_string(eps * eps));
        EXPECT_EQ(s.claim("R_minus_A").observed, "0");
        EXPECT_EQ(s.claim("cross_term_sum").provenance, Provenance::reference);
    }
}

TEST(Scenarios, HalfIndicator)
{
    const Scenario s = scenario_half_indicator();
    expect_all_claims(s);
    EXPECT_EQ(s.claim("l2_shift_sum").observed, "1/2");
}

TEST(Scenarios, LambdaOne) { expect_all_claims(scenario_lambda_one()); }

TEST(Scenarios, ShrunkIndicator) { expect_all_claims(scenario_shrunk_indicator()); }

TEST(Scenarios, Cantor)
{
    for (long n_max : {2L, 4L, 6L}) expect_all_claims(scenario_cantor(n_max));
    expect_all_claims(scenario_cantor(6, 3));
    EXPECT_EQ(cantor_shifted_parameter(2), Rat(1) - Rat(3, 128));
    EXPECT_THROW(scenario_cantor(1), std::invalid_argument);
    EXPECT_THROW(scenario_cantor(21), std::invalid_argument);
    EXPECT_THROW(scenario_cantor(4, 5), std::invalid_argument);
}

TEST(Scenarios, CantorIntervalsAreDisjointDyadics)
{
    const auto ivs = windows::cantor_intervals(8);
    for (std::size_t i = 0; i < ivs.size(); ++i) {
        EXPECT_LT(ivs[i].first, ivs[i].second);
        EXPECT_EQ(denominator(ivs[i].first) & (denominator(ivs[i].first) - 1), 0);
        for (std::size_t j = i + 1; j < ivs.size(); ++j)
            EXPECT_TRUE(ivs[i].second <= ivs[j].first || ivs[j].second <= ivs[i].first);
    }
}

TEST(Scenarios, RunByNameAndAll)
{
    const auto names = scenario_names();
    EXPECT_EQ(names.size(), 5u);
    EXPECT_EQ(run_scenario("epsilon_boundary").size(), 3u);
    EXPECT_THROW(run_scenario("no_such_scenario"), std::invalid_argument);
    for (const auto& s : run_all_scenarios()) EXPECT_TRUE(s.passed()) << s.name;
}
