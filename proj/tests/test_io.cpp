#include "support.hpp"

#include "whframe/io.hpp"

#include <gtest/gtest.h>

using namespace whframe;
using testing_support::Gen;

TEST(WindowJson, RoundTripsExactly)
{
    Gen gen(81);
    for (int i = 0; i < 100; ++i) {
        const PiecewiseFn f = gen.window({5, 1, true, 7, 3});
        const json j = to_json(f);
        EXPECT_EQ(window_from_json(j), f);
        EXPECT_EQ(window_from_json_text(j.dump()), f);
    }
    EXPECT_EQ(window_from_json(to_json(PiecewiseFn{})), PiecewiseFn{});
}

TEST(WindowJson, AcceptsSparsePieces)
{
    const PiecewiseFn f = window_from_json_text(R"({"breakpoints": ["0", "1", "2"], "pieces": [{"c0re": "1"}, {"c0re": "3/4"}]})");
    EXPECT_EQ(f, windows::paper_eps(Rat(1, 4)));
    const PiecewiseFn h = window_from_json_text(R"({"breakpoints": [0, "1/2"], "pieces": [{"c1im": 2}]})");
    EXPECT_EQ(h(Rat(1, 4)), CRat(Rat(0), Rat(1, 2)));
}

TEST(WindowJson, ErrorsNameTheField)
{
    const std::vector<std::pair<std::string, std::string>> cases = {
        {R"({"pieces": []})", "window.breakpoints"},
        {R"({"breakpoints": ["0", "1"], "pieces": [{"c0re": "x"}]})", "window.pieces[0].c0re"},
        {R"({"breakpoints": ["0", "1"], "pieces": [{"c2re": "1"}]})", "window.pieces[0].c2re"},
        {R"({"breakpoints": ["0", "1/0"], "pieces": [{}]})", "window.breakpoints[1]"},
        {R"({"breakpoints": ["1", "0"], "pieces": [{}]})", "window.breakpoints[1]"},
        {R"({"breakpoints": ["0", "1"], "pieces": []})", "window.pieces"},
        {R"([1, 2])", "window"},
    };
    for (const auto& [text, field] : cases) {
        try {
            window_from_json_text(text);
            ADD_FAILURE() << "accepted " << text;
        } catch (const FormatError& e) {
            EXPECT_EQ(e.field(), field) << text << ": " << e.what();
        }
    }
    EXPECT_THROW(window_from_json_text("{not json"), FormatError);
}

TEST(Builtins, NamesResolveAndParamsAreChecked)
{
    for (const auto& name : windows::builtin_names()) EXPECT_FALSE(builtin_window(name).is_zero()) << name;
    EXPECT_EQ(builtin_window("paper_eps", {{"eps", Rat(1, 2)}}), windows::paper_eps(Rat(1, 2)));
    EXPECT_THROW(builtin_window("nope"), std::invalid_argument);
    EXPECT_THROW(builtin_window("indicator", {{"eps", Rat(1, 2)}}), std::invalid_argument);
}

TEST(ReportJson, SerializesAndReparses)
{
    const PiecewiseFn g = windows::paper_eps(Rat(1, 4));
    const Certificate c = certify_cross_term(g, windows::double_indicator(), 1, 1, Rat(1, 16), Rat(49, 16));
    const json cj = json::parse(to_json(c).dump());
    EXPECT_EQ(cj["verdict"], "failed");
    EXPECT_EQ(cj["hypothesis_values"]["R_minus_A"]["lo"], "0");
    EXPECT_TRUE(cj["hypothesis_values"]["R_minus_A"]["exact"].get<bool>());

    const json fb = json::parse(to_json(walnut_bounds(GaborSystem{g, 1, 1})).dump());
    EXPECT_EQ(fb["lower"], "1/16");
    EXPECT_EQ(fb["kind"], "certified");

    const json sj = json::parse(to_json(scenario_half_indicator()).dump());
    EXPECT_TRUE(sj["passed"].get<bool>());
    EXPECT_FALSE(sj["claims"].empty());

    const json gs = g_series_summary(correlations(GaborSystem{g, 1, 1}));
    EXPECT_TRUE(gs.is_array() || gs.is_object());
}
