#pragma once

// Counterexamples and sharpness demonstrations as self-checking scenarios.
// Each claim is evaluated by calling the other modules and compared to an
// expected value with a stated provenance.

#include "whframe/oracle.hpp"
#include "whframe/perturb.hpp"
#include "whframe/walnut.hpp"
#include "whframe/windows.hpp"
#include "whframe/zak.hpp"

#include <string>
#include <vector>

namespace whframe {

enum class Provenance { reference, derived, trivial };

inline const char* to_string(Provenance p)
{
    switch (p) {
    case Provenance::reference: return "reference";
    case Provenance::derived: return "derived";
    case Provenance::trivial: return "trivial";
    }
    return "?";
}

struct Claim {
    std::string name;
    Provenance provenance = Provenance::derived;
    std::string expected;
    std::string observed;
    bool passed = false;
};

struct Scenario {
    std::string name;
    std::string description;
    std::vector<Claim> claims;

    bool passed() const
    {
        for (const auto& c : claims)
            if (!c.passed) return false;
        return !claims.empty();
    }

    const Claim& claim(const std::string& n) const
    {
        for (const auto& c : claims)
            if (c.name == n) return c;
        throw std::out_of_range("Scenario: no claim named " + n);
    }

    void exact(std::string n, Provenance p, const Rat& expected, const Rat& observed)
    {
        claims.push_back({std::move(n), p, to_string(expected), to_string(observed), expected == observed});
    }

    void at_least(std::string n, Provenance p, const Rat& bound, const Rat& observed)
    {
        claims.push_back({std::move(n), p, ">= " + to_string(bound), to_string(observed), observed >= bound});
    }

    void below(std::string n, Provenance p, double bound, double observed)
    {
        claims.push_back({std::move(n), p, "< " + std::to_string(bound), std::to_string(observed), observed < bound});
    }

    void holds(std::string n, Provenance p, std::string expected, std::string observed, bool ok)
    {
        claims.push_back({std::move(n), p, std::move(expected), std::move(observed), ok});
    }
};

struct SuiteOptions {
    long budget = 500;
    long m_max = 2048;
    std::uint64_t seed = 42;
    double near_zero = 0.05;  // rho_min below this counts as "tends to 0"
};

namespace detail {

// Measure of {t in [0, period) : sum_n |g(t - n period)|^2 = 0}.
inline Rat periodic_zero_measure(const PiecewiseFn& g, const Rat& period)
{
    std::vector<Segment> sq;
    for (const auto& s : g.segments()) sq.push_back({s.l, s.r, s.p.norm_sq()});
    return period - periodize(PiecewiseFn::from_segments(sq), period).support_measure();
}

inline OracleReport oracle_for(const PiecewiseFn& g, const Rat& a, const Rat& b, const SuiteOptions& opt,
                               int cells_per_period = 4)
{
    OracleOptions o;
    o.m_max = opt.m_max;
    o.cells_per_period = cells_per_period;
    o.periods = 64 / cells_per_period;
    return empirical_bounds(GaborSystem{g, a, b}, opt.budget, opt.seed, o);
}

}  // namespace detail

/// g = chi_[0,1] + (1-eps) chi_[1,2] against h = chi_[0,2].
inline Scenario scenario_epsilon_boundary(const Rat& eps, const SuiteOptions& = {})
{
    Scenario s{"epsilon_boundary", "g = chi_[0,1] + (1-eps) chi_[1,2], h = chi_[0,2], eps = " + to_string(eps), {}};
    const PiecewiseFn g = windows::paper_eps(eps);
    const PiecewiseFn h = windows::double_indicator();
    const Rat eps2 = eps * eps;

    const FrameBounds zb = zak_frame_bounds(g);
    s.exact("zak_lower_bound", Provenance::reference, eps2, zb.lower);
    s.holds("zak_bounds_certified", Provenance::derived, "certified", to_string(zb.kind), zb.kind == BoundKind::certified);
    s.exact("walnut_lower_bound", Provenance::derived, eps2, walnut_bounds(GaborSystem{g, 1, 1}).lower);

    const PiecewiseFn d = h - g;
    const Enclosure cts = cross_term_sum(cross_correlations(d, d, 1, 1));
    s.holds("cross_term_sum", Provenance::reference, to_string(eps2), to_string(cts), cts.exact() && cts.lo() == eps2);

    const Certificate c = certify_cross_term(g, h, 1, 1, eps2, zb.upper);
    const Enclosure gap = c.value("R_minus_A");
    s.holds("cross_term_test_fails", Provenance::reference, "failed", to_string(c.verdict), c.verdict == Verdict::failed);
    s.holds("R_minus_A", Provenance::reference, "0", to_string(gap), gap.exact() && gap.lo() == 0);

    for (long n = 1; n <= 5; ++n)
        s.exact("alternating_norm_sq_n" + std::to_string(n), Provenance::reference, Rat(2), alternating_norm(h, n).norm_sq);
    return s;
}

/// g = chi_[0,1], h = (1/2) chi_[0,2]: the square-summed shift condition
/// holds with constant 1/2 < A = 1, yet (h, 1, 1) has lower bound 0.
inline Scenario scenario_half_indicator(const SuiteOptions& opt = {})
{
    Scenario s{"half_indicator", "g = chi_[0,1], h = (1/2) chi_[0,2]", {}};
    const PiecewiseFn g = windows::indicator();
    const PiecewiseFn h = windows::half_double();
    const ShiftSums sums = integer_shift_sums(g - h);
    s.holds("l2_shift_sum", Provenance::reference, "1/2", to_string(sums.l2.range()),
            sums.l2.inf.exact() && sums.l2.sup.exact() && sums.l2.inf.lo() == Rat(1, 2) && sums.l2.sup.lo() == Rat(1, 2));
    s.exact("zak_lower_bound_h", Provenance::derived, Rat(0), zak_frame_bounds(h).lower);
    s.exact("walnut_lower_bound_h", Provenance::derived, Rat(0), walnut_bounds(GaborSystem{h, 1, 1}).lower);
    s.below("oracle_rho_min_h", Provenance::derived, opt.near_zero, detail::oracle_for(h, 1, 1, opt).rho_min);
    return s;
}

/// g = chi_[0,1], h = chi_[0,2]: sum_n |(g-h)(x+n)| = 1, so lambda = 1.
inline Scenario scenario_lambda_one(const SuiteOptions& opt = {})
{
    Scenario s{"lambda_one", "g = chi_[0,1], h = chi_[0,2], A = B = 1", {}};
    const PiecewiseFn g = windows::indicator();
    const PiecewiseFn h = windows::double_indicator();
    const Enclosure l1 = integer_shift_sums(g - h).l1_sup;
    s.holds("shift_sum_sup", Provenance::reference, "1", to_string(l1), l1.exact() && l1.lo() == 1);
    const Certificate c = certify_zak(g, h, 1, 1);
    s.holds("zak_test_fails", Provenance::reference, "failed", to_string(c.verdict), c.verdict == Verdict::failed);
    s.holds("lambda", Provenance::reference, "1", to_string(c.value("lambda")), c.value("lambda") == Enclosure(1));
    s.below("oracle_rho_min_h", Provenance::derived, opt.near_zero, detail::oracle_for(h, 1, 1, opt).rho_min);
    return s;
}

/// Uncovered measure of [0,1) after folding the level-n_max set mod 1.
inline Rat cantor_uncovered_measure(long n_max) { return windows::pow2(-(2 * n_max + 2)); }

/// Translation parameter strictly inside (1 - 2^{-(2n+1)}, 1 - 2^{-(2n+2)}).
inline Rat cantor_shifted_parameter(long n) { return 1 - 3 * windows::pow2(-(2 * n + 3)); }

/// chi_F for the Cantor-type set F, cut at level n_max. For n <= n_max and
/// a' between 1 - 2^{-(2n+1)} and 1 - 2^{-(2n+2)} the sum sum_n |g(t - na')|^2
/// vanishes on a set of positive measure, so (g, a', b) is not a frame.
inline Scenario scenario_cantor(long n_max, long n = 2, const SuiteOptions& = {})
{
    if (n_max < 2 || n_max > 20) throw std::invalid_argument("scenario_cantor: n_max must lie in [2, 20]");
    if (n < 2 || n > n_max) throw std::invalid_argument("scenario_cantor: need 2 <= n <= n_max");
    Scenario s{"cantor", "g = chi_F, F cut at n_max = " + std::to_string(n_max) + ", n = " + std::to_string(n), {}};
    const PiecewiseFn g = windows::cantor_paper(n_max);
    const PiecewiseFn g_sup = windows::cantor_superset(n_max);
    const Rat q = 1 - windows::pow2(2 - 2 * n_max);  // 1 - 4^{1-n_max}

    s.exact("measure_0_1", Provenance::derived, Rat(15, 16) + q / 24, g.restricted(0, 1).support_measure());
    s.exact("measure_1_2", Provenance::derived, q / 48, g.restricted(1, 2).support_measure());

    // orthonormal on the resolved part: G_0 = 1 off the uncovered tail, G_k = 0 otherwise
    const CorrelationSeries cs = correlations(GaborSystem{g, 1, 1});
    const Rat tail = cantor_uncovered_measure(n_max);
    const EssRange g0 = ess_range(cs.term(0), Rat(0), 1 - tail);
    s.holds("G0_one_off_tail", Provenance::derived, "[1, 1]", to_string(g0.range()),
            g0.inf == Enclosure(1) && g0.sup == Enclosure(1));
    s.exact("unresolved_measure", Provenance::derived, tail, 1 - cs.term(0).support_measure());
    s.holds("unresolved_within_budget", Provenance::derived, "<= " + to_string(2 * windows::pow2(-2 * n_max)),
            to_string(tail), tail <= 2 * windows::pow2(-2 * n_max));
    s.holds("tail_halves", Provenance::derived, "<= " + to_string(tail / 2), to_string(cantor_uncovered_measure(n_max + 1)),
            cantor_uncovered_measure(n_max + 1) <= tail / 2);
    s.holds("off_diagonal_vanish", Provenance::derived, "terms {0}", std::to_string(cs.terms.size()) + " terms",
            cs.terms.size() == 1 && cs.terms.count(0) == 1);

    // superset bound: zeros of the superset's sum are zeros of the true sum
    const Rat ap = cantor_shifted_parameter(n);
    const Rat left = 1 - windows::pow2(-(2 * n + 1));
    s.at_least("zero_set_measure", Provenance::reference, ap - left, detail::periodic_zero_measure(g_sup, ap));
    for (const Rat& b : {Rat(1), Rat(1, 2)})
        s.exact("walnut_lower_b_" + to_string(b), Provenance::reference, Rat(0), walnut_bounds(GaborSystem{g_sup, ap, b}).lower);
    return s;
}

/// chi_[0,1-eps] leaves a gap of measure eps in every period.
inline Scenario scenario_shrunk_indicator(const SuiteOptions& opt = {})
{
    Scenario s{"shrunk_indicator", "g = chi_[0,1-eps], a = b = 1, eps in {1/8, 1/4}", {}};
    for (const Rat& eps : {Rat(1, 8), Rat(1, 4)}) {
        const PiecewiseFn g = windows::shrunk_indicator(eps);
        const std::string tag = "_eps_" + to_string(eps);
        s.exact("gap_measure" + tag, Provenance::trivial, eps, detail::periodic_zero_measure(g, 1));
        s.exact("walnut_lower" + tag, Provenance::derived, Rat(0), walnut_bounds(GaborSystem{g, 1, 1}).lower);
        s.below("oracle_rho_min" + tag, Provenance::derived, opt.near_zero, detail::oracle_for(g, 1, 1, opt, 8).rho_min);
    }
    return s;
}

inline const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names{"epsilon_boundary", "half_indicator", "lambda_one", "cantor",
                                                "shrunk_indicator"};
    return names;
}

/// Runs one scenario by name; epsilon_boundary runs at eps = 1/4, 1/2, 3/4
/// and cantor at n_max = 6, n = 2 unless overridden.
inline std::vector<Scenario> run_scenario(const std::string& name, const SuiteOptions& opt = {}, long n_max = 6)
{
    if (name == "epsilon_boundary") {
        std::vector<Scenario> out;
        for (const Rat& eps : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) out.push_back(scenario_epsilon_boundary(eps, opt));
        return out;
    }
    if (name == "half_indicator") return {scenario_half_indicator(opt)};
    if (name == "lambda_one") return {scenario_lambda_one(opt)};
    if (name == "cantor") return {scenario_cantor(n_max, 2, opt)};
    if (name == "shrunk_indicator") return {scenario_shrunk_indicator(opt)};
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

inline std::vector<Scenario> run_all_scenarios(const SuiteOptions& opt = {}, long n_max = 6)
{
    std::vector<Scenario> out;
    for (const auto& name : scenario_names())
        for (auto& s : run_scenario(name, opt, n_max)) out.push_back(std::move(s));
    return out;
}

}  // namespace whframe
