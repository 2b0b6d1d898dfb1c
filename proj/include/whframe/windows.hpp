#pragma once

// Named windows used by the CLI, the scenarios and the tests.

#include "whframe/piecewise.hpp"
#include "whframe/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace whframe {

using WindowParams = std::map<std::string, Rat>;

namespace windows {

inline PiecewiseFn indicator() { return PiecewiseFn::indicator(0, 1); }
inline PiecewiseFn double_indicator() { return PiecewiseFn::indicator(0, 2); }
inline PiecewiseFn hat() { return PiecewiseFn::hat(0, 2, 1); }
inline PiecewiseFn half_double() { return PiecewiseFn::indicator(0, 2, CRat(Rat(1, 2))); }

/// chi_[0,1] + (1 - eps) chi_[1,2]
inline PiecewiseFn paper_eps(const Rat& eps)
{
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("paper_eps: eps must lie in (0, 1)");
    return PiecewiseFn({Rat(0), Rat(1), Rat(2)}, {Poly::constant(CRat(1)), Poly::constant(CRat(1 - eps))});
}

/// chi_[0, 1-eps]
inline PiecewiseFn shrunk_indicator(const Rat& eps)
{
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("shrunk_indicator: eps must lie in (0, 1)");
    return PiecewiseFn::indicator(0, 1 - eps);
}

/// (1 + c) chi_[0,1]
inline PiecewiseFn scaled_indicator(const Rat& c)
{
    if (c == -1) throw std::invalid_argument("scaled_indicator: c = -1 gives the zero window");
    return PiecewiseFn::indicator(0, 1, CRat(1 + c));
}

inline Rat pow2(long e) { return e >= 0 ? Rat(BigInt(1) << e) : Rat(BigInt(1), BigInt(1) << -e); }

/// The intervals of F = E1 u E2 u E3 with both unions cut at index n_max:
///   E1 = [0, 1 - 1/16),
///   E2 = u_{n=2}^{n_max} [1 - 2^{-2n}, 1 - 2^{-(2n+1)}),
///   E3 = u_{n=2}^{n_max} [2 - 2^{-(2n+1)}, 2 - 2^{-(2n+2)}).
inline std::vector<std::pair<Rat, Rat>> cantor_intervals(long n_max)
{
    if (n_max < 2 || n_max > 20) throw std::invalid_argument("cantor: n_max must lie in [2, 20]");
    std::vector<std::pair<Rat, Rat>> out{{Rat(0), Rat(15, 16)}};
    for (long n = 2; n <= n_max; ++n) out.emplace_back(1 - pow2(-2 * n), 1 - pow2(-(2 * n + 1)));
    for (long n = 2; n <= n_max; ++n) out.emplace_back(2 - pow2(-(2 * n + 1)), 2 - pow2(-(2 * n + 2)));
    return out;
}

/// Hulls of the discarded tails n > n_max of E2 and E3.
inline std::vector<std::pair<Rat, Rat>> cantor_tail_hulls(long n_max)
{
    return {{1 - pow2(-(2 * n_max + 2)), Rat(1)}, {2 - pow2(-(2 * n_max + 3)), Rat(2)}};
}

inline PiecewiseFn union_indicator(std::vector<std::pair<Rat, Rat>> ivs)
{
    std::sort(ivs.begin(), ivs.end());
    std::vector<Segment> segs;
    for (const auto& [l, r] : ivs) {
        if (!segs.empty() && l < segs.back().r) throw std::invalid_argument("union_indicator: overlapping intervals");
        segs.push_back({l, r, Poly::constant(CRat(1))});
    }
    return PiecewiseFn::from_segments(segs);
}

/// chi_F for the level-n_max truncation (a subset of the full set F).
inline PiecewiseFn cantor_paper(long n_max) { return union_indicator(cantor_intervals(n_max)); }

/// Indicator of the truncation plus the tail hulls: a superset of the full F.
inline PiecewiseFn cantor_superset(long n_max)
{
    auto ivs = cantor_intervals(n_max);
    for (const auto& iv : cantor_tail_hulls(n_max)) ivs.push_back(iv);
    return union_indicator(ivs);
}

inline long integer_param(const Rat& v, const char* name)
{
    if (denominator(v) != 1) throw std::invalid_argument(std::string(name) + " must be an integer");
    return static_cast<long>(numerator(v));
}

inline const std::vector<std::string>& builtin_names()
{
    static const std::vector<std::string> names{"indicator",        "double_indicator", "hat",
                                                "paper_eps",        "half_double",      "shrunk_indicator",
                                                "scaled_indicator", "cantor_paper"};
    return names;
}

}  // namespace windows

/// Expands a named builtin. Parameters: eps (paper_eps, shrunk_indicator),
/// c (scaled_indicator), n_max (cantor_paper).
inline PiecewiseFn builtin_window(const std::string& name, const WindowParams& params = {})
{
    auto get = [&](const char* key, Rat fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    static const std::map<std::string, std::string> accepted{{"paper_eps", "eps"}, {"shrunk_indicator", "eps"},
                                                             {"scaled_indicator", "c"}, {"cantor_paper", "n_max"}};
    for (const auto& [k, _] : params) {
        auto it = accepted.find(name);
        if (it == accepted.end() || it->second != k)
            throw std::invalid_argument("window '" + name + "' takes no parameter '" + k + "'");
    }
    if (name == "indicator") return windows::indicator();
    if (name == "double_indicator") return windows::double_indicator();
    if (name == "hat") return windows::hat();
    if (name == "half_double") return windows::half_double();
    if (name == "paper_eps") return windows::paper_eps(get("eps", Rat(1, 4)));
    if (name == "shrunk_indicator") return windows::shrunk_indicator(get("eps", Rat(1, 8)));
    if (name == "scaled_indicator") return windows::scaled_indicator(get("c", Rat(1, 4)));
    if (name == "cantor_paper") return windows::cantor_paper(windows::integer_param(get("n_max", Rat(6)), "n_max"));
    throw std::invalid_argument("unknown builtin window '" + name + "'");
}

}  // namespace whframe
