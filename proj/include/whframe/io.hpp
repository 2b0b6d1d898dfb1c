#pragma once

// JSON forms of windows and reports. Rationals are always "p/q" strings.
// Window: {"breakpoints": ["p/q", ...], "pieces": [{"c0re","c0im","c1re","c1im"}, ...]}
// where piece i is c0 + c1 t on [breakpoints[i], breakpoints[i+1]).

#include "whframe/amalgam.hpp"
#include "whframe/oracle.hpp"
#include "whframe/perturb.hpp"
#include "whframe/suite.hpp"
#include "whframe/walnut.hpp"
#include "whframe/zak.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace whframe {

using json = nlohmann::ordered_json;

/// Parse failure carrying the JSON path of the offending field.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& field, const std::string& msg) : std::runtime_error(field + ": " + msg), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

inline json to_json(const PiecewiseFn& f)
{
    json bp = json::array();
    json pieces = json::array();
    for (const auto& p : f.breakpoints()) bp.push_back(to_string(p));
    for (const auto& p : f.pieces()) {
        pieces.push_back({{"c0re", to_string(p.coeff(0).re)},
                          {"c0im", to_string(p.coeff(0).im)},
                          {"c1re", to_string(p.coeff(1).re)},
                          {"c1im", to_string(p.coeff(1).im)}});
    }
    return {{"breakpoints", bp}, {"pieces", pieces}};
}

inline Rat rat_field(const json& j, const std::string& path)
{
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw FormatError(path, e.what());
        }
    }
    if (j.is_number_integer()) return Rat(j.get<long long>());
    throw FormatError(path, "expected a rational string \"p/q\"");
}

inline PiecewiseFn window_from_json(const json& j, const std::string& path = "window")
{
    if (!j.is_object()) throw FormatError(path, "expected an object");
    if (!j.contains("breakpoints")) throw FormatError(path + ".breakpoints", "missing");
    if (!j.contains("pieces")) throw FormatError(path + ".pieces", "missing");
    const json& jb = j.at("breakpoints");
    const json& jp = j.at("pieces");
    if (!jb.is_array()) throw FormatError(path + ".breakpoints", "expected an array");
    if (!jp.is_array()) throw FormatError(path + ".pieces", "expected an array");
    std::vector<Rat> bp;
    for (std::size_t i = 0; i < jb.size(); ++i) {
        const std::string here = path + ".breakpoints[" + std::to_string(i) + "]";
        bp.push_back(rat_field(jb[i], here));
        if (i > 0 && !(bp[i - 1] < bp[i])) throw FormatError(here, "breakpoints must be strictly ascending");
    }
    if (bp.empty() && jp.empty()) return {};
    if (bp.size() != jp.size() + 1)
        throw FormatError(path + ".pieces", "expected " + std::to_string(bp.empty() ? 0 : bp.size() - 1) + " pieces, got " +
                                                std::to_string(jp.size()));
    std::vector<Poly> pieces;
    for (std::size_t i = 0; i < jp.size(); ++i) {
        const std::string here = path + ".pieces[" + std::to_string(i) + "]";
        if (!jp[i].is_object()) throw FormatError(here, "expected an object");
        for (const auto& [k, _] : jp[i].items())
            if (k != "c0re" && k != "c0im" && k != "c1re" && k != "c1im") throw FormatError(here + "." + k, "unknown field");
        auto coef = [&](const char* key) {
            return jp[i].contains(key) ? rat_field(jp[i].at(key), here + "." + key) : Rat(0);
        };
        pieces.push_back(Poly::affine(CRat(coef("c0re"), coef("c0im")), CRat(coef("c1re"), coef("c1im"))));
    }
    return PiecewiseFn(std::move(bp), std::move(pieces));
}

inline PiecewiseFn window_from_json_text(const std::string& text, const std::string& path = "window")
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(path, std::string("invalid JSON: ") + e.what());
    }
    return window_from_json(j, path);
}

inline json to_json(const Enclosure& e)
{
    json j{{"lo", to_string(e.lo())}, {"hi", to_string(e.hi())}, {"exact", e.exact()}};
    j["approx"] = e.mid_d();
    return j;
}

inline json to_json(const FrameBounds& b)
{
    return {{"lower", to_string(b.lower)},
            {"upper", to_string(b.upper)},
            {"lower_approx", b.lower_d()},
            {"upper_approx", b.upper_d()},
            {"kind", to_string(b.kind)},
            {"exact", b.exact}};
}

inline json to_json(const AmalgamNorm& n)
{
    return {{"value", to_json(n.value)}, {"a", to_string(n.a)}, {"exact", n.exact}};
}

inline json to_json(const Certificate& c)
{
    json values = json::object();
    for (const auto& [k, v] : c.values) values[k] = to_json(v);
    json j{{"criterion", to_string(c.criterion)}, {"verdict", to_string(c.verdict)}, {"hypothesis_values", values}};
    j["new_bounds"] = c.new_bounds ? to_json(*c.new_bounds) : json(nullptr);
    j["failure_reason"] = c.failure_reason.empty() ? json(nullptr) : json(c.failure_reason);
    j["transfers_riesz_basis"] = c.transfers_riesz_basis;
    j["bounds_source"] = c.bounds_source;
    if (c.shift_bounds) {
        j["shift_bounds"] = {{"b0", to_string(c.shift_bounds->b0)},
                             {"lower_times_b_prime", to_json(c.shift_bounds->lower_scale)},
                             {"upper_times_b_prime", to_json(c.shift_bounds->upper_scale)}};
    }
    return j;
}

inline json to_json(const DivergenceReport& r)
{
    json counts = json::array();
    for (const auto& [K, n] : r.zero_pair_counts) counts.push_back({{"box", K}, {"pairs", n}});
    json j{{"criterion", "lattice_divergence"}, {"divergent", r.divergent}, {"zero_pair_counts", counts}};
    j["witness"] = r.witness ? json{to_string(r.witness->first), to_string(r.witness->second)} : json(nullptr);
    return j;
}

inline json to_json(const OracleReport& r)
{
    return {{"samples", r.samples},         {"rho_min", r.rho_min},         {"rho_max", r.rho_max},
            {"tail_at_min", r.tail_at_min}, {"tail_at_max", r.tail_at_max}, {"m_max", r.m_max},
            {"n_min", r.n_min},             {"n_max", r.n_max},             {"cells", r.cells},
            {"search_steps", r.search_trace.size()}};
}

inline json to_json(const IdentityReport& r)
{
    return {{"lhs_truncated", r.lhs_truncated}, {"rhs_exact", to_string(r.rhs_exact)}, {"rhs_approx", to_double(r.rhs_exact)},
            {"tail_bound", r.tail_bound},       {"gap", r.gap()},                       {"m_max", r.m_max}};
}

inline json to_json(const Scenario& s)
{
    json claims = json::array();
    for (const auto& c : s.claims) {
        claims.push_back({{"name", c.name},
                          {"provenance", to_string(c.provenance)},
                          {"expected", c.expected},
                          {"observed", c.observed},
                          {"passed", c.passed}});
    }
    return {{"name", s.name}, {"description", s.description}, {"passed", s.passed()}, {"claims", claims}};
}

inline json g_series_summary(const CorrelationSeries& s)
{
    json terms = json::array();
    for (long k : s.ordered_keys()) terms.push_back({{"k", k}, {"sup_norm", to_json(sup_norm(s, k))}});
    const EssRange g0 = g0_range(s);
    return {{"k_max", s.k_max}, {"G0_ess_inf", to_json(g0.inf)}, {"G0_ess_sup", to_json(g0.sup)}, {"terms", terms}};
}

}  // namespace whframe
