#pragma once

// Perturbation pairs with a passing certificate, and the oracle sandwich check.

#include "support.hpp"

#include <string>
#include <vector>

namespace testing_support {

struct BaseSystem {
    std::string label;
    PiecewiseFn g;
    Rat a, b;
    FrameBounds bounds;
};

inline std::vector<BaseSystem> base_systems()
{
    std::vector<BaseSystem> out;
    auto add = [&](std::string label, PiecewiseFn g, Rat a, Rat b) {
        const FrameBounds fb = walnut_bounds(GaborSystem{g, a, b});
        out.push_back({std::move(label), std::move(g), a, b, fb});
    };
    add("indicator", windows::indicator(), 1, 1);
    add("paper_eps 1/4", windows::paper_eps(Rat(1, 4)), 1, 1);
    add("paper_eps 1/2", windows::paper_eps(Rat(1, 2)), 1, 1);
    add("paper_eps 3/4", windows::paper_eps(Rat(3, 4)), 1, 1);
    add("hat b=1/4", windows::hat(), 1, Rat(1, 4));
    add("hat b=1/2", windows::hat(), 1, Rat(1, 2));
    add("double_indicator a=1/2", windows::double_indicator(), Rat(1, 2), Rat(1, 2));
    return out;
}

struct CatalogEntry {
    std::string label;
    PiecewiseFn g, h;
    Rat a, b;
    std::vector<Certificate> passing;
};

inline std::vector<Certificate> all_certificates(const PiecewiseFn& g, const PiecewiseFn& h, const Rat& a, const Rat& b,
                                                 const FrameBounds& fb)
{
    std::vector<Certificate> cs;
    cs.push_back(certify_cross_term(g, h, a, b, fb.lower, fb.upper));
    cs.push_back(certify_amalgam(g, h, a, b, fb.lower, fb.upper));
    if (a == 1 && b == 1) cs.push_back(certify_zak(g, h, fb.lower, fb.upper));
    return cs;
}

/// Random small perturbations h = g + d of certified base systems, kept when
/// at least one certificate passes.
inline std::vector<CatalogEntry> perturbation_catalog(std::size_t count, std::uint64_t seed)
{
    Gen gen(seed);
    const auto bases = base_systems();
    std::vector<CatalogEntry> out;
    for (int attempt = 0; out.size() < count && attempt < 40 * static_cast<int>(count); ++attempt) {
        const BaseSystem& base = bases[static_cast<std::size_t>(attempt) % bases.size()];
        if (!(base.bounds.lower > 0)) continue;
        const Rat scale = gen.positive(1, 4) * base.bounds.lower / 4;
        const PiecewiseFn d = gen.window({3, 1, gen.coin(), 4, 2}).scaled(CRat(scale));
        const PiecewiseFn h = base.g + d;
        if (h.is_zero()) continue;
        CatalogEntry e{base.label, base.g, h, base.a, base.b, {}};
        for (auto& c : all_certificates(base.g, h, base.a, base.b, base.bounds))
            if (c.passed()) e.passing.push_back(std::move(c));
        if (!e.passing.empty()) out.push_back(std::move(e));
    }
    return out;
}

struct SandwichResult {
    long samples = 0;
    long violations = 0;
    std::string first_violation;
};

inline SandwichResult sandwich_check(const CatalogEntry& e, long samples, std::uint64_t seed, double tol = 1e-6)
{
    SandwichResult r;
    const auto rs = sample_rayleigh(GaborSystem{e.h, e.a, e.b}, samples, seed);
    for (const auto& s : rs) {
        ++r.samples;
        for (const auto& c : e.passing) {
            const FrameBounds& nb = *c.new_bounds;
            if (s.rho < nb.lower_d() - tol - s.tail || s.rho > nb.upper_d() + tol) {
                ++r.violations;
                if (r.first_violation.empty())
                    r.first_violation = e.label + " " + to_string(c.criterion) + " rho=" + std::to_string(s.rho) + " bounds [" +
                                        std::to_string(nb.lower_d()) + ", " + std::to_string(nb.upper_d()) + "]";
            }
        }
    }
    return r;
}

}  // namespace testing_support
