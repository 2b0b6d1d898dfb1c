#pragma once

// Correlation functions G_k of a Gabor window and the frame bounds they
// certify through the Walnut-type expansion of the frame quadratic form
//
//   sum_{m,n} |<f, E_mb T_na g>|^2 = (1/b) sum_k int conj(f(t)) f(t - k/b) G_k(t) dt,
//   G_k(t) = sum_n g(t - na) conj(g(t - na - k/b)).

#include "whframe/enclosure.hpp"
#include "whframe/extrema.hpp"
#include "whframe/gabor.hpp"
#include "whframe/piecewise.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

namespace whframe {

/// The finite family {G_k}, each stored as its representative on [0, a).
struct CorrelationSeries {
    Rat a;
    Rat b;
    std::map<long, PiecewiseFn> terms;  // only nonzero terms are stored
    long k_max = 0;                     // G_k == 0 for |k| > k_max

    const PiecewiseFn& term(long k) const
    {
        static const PiecewiseFn zero;
        auto it = terms.find(k);
        return it == terms.end() ? zero : it->second;
    }

    CRat value(long k, const Rat& t) const { return periodic_value(term(k), a, t); }

    /// Keys in the canonical summation order: ascending |k|, then sign.
    std::vector<long> ordered_keys() const
    {
        std::vector<long> ks;
        for (const auto& [k, _] : terms) ks.push_back(k);
        std::sort(ks.begin(), ks.end(), [](long x, long y) {
            const long ax = x < 0 ? -x : x, ay = y < 0 ? -y : y;
            return ax != ay ? ax < ay : x > y;
        });
        return ks;
    }

    /// Common refinement of all breakpoints of the representatives in [0, a].
    std::vector<Rat> cell_grid() const
    {
        std::vector<Rat> grid{Rat(0), a};
        for (const auto& [_, f] : terms)
            for (const auto& p : f.breakpoints())
                if (0 < p && p < a) grid.push_back(p);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        return grid;
    }
};

/// Cross-correlations sum_n f(t - na) conj(h(t - na - k/b)); with f == h this
/// is the series G_k of the system (f, a, b).
inline CorrelationSeries cross_correlations(const PiecewiseFn& f, const PiecewiseFn& h, const Rat& a, const Rat& b)
{
    if (a <= 0 || b <= 0) throw std::invalid_argument("correlations: lattice parameters must be positive");
    CorrelationSeries out{a, b, {}, 0};
    if (f.is_zero() || h.is_zero()) return out;
    const auto [fl, fh] = f.support();
    const auto [hl, hh] = h.support();
    const Rat step = 1 / b;
    // f(t) conj(h(t - k/b)) != 0 needs hl + k/b < fh and hh + k/b > fl
    const BigInt k_lo = floor_int((fl - hh) * b);
    const BigInt k_hi = ceil_int((fh - hl) * b);
    const PiecewiseFn hc = h.conj();
    for (BigInt kk = k_lo; kk <= k_hi; ++kk) {
        const long k = kk.convert_to<long>();
        const PiecewiseFn prod = f * hc.translated(Rat(k) * step);
        if (prod.is_zero()) continue;
        PiecewiseFn g = periodize(prod, a);
        if (g.is_zero()) continue;
        out.terms.emplace(k, std::move(g));
        out.k_max = std::max(out.k_max, k < 0 ? -k : k);
    }
    return out;
}

inline CorrelationSeries correlations(const GaborSystem& sys)
{
    return cross_correlations(sys.window, sys.window, sys.a, sys.b);
}

/// Enclosure of ess sup_{t in [0,a)} sum_{k in keys} |G_k(t)|.
inline Enclosure sup_of_abs_sum(const CorrelationSeries& s, const std::vector<long>& keys,
                                const Rat& tol = default_tolerance())
{
    const std::vector<Rat> grid = s.cell_grid();
    Enclosure best(0);
    std::vector<Poly> qs;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const Rat& l = grid[i];
        const Rat& r = grid[i + 1];
        const Rat mid = (l + r) / 2;
        qs.clear();
        for (long k : keys) {
            const PiecewiseFn& g = s.term(k);
            const long c = g.cell_of(mid);
            if (c >= 0 && !g.pieces()[static_cast<std::size_t>(c)].is_zero()) qs.push_back(g.pieces()[static_cast<std::size_t>(c)]);
        }
        if (!qs.empty()) best = max(best, sup_sum_abs(qs, l, r, tol));
    }
    return best;
}

/// ess sup over one period of sum_k |G_k(t)|, the quantity the cross-term
/// perturbation test compares against b*R. Exact for piecewise-constant
/// windows.
inline Enclosure cross_term_sum(const CorrelationSeries& diff_series, const Rat& tol = default_tolerance())
{
    return sup_of_abs_sum(diff_series, diff_series.ordered_keys(), tol);
}

/// ||G_k||_inf over one period.
inline Enclosure sup_norm(const CorrelationSeries& s, long k, const Rat& tol = default_tolerance())
{
    return sup_of_abs_sum(s, {k}, tol);
}

/// Essential range of the real function G_0 over [0, a). Exact.
inline EssRange g0_range(const CorrelationSeries& s)
{
    return ess_range(s.term(0), Rat(0), s.a, RangeMode::real_part);
}

/// Walnut-type certificate:
///   lower = (1/b) max(0, ess inf G_0 - sum_{k != 0} ||G_k||_inf)
///   upper = (1/b) (ess sup G_0 + sum_{k != 0} ||G_k||_inf)
inline FrameBounds walnut_bounds(const CorrelationSeries& s, const Rat& tol = default_tolerance())
{
    const EssRange g0 = g0_range(s);
    Enclosure off(0);
    for (long k : s.ordered_keys())
        if (k != 0) off += sup_norm(s, k, tol);
    const Enclosure lower = clamp_nonneg(g0.inf - off) * Enclosure(1 / s.b);
    const Enclosure upper = (g0.sup + off) * Enclosure(1 / s.b);
    return {lower.lo(), upper.hi(), BoundKind::certified, lower.exact() && upper.exact()};
}

inline FrameBounds walnut_bounds(const GaborSystem& sys, const Rat& tol = default_tolerance())
{
    return walnut_bounds(correlations(sys), tol);
}

/// Extends a representative on [0, period) periodically over [lo, hi].
inline PiecewiseFn periodic_extension(const PiecewiseFn& rep, const Rat& period, const Rat& lo, const Rat& hi)
{
    PiecewiseFn out;
    if (rep.is_zero() || !(lo < hi)) return out;
    for (BigInt n = floor_int(lo / period); Rat(n) * period < hi; ++n)
        out = out + rep.restricted(0, period).translated(Rat(n) * period);
    return out.restricted(lo, hi);
}

/// Upper bound on the total variation of F over R (jumps, including those
/// at the ends of the support, plus the variation inside each cell).
inline double total_variation(const PiecewiseFn& F)
{
    if (F.is_zero()) return 0.0;
    const auto& bp = F.breakpoints();
    const auto& ps = F.pieces();
    double tv = 0.0;
    for (std::size_t i = 0; i < bp.size(); ++i) {
        const CRat left = i == 0 ? CRat{} : ps[i - 1](bp[i]);
        const CRat right = i + 1 == bp.size() ? CRat{} : ps[i](bp[i]);
        tv += std::sqrt(to_double((right - left).norm_sq()));
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps[i].degree() < 1) continue;
        const Poly d = ps[i].derivative();
        const Rat m = std::max(d(bp[i]).norm_sq(), d(bp[i + 1]).norm_sq());  // |affine| is convex
        tv += to_double(bp[i + 1] - bp[i]) * std::sqrt(to_double(m));
    }
    return tv * (1.0 + 1e-12);
}

/// Truncated-vs-exact check of the expansion of the frame quadratic form.
struct IdentityReport {
    double lhs_truncated = 0.0;
    Rat rhs_exact{0};
    double tail_bound = 0.0;
    long m_max = 0;
    double gap() const { return std::abs(to_double(rhs_exact) - lhs_truncated); }
    bool passed(double tol = 1e-9) const { return gap() <= tail_bound + tol; }
};

/// (1/b) sum_k int conj(f(t)) f(t - k/b) G_k(t) dt, exactly.
inline Rat quadratic_form_exact(const PiecewiseFn& f, const CorrelationSeries& s)
{
    CRat acc;
    const PiecewiseFn fc = f.conj();
    for (long k : s.ordered_keys()) {
        const PiecewiseFn P = fc * f.translated(Rat(k) / s.b);
        if (P.is_zero()) continue;
        const auto [lo, hi] = P.support();
        acc += (P * periodic_extension(s.term(k), s.a, lo, hi)).integral();
    }
    if (acc.im != 0) throw std::logic_error("quadratic_form_exact: non-real quadratic form");
    return acc.re / s.b;
}

/// The per-shift integrands F_n = f conj(T_na g), n over the finitely many
/// shifts whose support meets supp f.
inline std::vector<PiecewiseFn> analysis_integrands(const PiecewiseFn& f, const GaborSystem& sys)
{
    std::vector<PiecewiseFn> out;
    const PiecewiseFn gc = sys.window.conj();
    for (long n : overlapping_shifts(f, sys.window, sys.a)) {
        PiecewiseFn F = f * gc.translated(Rat(n) * sys.a);
        if (!F.is_zero()) out.push_back(std::move(F));
    }
    return out;
}

/// sum_n sum_{|m| <= m_max} |<f, E_mb T_na g>|^2.
inline double truncated_quadratic_form(const std::vector<PiecewiseFn>& integrands, const Rat& b, long m_max)
{
    double acc = 0.0;
    for (const auto& F : integrands) {
        const FourierCoefficients c(F, b);
        acc += std::norm(c(0));
        for (long m = 1; m <= m_max; ++m) acc += std::norm(c(m)) + std::norm(c(-m));
    }
    return acc;
}

/// Bound on the discarded part sum_n sum_{|m| > m_max} |c_{n,m}|^2 from
/// |c_{n,m}| <= TV(F_n) / (2 pi |m| b) and sum_{m > M} 1/m^2 <= 1/M.
inline double truncation_tail(const std::vector<PiecewiseFn>& integrands, const Rat& b, long m_max)
{
    double v2 = 0.0;
    for (const auto& F : integrands) {
        const double v = total_variation(F);
        v2 += v * v;
    }
    const double bd = to_double(b);
    return v2 / (2.0 * std::numbers::pi * std::numbers::pi * bd * bd * static_cast<double>(m_max));
}

inline IdentityReport identity_check(const PiecewiseFn& f, const GaborSystem& sys, long m_max)
{
    if (m_max <= 0) throw std::invalid_argument("identity_check: m_max must be positive");
    IdentityReport r;
    r.m_max = m_max;
    if (f.is_zero()) return r;
    const auto integrands = analysis_integrands(f, sys);
    r.lhs_truncated = truncated_quadratic_form(integrands, sys.b, m_max);
    r.rhs_exact = quadratic_form_exact(f, correlations(sys));
    r.tail_bound = truncation_tail(integrands, sys.b, m_max);
    return r;
}

}  // namespace whframe
