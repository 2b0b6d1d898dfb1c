#pragma once

// Certified suprema and infima of moduli of polynomials over single cells.

#include "whframe/enclosure.hpp"
#include "whframe/piecewise.hpp"
#include "whframe/poly.hpp"

#include <queue>
#include <span>
#include <vector>

namespace whframe {

inline const Rat& default_tolerance()
{
    static const Rat tol(1, BigInt(1000000000000LL));  // 1e-12
    return tol;
}

/// Upper bound of |p| on [l, r]: sqrt(max|Re p|^2 + max|Im p|^2).
inline Rat abs_upper_sq(const Poly& p, const Rat& l, const Rat& r)
{
    const RealExtrema re = real_extrema(p.real_part(), l, r);
    const RealExtrema im = real_extrema(p.imag_part(), l, r);
    const Rat mr = std::max(abs(re.min), abs(re.max));
    const Rat mi = std::max(abs(im.min), abs(im.max));
    return mr * mr + mi * mi;
}

/// sup |p| on [l, r] for degree <= 1: |p|^2 is a convex quadratic, so the
/// maximum sits at an endpoint.
inline Enclosure abs_sup_affine(const Poly& p, const Rat& l, const Rat& r)
{
    return sqrt_enclosure(std::max(p(l).norm_sq(), p(r).norm_sq()));
}

/// inf |p| on [l, r] for degree <= 1, from the vertex of the convex |p|^2.
inline Enclosure abs_inf_affine(const Poly& p, const Rat& l, const Rat& r)
{
    const Poly q = p.norm_sq();
    return sqrt_enclosure(std::max(real_extrema(q, l, r).min, Rat(0)));
}

namespace detail {

struct SubCell {
    Rat l;
    Rat r;
    Rat upper;  // bound on the sum over this subcell (squared for the complex path)
};

struct SubCellOrder {
    bool operator()(const SubCell& a, const SubCell& b) const { return a.upper < b.upper; }
};

inline bool fixed_sign(const Poly& q, const Rat& l, const Rat& r, int& sign)
{
    const RealExtrema e = real_extrema(q, l, r);
    if (e.min >= 0) { sign = 1; return true; }
    if (e.max <= 0) { sign = -1; return true; }
    return false;
}

// Real polynomials of degree <= 2, sign pattern fixed on [l, r]: the sum of
// moduli is itself a quadratic and its maximum is exact.
inline std::optional<Rat> exact_sum_abs_max(std::span<const Poly> qs, const Rat& l, const Rat& r)
{
    Poly s;
    for (const auto& q : qs) {
        int sign = 0;
        if (!fixed_sign(q, l, r, sign)) return std::nullopt;
        s += sign > 0 ? q : -q;
    }
    return real_extrema(s, l, r).max;
}

inline Rat sum_abs_upper_real(std::span<const Poly> qs, const Rat& l, const Rat& r)
{
    Rat u = 0;
    for (const auto& q : qs) {
        const RealExtrema e = real_extrema(q, l, r);
        u += std::max(abs(e.min), abs(e.max));
    }
    return u;
}

inline Rat sum_abs_at_real(std::span<const Poly> qs, const Rat& t)
{
    Rat v = 0;
    for (const auto& q : qs) v += abs(q(t).re);
    return v;
}

inline Enclosure sup_sum_abs_real(std::span<const Poly> qs, const Rat& l, const Rat& r, const Rat& tol)
{
    // Rational roots of the affine members split the cell exactly.
    std::vector<Rat> cuts{l, r};
    for (const auto& q : qs) {
        if (q.degree() == 1) {
            const Rat root = -q.coeff(0).re / q.coeff(1).re;
            if (l < root && root < r) cuts.push_back(root);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Rat best_lo = 0;
    std::priority_queue<SubCell, std::vector<SubCell>, SubCellOrder> open;
    bool all_exact = true;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (auto v = exact_sum_abs_max(qs, cuts[i], cuts[i + 1])) {
            best_lo = std::max(best_lo, *v);
        } else {
            all_exact = false;
            open.push({cuts[i], cuts[i + 1], sum_abs_upper_real(qs, cuts[i], cuts[i + 1])});
        }
    }
    if (all_exact) return Enclosure(best_lo);

    // Branch and bound on the remaining subcells until the enclosure is tight.
    int iterations = 0;
    while (!open.empty()) {
        SubCell c = open.top();
        if (c.upper <= best_lo) return Enclosure(best_lo);
        if (c.upper - best_lo < tol || ++iterations > 200000) return Enclosure(best_lo, c.upper);
        open.pop();
        const Rat mid = (c.l + c.r) / 2;
        best_lo = std::max(best_lo, sum_abs_at_real(qs, mid));
        for (const auto& [a, b] : {std::pair{c.l, mid}, std::pair{mid, c.r}}) {
            if (auto v = exact_sum_abs_max(qs, a, b)) {
                best_lo = std::max(best_lo, *v);
            } else {
                open.push({a, b, sum_abs_upper_real(qs, a, b)});
            }
        }
    }
    return Enclosure(best_lo);
}

inline Enclosure sum_abs_at_complex(std::span<const Poly> qs, const Rat& t)
{
    Enclosure v(0);
    for (const auto& q : qs) v += sqrt_enclosure(q(t).norm_sq());
    return v;
}

inline Enclosure sum_abs_upper_complex(std::span<const Poly> qs, const Rat& l, const Rat& r)
{
    Enclosure u(0);
    for (const auto& q : qs) u += sqrt_enclosure(abs_upper_sq(q, l, r));
    return u;
}

inline Enclosure sup_sum_abs_complex(std::span<const Poly> qs, const Rat& l, const Rat& r, const Rat& tol)
{
    bool affine = true;
    for (const auto& q : qs) affine = affine && q.degree() <= 1;
    if (affine) {
        // Sum of convex functions: maximum at an endpoint.
        const Enclosure vl = sum_abs_at_complex(qs, l);
        const Enclosure vr = sum_abs_at_complex(qs, r);
        return max(vl, vr);
    }
    Enclosure best = max(sum_abs_at_complex(qs, l), sum_abs_at_complex(qs, r));
    struct Cell { Rat l, r; Enclosure upper; };
    auto order = [](const Cell& a, const Cell& b) { return a.upper.hi() < b.upper.hi(); };
    std::priority_queue<Cell, std::vector<Cell>, decltype(order)> open(order);
    open.push({l, r, sum_abs_upper_complex(qs, l, r)});
    int iterations = 0;
    while (!open.empty()) {
        Cell c = open.top();
        if (c.upper.hi() <= best.lo()) break;
        if (c.upper.hi() - best.lo() < tol || ++iterations > 200000) return {best.lo(), std::max(best.hi(), c.upper.hi())};
        open.pop();
        const Rat mid = (c.l + c.r) / 2;
        best = max(best, sum_abs_at_complex(qs, mid));
        open.push({c.l, mid, sum_abs_upper_complex(qs, c.l, mid)});
        open.push({mid, c.r, sum_abs_upper_complex(qs, mid, c.r)});
    }
    return best;
}

}  // namespace detail

/// Enclosure of sup over (l, r) of sum_k |q_k(t)|. Exact for constant
/// pieces and for real pieces whose signs are fixed after splitting at
/// rational roots; otherwise refined by bisection until the width is below
/// `tol`.
inline Enclosure sup_sum_abs(std::span<const Poly> qs, const Rat& l, const Rat& r, const Rat& tol = default_tolerance())
{
    if (qs.empty()) return Enclosure(0);
    bool real = true;
    for (const auto& q : qs) {
        if (q.degree() > 2) throw std::invalid_argument("sup_sum_abs: degree > 2");
        real = real && q.is_real();
    }
    return real ? detail::sup_sum_abs_real(qs, l, r, tol) : detail::sup_sum_abs_complex(qs, l, r, tol);
}

inline Enclosure sup_abs(const Poly& q, const Rat& l, const Rat& r, const Rat& tol = default_tolerance())
{
    return sup_sum_abs(std::span<const Poly>(&q, 1), l, r, tol);
}

/// Which real quantity ess_range inspects.
enum class RangeMode { real_part, modulus };

/// Essential infimum and supremum over an interval, each as an enclosure.
struct EssRange {
    Enclosure inf;
    Enclosure sup;

    /// Enclosure of the whole essential range.
    Enclosure range() const { return {inf.lo(), sup.hi()}; }
};

/// Essential range of Re f or |f| over [lo, hi]. Both ends are exact for
/// piecewise-constant real data; for degree-1 pieces the modulus extremes
/// come from the cell endpoints and the critical point of |f|^2, so they
/// are exact up to one square root.
inline EssRange ess_range(const PiecewiseFn& f, const Rat& lo, const Rat& hi, RangeMode mode = RangeMode::real_part)
{
    if (!(lo < hi)) throw std::invalid_argument("ess_range: empty interval");
    std::optional<Enclosure> inf, sup;
    for (const auto& s : f.segments(lo, hi)) {
        Enclosure cell_inf, cell_sup;
        if (mode == RangeMode::real_part) {
            if (s.p.degree() > 2) throw std::invalid_argument("ess_range: degree > 2");
            const RealExtrema e = real_extrema(s.p.real_part(), s.l, s.r);
            cell_inf = Enclosure(e.min);
            cell_sup = Enclosure(e.max);
        } else if (s.p.degree() <= 1) {
            cell_inf = abs_inf_affine(s.p, s.l, s.r);
            cell_sup = abs_sup_affine(s.p, s.l, s.r);
        } else {
            cell_sup = sup_abs(s.p, s.l, s.r);
            // Crude but certified lower end for quadratics.
            const Poly q = s.p.norm_sq();
            if (s.p.is_real()) {
                const RealExtrema e = real_extrema(s.p, s.l, s.r);
                cell_inf = (e.min <= 0 && e.max >= 0) ? Enclosure(0) : Enclosure(std::min(abs(e.min), abs(e.max)));
            } else {
                cell_inf = Enclosure(0, sqrt_enclosure(std::min(q(s.l).re, q(s.r).re)).hi());
            }
        }
        inf = inf ? min(*inf, cell_inf) : cell_inf;
        sup = sup ? max(*sup, cell_sup) : cell_sup;
    }
    return {*inf, *sup};
}

}  // namespace whframe
