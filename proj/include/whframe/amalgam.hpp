#pragma once

// Wiener amalgam norm ||g||_{W,a} = sum_n sup_{[na, (n+1)a)} |g|.

#include "whframe/enclosure.hpp"
#include "whframe/extrema.hpp"
#include "whframe/piecewise.hpp"

namespace whframe {

struct AmalgamNorm {
    Enclosure value;
    Rat a;
    /// Cell suprema were obtained in closed form (always true for windows of
    /// degree <= 1). `value.exact()` additionally says no square root was
    /// rounded.
    bool exact = true;

    double value_d() const { return value.mid_d(); }
};

/// sup of |g| on one cell [l, r).
inline Enclosure cell_sup_abs(const PiecewiseFn& g, const Rat& l, const Rat& r)
{
    Enclosure s(0);
    for (const auto& seg : g.segments(l, r)) {
        const Enclosure v = seg.p.degree() <= 1 ? abs_sup_affine(seg.p, seg.l, seg.r) : sup_abs(seg.p, seg.l, seg.r);
        s = max(s, v);
    }
    return s;
}

inline AmalgamNorm amalgam_norm(const PiecewiseFn& g, const Rat& a)
{
    if (a <= 0) throw std::invalid_argument("amalgam_norm: a must be positive");
    AmalgamNorm out{Enclosure(0), a, g.max_degree() <= 1};
    if (g.is_zero()) return out;
    const auto [lo, hi] = g.support();
    for (BigInt n = floor_int(lo / a); Rat(n) * a < hi; ++n) {
        const Rat l = Rat(n) * a;
        out.value += cell_sup_abs(g, l, l + a);
    }
    return out;
}

/// ||chi_[-aN, aN] g - g||_{W,a}: the part of the norm carried outside
/// [-aN, aN]. Vanishes once the interval covers the support.
inline Enclosure amalgam_tail(const PiecewiseFn& g, const Rat& a, long N)
{
    if (a <= 0) throw std::invalid_argument("amalgam_tail: a must be positive");
    if (N < 0) throw std::invalid_argument("amalgam_tail: N must be nonnegative");
    const Rat edge = a * N;
    const PiecewiseFn outside = g - g.restricted(-edge, edge);
    return amalgam_norm(outside, a).value;
}

}  // namespace whframe
