#pragma once

// Zak transform Z(g)(x, y) = sum_n g(x + n) e^{2 pi i n y} on [0,1)^2 and the
// frame bounds ess inf |Zg|^2, ess sup |Zg|^2 of the system (g, 1, 1).

#include "whframe/enclosure.hpp"
#include "whframe/extrema.hpp"
#include "whframe/gabor.hpp"
#include "whframe/piecewise.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

namespace whframe {

struct ZakGrid {
    int nx = 0;  // requested x resolution per unit length
    int ny = 0;
    std::vector<double> xs;         // sample abscissae in [0,1)
    std::vector<double> x_weights;  // measure represented by each abscissa (sums to 1)
    std::vector<double> ys;         // j / ny
    std::vector<std::complex<double>> values;  // xs.size() rows of ny values
    Enclosure modulus_range;
    /// Z does not depend on x and has at most two nonzero terms, so the
    /// modulus range is known in closed form.
    bool closed_form = false;
    /// exact ess inf / ess sup of |Z|^2 in the closed-form case
    std::optional<Enclosure> min_sq, max_sq;

    std::complex<double> at(std::size_t ix, std::size_t iy) const { return values[ix * static_cast<std::size_t>(ny) + iy]; }

    /// Measure-weighted mean of |Z|^2; equals ||g||^2 in the limit.
    double mean_modulus_sq() const
    {
        double acc = 0.0;
        for (std::size_t ix = 0; ix < xs.size(); ++ix) {
            double row = 0.0;
            for (int iy = 0; iy < ny; ++iy) row += std::norm(at(ix, static_cast<std::size_t>(iy)));
            acc += x_weights[ix] * row / ny;
        }
        return acc;
    }
};

namespace detail {

struct ZakCell {
    Rat l;
    Rat r;
    std::vector<std::pair<long, Poly>> terms;  // n -> g(x + n) as a polynomial in x
};

inline std::vector<ZakCell> zak_cells(const PiecewiseFn& g)
{
    std::vector<Rat> cuts{Rat(0), Rat(1)};
    for (const auto& p : g.breakpoints()) cuts.push_back(frac(p));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<ZakCell> cells;
    const auto [lo, hi] = g.support();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        ZakCell c{cuts[i], cuts[i + 1], {}};
        const Rat mid = (c.l + c.r) / 2;
        for (BigInt n = floor_int(lo - c.r); n <= ceil_int(hi - c.l); ++n) {
            const long idx = g.cell_of(mid + Rat(n));
            if (idx < 0) continue;
            const Poly& p = g.pieces()[static_cast<std::size_t>(idx)];
            if (!p.is_zero()) c.terms.emplace_back(n.convert_to<long>(), p.shifted(-Rat(n)));
        }
        cells.push_back(std::move(c));
    }
    return cells;
}

}  // namespace detail

/// Z(g)(x, y) for rational (x, y); the phase n*y is reduced exactly, so
/// Z(x, y + 1) == Z(x, y) bit for bit.
inline std::complex<double> zak_value(const PiecewiseFn& g, const Rat& x, const Rat& y)
{
    std::complex<double> z;
    if (g.is_zero()) return z;
    const auto [lo, hi] = g.support();
    for (BigInt n = floor_int(lo - x); n <= ceil_int(hi - x); ++n) {
        const CRat v = g(x + Rat(n));
        if (!v.is_zero()) z += v.to_complex() * unit_phase(Rat(n) * y);
    }
    return z;
}

/// Samples |Z(g)| on a grid and encloses its range. Inside each x-cell the
/// terms g(x + n) are fixed polynomials; the enclosure adds a Lipschitz
/// slack 2 pi sum_n |n| sup|g(. + n)| / ny in y, and sum_n sup|g'| times half
/// the sample spacing in x.
inline ZakGrid zak_transform(const PiecewiseFn& g, int nx, int ny)
{
    if (nx < 2 || ny < 2) throw std::invalid_argument("zak_transform: resolution must be at least 2 x 2");
    if (g.is_zero()) throw std::invalid_argument("zak_transform: zero window");
    ZakGrid grid;
    grid.nx = nx;
    grid.ny = ny;
    for (int j = 0; j < ny; ++j) grid.ys.push_back(static_cast<double>(j) / ny);

    const auto cells = detail::zak_cells(g);
    double min_mod = std::numeric_limits<double>::infinity();
    double max_mod = 0.0;
    double min_lo = std::numeric_limits<double>::infinity();
    double max_hi = 0.0;
    for (const auto& c : cells) {
        const double len = to_double(c.r - c.l);
        const int k = std::max(1, static_cast<int>(std::ceil(nx * len)));
        double ly = 0.0, lx = 0.0, mag = 0.0;
        for (const auto& [n, p] : c.terms) {
            const double s = abs_sup_affine(p, c.l, c.r).hi_d();
            ly += 2.0 * std::numbers::pi * std::abs(static_cast<double>(n)) * s;
            mag += s;
            if (p.degree() == 1) lx += std::abs(p.coeff(1).to_complex());
        }
        const double slack = ly / ny + lx * len / (2.0 * k) + 1e-12 * (1.0 + mag);
        double cell_min = std::numeric_limits<double>::infinity(), cell_max = 0.0;
        for (int i = 0; i < k; ++i) {
            const Rat x = c.l + (c.r - c.l) * Rat(2 * i + 1, 2 * k);
            grid.xs.push_back(to_double(x));
            grid.x_weights.push_back(len / k);
            std::vector<std::complex<double>> vals;
            for (const auto& [n, p] : c.terms) vals.push_back(p(x).to_complex());
            for (int j = 0; j < ny; ++j) {
                std::complex<double> z;
                for (std::size_t t = 0; t < c.terms.size(); ++t) {
                    const long n = c.terms[t].first;
                    const long ph = ((n % ny) * j % ny + ny) % ny;
                    constexpr double two_pi = 6.283185307179586476925286766559;
                    const double ang = two_pi * static_cast<double>(ph) / ny;
                    z += vals[t] * std::complex<double>(std::cos(ang), std::sin(ang));
                }
                grid.values.push_back(z);
                cell_min = std::min(cell_min, std::abs(z));
                cell_max = std::max(cell_max, std::abs(z));
            }
        }
        min_mod = std::min(min_mod, cell_min);
        max_mod = std::max(max_mod, cell_max);
        min_lo = std::min(min_lo, cell_min - slack);
        max_hi = std::max(max_hi, cell_max + slack);
    }
    grid.modulus_range = Enclosure(from_double(std::max(0.0, min_lo)), from_double(max_hi));

    // Closed form: piecewise-constant window with integer breakpoints gives a
    // single x-cell and Z(y) = c_j e^{2 pi i j y} + c_k e^{2 pi i k y}.
    if (cells.size() == 1 && g.is_piecewise_constant() && cells.front().terms.size() <= 2) {
        const auto& t = cells.front().terms;
        grid.closed_form = true;
        if (t.size() == 1) {
            const Rat s = t[0].second.coeff(0).norm_sq();
            grid.min_sq = grid.max_sq = Enclosure(s);
            grid.modulus_range = sqrt_enclosure(s);
        } else {
            const Rat p = t[0].second.coeff(0).norm_sq();
            const Rat q = t[1].second.coeff(0).norm_sq();
            const Enclosure cross = sqrt_enclosure(p * q);  // |c_j| |c_k|
            grid.min_sq = clamp_nonneg(Enclosure(p + q) - Enclosure(2) * cross);
            grid.max_sq = Enclosure(p + q) + Enclosure(2) * cross;
            const Enclosure mp = sqrt_enclosure(p), mq = sqrt_enclosure(q);
            const Enclosure diff = mp.lo() >= mq.hi() ? mp - mq : (mq.lo() >= mp.hi() ? mq - mp : Enclosure(0, std::max(mp.hi(), mq.hi())));
            grid.modulus_range = Enclosure(clamp_nonneg(diff).lo(), (mp + mq).hi());
        }
    }
    return grid;
}

/// Frame bounds of (g, 1, 1) from the range of |Zg|^2. Certified only in the
/// closed-form two-term case; otherwise an estimate carrying explicit slack.
inline FrameBounds zak_frame_bounds(const ZakGrid& grid)
{
    if (grid.closed_form) {
        return {grid.min_sq->lo(), grid.max_sq->hi(), BoundKind::certified, grid.min_sq->exact() && grid.max_sq->exact()};
    }
    const Rat lo = std::max(grid.modulus_range.lo(), Rat(0));
    return {lo * lo, grid.modulus_range.hi() * grid.modulus_range.hi(), BoundKind::estimated, false};
}

inline FrameBounds zak_frame_bounds(const PiecewiseFn& g, int nx = 64, int ny = 256)
{
    return zak_frame_bounds(zak_transform(g, nx, ny));
}

}  // namespace whframe
