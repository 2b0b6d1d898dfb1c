#pragma once

// Seeded generators for property tests and independent numerical oracles.

#include "whframe/whframe.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace testing_support {

using namespace whframe;

struct WindowShape {
    int max_pieces = 4;
    int max_degree = 1;
    bool complex = false;
    int denominator = 4;  // breakpoints lie on (1/denominator) Z
    int span = 3;         // breakpoints lie in [-span, span]
};

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    /// p/q with |p/q| <= bound and q from 1..max_den.
    Rat rational(long bound, long max_den)
    {
        const long q = integer(1, max_den);
        return Rat(integer(-bound * q, bound * q), q);
    }

    Rat positive(long num_hi, long max_den)
    {
        const long q = integer(1, max_den);
        return Rat(integer(1, num_hi * q), q);
    }

    PiecewiseFn window(const WindowShape& s = {})
    {
        for (;;) {
            const int pieces = static_cast<int>(integer(1, s.max_pieces));
            std::vector<Rat> grid;
            for (long k = -s.span * s.denominator; k <= s.span * s.denominator; ++k) grid.emplace_back(k, s.denominator);
            std::shuffle(grid.begin(), grid.end(), rng_);
            std::vector<Rat> bp(grid.begin(), grid.begin() + pieces + 1);
            std::sort(bp.begin(), bp.end());
            std::vector<Poly> ps;
            for (int i = 0; i < pieces; ++i) {
                auto coef = [&] { return CRat(rational(2, 4), s.complex ? rational(2, 4) : Rat(0)); };
                const CRat c0 = coef();
                const CRat c1 = s.max_degree >= 1 && coin() ? coef() : CRat{};
                // write the piece in local form c0 + c1 (t - l) so values stay moderate
                ps.push_back(Poly::affine(c0 - c1 * CRat(bp[static_cast<std::size_t>(i)]), c1));
            }
            PiecewiseFn f(bp, ps);
            if (f.l2_norm_sq() > 0) return f;
        }
    }

    PiecewiseFn constant_window(int max_pieces = 4, int denominator = 4, int span = 3, bool complex = false)
    {
        return window({max_pieces, 0, complex, denominator, span});
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Adaptive Simpson integration of a smooth complex integrand.
inline std::complex<double> simpson(const std::function<std::complex<double>(double)>& f, double l, double r, double tol,
                                    int depth = 0)
{
    const double m = 0.5 * (l + r);
    const auto fl = f(l), fm = f(m), fr = f(r);
    const auto whole = (r - l) / 6.0 * (fl + 4.0 * fm + fr);
    std::function<std::complex<double>(double, double, std::complex<double>, std::complex<double>, std::complex<double>,
                                       std::complex<double>, double, int)>
        rec = [&](double a, double b, std::complex<double> fa, std::complex<double> fm2, std::complex<double> fb,
                  std::complex<double> est, double eps, int d) -> std::complex<double> {
        const double c = 0.5 * (a + b);
        const double lm = 0.5 * (a + c), rm = 0.5 * (c + b);
        const auto flm = f(lm), frm = f(rm);
        const auto left = (c - a) / 6.0 * (fa + 4.0 * flm + fm2);
        const auto right = (b - c) / 6.0 * (fm2 + 4.0 * frm + fb);
        const auto diff = left + right - est;
        if (d > 24 || std::abs(diff) <= 15.0 * eps) return left + right + diff / 15.0;
        return rec(a, c, fa, flm, fm2, left, eps / 2, d + 1) + rec(c, b, fm2, frm, fb, right, eps / 2, d + 1);
    };
    return rec(l, r, fl, fm, fr, whole, tol, depth);
}

/// <f, E_mb T_na g> by adaptive quadrature over the common refinement of the
/// breakpoints, using only point evaluation of f and g.
inline std::complex<double> quadrature_inner(const PiecewiseFn& f, const PiecewiseFn& g, long m, const Rat& b, long n,
                                             const Rat& a)
{
    if (f.is_zero() || g.is_zero()) return {};
    const PiecewiseFn tg = g.translated(Rat(n) * a);
    std::vector<Rat> cuts = f.breakpoints();
    for (const auto& p : tg.breakpoints()) cuts.push_back(p);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const double bd = to_double(b);
    std::complex<double> acc;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Rat mid = (cuts[i] + cuts[i + 1]) / 2;
        const long cf = f.cell_of(mid), cg = tg.cell_of(mid);
        if (cf < 0 || cg < 0) continue;
        const Poly& pf = f.pieces()[static_cast<std::size_t>(cf)];
        const Poly& pg = tg.pieces()[static_cast<std::size_t>(cg)];
        auto to_doubles = [](const Poly& p) {
            std::vector<std::complex<double>> cs;
            for (std::size_t k = 0; k <= static_cast<std::size_t>(std::max(p.degree(), 0)); ++k) cs.emplace_back(to_double(p.coeff(k).re), to_double(p.coeff(k).im));
            return cs;
        };
        auto horner = [](const std::vector<std::complex<double>>& cs, double t) {
            std::complex<double> v;
            for (auto it = cs.rbegin(); it != cs.rend(); ++it) v = v * t + *it;
            return v;
        };
        const auto df = to_doubles(pf), dg = to_doubles(pg);
        auto integrand = [&](double t) {
            const double ph = -2.0 * std::numbers::pi * static_cast<double>(m) * bd * t;
            return horner(df, t) * std::conj(horner(dg, t)) * std::complex<double>(std::cos(ph), std::sin(ph));
        };
        // about four sub-intervals per oscillation period
        const double l = to_double(cuts[i]), r = to_double(cuts[i + 1]);
        const int parts = 1 + static_cast<int>(4.0 * std::abs(static_cast<double>(m) * bd) * (r - l));
        for (int k = 0; k < parts; ++k) {
            const double sl = l + (r - l) * k / parts, sr = l + (r - l) * (k + 1) / parts;
            acc += simpson(integrand, sl, sr, 1e-13 * (sr - sl));
        }
    }
    return acc;
}

}  // namespace testing_support
