#pragma once

// Brute-force numerical frame-bound oracle. It evaluates the truncated
// frame quadratic form sum_{n, |m| <= m_max} |<f, E_mb T_na g>|^2 directly
// from closed-form inner products, independently of the correlation
// machinery the certificates use.

#include "whframe/gabor.hpp"
#include "whframe/piecewise.hpp"
#include "whframe/walnut.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace whframe {

/// Rayleigh quotient of the truncated frame quadratic form at f.
inline double rayleigh(const PiecewiseFn& f, const GaborSystem& sys, long m_max)
{
    const Rat nsq = f.l2_norm_sq();
    if (nsq == 0) throw std::invalid_argument("rayleigh: f must be nonzero");
    return truncated_quadratic_form(analysis_integrands(f, sys), sys.b, m_max) / to_double(nsq);
}

struct OracleOptions {
    long m_max = 1024;
    int cells_per_period = 4;  // test functions are constant on cells of width a / cells_per_period
    int periods = 16;          // number of lattice periods the test functions span
    int restarts = 3;
    int max_sweeps = 400;
};

struct TraceEntry {
    std::string phase;  // "sample", "min" or "max"
    int restart = 0;
    int sweep = 0;
    double rho = 0.0;
};

struct OracleReport {
    long samples = 0;
    double rho_min = 0.0;
    double rho_max = 0.0;
    /// relative truncation tail bounds at the minimizing / maximizing test function
    double tail_at_min = 0.0;
    double tail_at_max = 0.0;
    long m_max = 0;
    long n_min = 0;
    long n_max = 0;
    int cells = 0;
    std::vector<TraceEntry> search_trace;
};

/// The truncated frame quadratic form restricted to functions that are
/// constant on K equal cells [x0 + iw, x0 + (i+1)w): a K x K Hermitian matrix.
class QuadraticForm {
public:
    using Vec = Eigen::VectorXcd;

    QuadraticForm(const GaborSystem& sys, const OracleOptions& opt) : b_(sys.b), m_max_(opt.m_max)
    {
        if (opt.m_max <= 0) throw std::invalid_argument("QuadraticForm: m_max must be positive");
        if (opt.cells_per_period < 1 || opt.periods < 1) throw std::invalid_argument("QuadraticForm: bad test space");
        const Rat& a = sys.a;
        const auto [lo, hi] = sys.window.support();
        width_ = a / opt.cells_per_period;
        cells_ = opt.cells_per_period * opt.periods;
        const Rat center = (lo + hi) / 2;
        x0_ = a * Rat(floor_int(center / a)) - a * Rat(opt.periods / 2);
        width_d_ = to_double(width_);

        const PiecewiseFn test = PiecewiseFn::indicator(x0_, x0_ + width_ * cells_);
        const PiecewiseFn gc = sys.window.conj();
        const double g_sup = ess_range(sys.window, lo, hi, RangeMode::modulus).sup.hi_d();
        const double g_tv = total_variation(sys.window);

        gram_ = Eigen::MatrixXcd::Zero(cells_, cells_);
        const auto shifts = overlapping_shifts(test, sys.window, a);
        if (!shifts.empty()) {
            n_min_ = shifts.front();
            n_max_ = shifts.back();
        }
        for (long n : shifts) {
            const PiecewiseFn tg = gc.translated(Rat(n) * a);
            Block blk;
            std::vector<FourierCoefficients> coeffs;
            for (int i = 0; i < cells_; ++i) {
                const Rat l = x0_ + width_ * i;
                const PiecewiseFn F = tg.restricted(l, l + width_);
                if (F.is_zero()) continue;
                blk.cells.push_back(i);
                coeffs.emplace_back(F, b_);
            }
            if (blk.cells.empty()) continue;
            blk.g_sup = g_sup;
            blk.g_tv = g_tv;
            const std::size_t k = blk.cells.size();
            std::vector<std::complex<double>> v(k);
            for (long m = -m_max_; m <= m_max_; ++m) {
                for (std::size_t p = 0; p < k; ++p) v[p] = coeffs[p](m);
                for (std::size_t p = 0; p < k; ++p)
                    for (std::size_t q = 0; q < k; ++q) gram_(blk.cells[p], blk.cells[q]) += std::conj(v[p]) * v[q];
            }
            blocks_.push_back(std::move(blk));
        }
        gram_ = (gram_ + gram_.adjoint().eval()) / 2.0;
    }

    int cells() const { return cells_; }
    const Rat& x0() const { return x0_; }
    const Rat& cell_width() const { return width_; }
    long n_min() const { return n_min_; }
    long n_max() const { return n_max_; }
    long m_max() const { return m_max_; }
    const Eigen::MatrixXcd& matrix() const { return gram_; }

    double norm_sq(const Vec& c) const { return width_d_ * c.squaredNorm(); }
    double form(const Vec& c) const { return std::real(c.dot(gram_ * c)); }
    double rayleigh(const Vec& c) const { return form(c) / norm_sq(c); }

    /// Relative bound on the part of the full quadratic form discarded by the
    /// m-truncation, for the test function with cell values c.
    double tail(const Vec& c) const
    {
        double v2 = 0.0;
        for (const auto& blk : blocks_) {
            double fsup = 0.0, ftv = 0.0;
            std::complex<double> prev = 0.0;
            int prev_cell = -2;
            for (int i : blk.cells) {
                fsup = std::max(fsup, std::abs(c(i)));
                if (i != prev_cell + 1) {
                    ftv += std::abs(prev);
                    prev = 0.0;
                }
                ftv += std::abs(c(i) - prev);
                prev = c(i);
                prev_cell = i;
            }
            ftv += std::abs(prev);
            const double v = blk.g_sup * ftv + fsup * blk.g_tv;
            v2 += v * v;
        }
        const double bd = to_double(b_);
        return v2 / (2.0 * std::numbers::pi * std::numbers::pi * bd * bd * static_cast<double>(m_max_)) / norm_sq(c);
    }

    /// The test function with cell values c, rounded to exact rationals.
    PiecewiseFn to_function(const Vec& c) const
    {
        std::vector<Segment> segs;
        for (int i = 0; i < cells_; ++i) {
            const Rat l = x0_ + width_ * i;
            segs.push_back({l, l + width_, Poly::constant(CRat(from_double(c(i).real()), from_double(c(i).imag())))});
        }
        return PiecewiseFn::from_segments(segs);
    }

private:
    struct Block {
        std::vector<int> cells;
        double g_sup = 0.0;
        double g_tv = 0.0;
    };

    Rat b_;
    long m_max_;
    Rat width_;
    double width_d_ = 0.0;
    Rat x0_;
    int cells_ = 0;
    long n_min_ = 0;
    long n_max_ = -1;
    Eigen::MatrixXcd gram_;
    std::vector<Block> blocks_;
};

namespace detail {

inline QuadraticForm::Vec random_vector(int k, std::mt19937_64& rng)
{
    std::normal_distribution<double> nd(0.0, 1.0);
    QuadraticForm::Vec c(k);
    for (int i = 0; i < k; ++i) c(i) = {nd(rng), nd(rng)};
    return c;
}

// Exact optimization over span{c, e_i}: the 2x2 generalized Hermitian
// eigenproblem H x = lambda S x. Returns false if no improvement.
inline bool coordinate_step(const QuadraticForm& qf, QuadraticForm::Vec& c, QuadraticForm::Vec& mc, int i,
                            bool maximize, double& rho)
{
    using C = std::complex<double>;
    const double w = to_double(qf.cell_width());
    const double h11 = std::real(c.dot(mc));
    const C h12 = std::conj(mc(i));
    const double h22 = std::real(qf.matrix()(i, i));
    const double s11 = w * c.squaredNorm();
    const C s12 = w * std::conj(c(i));
    const double s22 = w;
    const double alpha = s11 * s22 - std::norm(s12);
    if (alpha <= 1e-14 * s11 * s22) return false;
    const double beta = -(h11 * s22 + h22 * s11) + 2.0 * std::real(h12 * std::conj(s12));
    const double gamma = h11 * h22 - std::norm(h12);
    const double disc = std::max(0.0, beta * beta - 4.0 * alpha * gamma);
    const double sq = std::sqrt(disc);
    // numerically stable pair of roots
    const double qv = -0.5 * (beta + (beta >= 0 ? sq : -sq));
    double r1 = qv / alpha;
    double r2 = qv != 0.0 ? gamma / qv : r1;
    const double lam = maximize ? std::max(r1, r2) : std::min(r1, r2);
    if (maximize ? lam <= rho * (1 + 1e-15) : lam >= rho * (1 - 1e-15)) return false;
    C x, y;
    const C d1 = h11 - lam * s11;
    const C o1 = h12 - lam * s12;
    const C d2 = h22 - lam * s22;
    if (std::abs(d1) >= std::abs(d2)) {
        if (std::abs(d1) == 0.0) return false;
        y = 1.0;
        x = -o1 / d1;
    } else {
        x = 1.0;
        y = -std::conj(o1) / d2;
    }
    c = x * c;
    c(i) += y;
    mc = x * mc + y * qf.matrix().col(i);
    const double scale = c.norm();
    if (scale == 0.0) return false;
    c /= scale;
    mc /= scale;
    rho = std::real(c.dot(mc)) / (w * c.squaredNorm());
    return true;
}

inline double coordinate_search(const QuadraticForm& qf, QuadraticForm::Vec& c, bool maximize, int max_sweeps,
                                int restart, std::vector<TraceEntry>& trace)
{
    c.normalize();
    QuadraticForm::Vec mc = qf.matrix() * c;
    double rho = qf.rayleigh(c);
    const char* phase = maximize ? "max" : "min";
    trace.push_back({phase, restart, 0, rho});
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        const double before = rho;
        for (int i = 0; i < qf.cells(); ++i) coordinate_step(qf, c, mc, i, maximize, rho);
        // refresh to keep mc consistent with c
        mc = qf.matrix() * c;
        rho = qf.rayleigh(c);
        trace.push_back({phase, restart, sweep, rho});
        if (std::abs(rho - before) <= 1e-13 * std::max(1.0, std::abs(rho))) break;
    }
    return rho;
}

}  // namespace detail

/// Seeded random sampling of piecewise-constant test functions followed by
/// coordinate search for the extreme Rayleigh quotients. Deterministic for
/// a fixed seed. rho_max is a lower witness for the optimal upper bound
/// only; rho values are biased low by at most the reported tail.
inline OracleReport empirical_bounds(const GaborSystem& sys, long budget, std::uint64_t seed,
                                     const OracleOptions& opt = {})
{
    if (budget < 1) throw std::invalid_argument("empirical_bounds: budget must be >= 1");
    const QuadraticForm qf(sys, opt);
    OracleReport rep;
    rep.samples = budget;
    rep.m_max = opt.m_max;
    rep.n_min = qf.n_min();
    rep.n_max = qf.n_max();
    rep.cells = qf.cells();

    std::mt19937_64 rng(seed);
    std::vector<std::pair<double, QuadraticForm::Vec>> pool;
    pool.reserve(static_cast<std::size_t>(budget));
    for (long s = 0; s < budget; ++s) {
        QuadraticForm::Vec c = detail::random_vector(qf.cells(), rng);
        const double r = qf.rayleigh(c);
        pool.emplace_back(r, std::move(c));
    }
    std::stable_sort(pool.begin(), pool.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    rep.rho_min = pool.front().first;
    rep.rho_max = pool.back().first;
    rep.search_trace.push_back({"sample", 0, 0, rep.rho_min});
    rep.search_trace.push_back({"sample", 0, 0, rep.rho_max});
    QuadraticForm::Vec best_min = pool.front().second;
    QuadraticForm::Vec best_max = pool.back().second;

    const int restarts = std::min<int>(opt.restarts, static_cast<int>(pool.size()));
    for (int r = 0; r < restarts; ++r) {
        QuadraticForm::Vec lo = pool[static_cast<std::size_t>(r)].second;
        const double vlo = detail::coordinate_search(qf, lo, false, opt.max_sweeps, r, rep.search_trace);
        if (vlo < rep.rho_min) {
            rep.rho_min = vlo;
            best_min = lo;
        }
        QuadraticForm::Vec hi = pool[pool.size() - 1 - static_cast<std::size_t>(r)].second;
        const double vhi = detail::coordinate_search(qf, hi, true, opt.max_sweeps, r, rep.search_trace);
        if (vhi > rep.rho_max) {
            rep.rho_max = vhi;
            best_max = hi;
        }
    }
    rep.rho_min = std::max(rep.rho_min, 0.0);
    rep.tail_at_min = qf.tail(best_min);
    rep.tail_at_max = qf.tail(best_max);
    return rep;
}

struct RayleighSample {
    double rho = 0.0;
    double tail = 0.0;  // relative truncation tail bound for this sample
};

/// Rayleigh quotients of `count` seeded random test functions.
inline std::vector<RayleighSample> sample_rayleigh(const GaborSystem& sys, long count, std::uint64_t seed,
                                                   const OracleOptions& opt = {})
{
    const QuadraticForm qf(sys, opt);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len_dist(1, qf.cells());
    std::vector<RayleighSample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long s = 0; s < count; ++s) {
        QuadraticForm::Vec c = detail::random_vector(qf.cells(), rng);
        // vary the support length so localized and spread-out functions both occur
        const int keep = len_dist(rng);
        const int start = std::uniform_int_distribution<int>(0, qf.cells() - keep)(rng);
        for (int i = 0; i < qf.cells(); ++i)
            if (i < start || i >= start + keep) c(i) = 0.0;
        out.push_back({qf.rayleigh(c), qf.tail(c)});
    }
    return out;
}

/// ||sum_{k=0}^{2n-1} (-1)^k T_k h||, exactly as a squared norm.
struct AlternatingNorm {
    Rat norm_sq{0};
    double norm() const { return std::sqrt(to_double(norm_sq)); }
};

inline AlternatingNorm alternating_norm(const PiecewiseFn& h, long n)
{
    if (n < 1) throw std::invalid_argument("alternating_norm: n must be >= 1");
    PiecewiseFn acc;
    for (long k = 0; k < 2 * n; ++k) {
        const PiecewiseFn t = h.translated(Rat(k));
        acc = (k % 2 == 0) ? acc + t : acc - t;
    }
    return {acc.l2_norm_sq()};
}

}  // namespace whframe
