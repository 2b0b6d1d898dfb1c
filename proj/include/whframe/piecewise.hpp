#pragma once

#include "whframe/poly.hpp"
#include "whframe/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace whframe {

/// One cell [l, r] of a piecewise function together with its polynomial.
struct Segment {
    Rat l;
    Rat r;
    Poly p;
};

/// Compactly supported piecewise-polynomial function with rational
/// breakpoints. The function is zero outside [front, back] of the breakpoint
/// list. Values at breakpoints are never consulted: two functions that agree
/// on every open cell are the same element of L^2.
class PiecewiseFn {
public:
    PiecewiseFn() = default;

    PiecewiseFn(std::vector<Rat> breakpoints, std::vector<Poly> pieces)
        : bp_(std::move(breakpoints)), pieces_(std::move(pieces))
    {
        if (bp_.empty() && pieces_.empty()) return;
        if (bp_.size() != pieces_.size() + 1)
            throw std::invalid_argument("PiecewiseFn: need exactly one more breakpoint than pieces");
        for (std::size_t i = 1; i < bp_.size(); ++i)
            if (!(bp_[i - 1] < bp_[i])) throw std::invalid_argument("PiecewiseFn: breakpoints must be strictly ascending");
        trim();
    }

    static PiecewiseFn zero() { return {}; }

    static PiecewiseFn indicator(const Rat& lo, const Rat& hi, const CRat& value = CRat(1))
    {
        if (!(lo < hi)) throw std::invalid_argument("indicator: empty interval");
        return PiecewiseFn({lo, hi}, {Poly::constant(value)});
    }

    /// Triangle supported on [lo, hi] with the given peak at the midpoint.
    static PiecewiseFn hat(const Rat& lo, const Rat& hi, const Rat& peak = 1)
    {
        if (!(lo < hi)) throw std::invalid_argument("hat: empty interval");
        const Rat mid = (lo + hi) / 2;
        const Rat slope = peak / (mid - lo);
        Poly up = Poly::affine(CRat(-slope * lo), CRat(slope));
        Poly down = Poly::affine(CRat(slope * hi), CRat(-slope));
        return PiecewiseFn({lo, mid, hi}, {std::move(up), std::move(down)});
    }

    const std::vector<Rat>& breakpoints() const { return bp_; }
    const std::vector<Poly>& pieces() const { return pieces_; }
    std::size_t num_pieces() const { return pieces_.size(); }

    bool is_zero() const { return pieces_.empty(); }

    /// Support hull [lo, hi]; (0, 0) for the zero function.
    std::pair<Rat, Rat> support() const
    {
        if (is_zero()) return {Rat(0), Rat(0)};
        return {bp_.front(), bp_.back()};
    }

    int max_degree() const
    {
        int d = -1;
        for (const auto& p : pieces_) d = std::max(d, p.degree());
        return d;
    }

    bool is_real() const
    {
        return std::all_of(pieces_.begin(), pieces_.end(), [](const Poly& p) { return p.is_real(); });
    }

    bool is_piecewise_constant() const { return max_degree() <= 0; }

    /// Index of the open cell containing t, or -1 outside the support. At a
    /// breakpoint the cell to the right is returned.
    long cell_of(const Rat& t) const
    {
        if (is_zero() || t < bp_.front() || t >= bp_.back()) return -1;
        auto it = std::upper_bound(bp_.begin(), bp_.end(), t);
        return static_cast<long>(it - bp_.begin()) - 1;
    }

    CRat operator()(const Rat& t) const
    {
        const long i = cell_of(t);
        return i < 0 ? CRat{} : pieces_[static_cast<std::size_t>(i)](t);
    }

    std::complex<double> operator()(double t) const
    {
        if (is_zero() || t < to_double(bp_.front()) || t >= to_double(bp_.back())) return {};
        return (*this)(from_double(t)).to_complex();
    }

    /// Cells covering [lo, hi], including zero-valued gaps outside the support.
    std::vector<Segment> segments(const Rat& lo, const Rat& hi) const
    {
        std::vector<Segment> out;
        if (!(lo < hi)) return out;
        if (is_zero() || hi <= bp_.front() || lo >= bp_.back()) {
            out.push_back({lo, hi, Poly()});
            return out;
        }
        Rat cur = lo;
        if (cur < bp_.front()) {
            out.push_back({cur, bp_.front(), Poly()});
            cur = bp_.front();
        }
        for (std::size_t i = 0; i < pieces_.size() && cur < hi; ++i) {
            if (bp_[i + 1] <= cur) continue;
            const Rat r = std::min(bp_[i + 1], hi);
            out.push_back({cur, r, pieces_[i]});
            cur = r;
        }
        if (cur < hi) out.push_back({cur, hi, Poly()});
        return out;
    }

    /// Cells of the support only.
    std::vector<Segment> segments() const
    {
        if (is_zero()) return {};
        return segments(bp_.front(), bp_.back());
    }

    /// Same function with extra breakpoints inserted; pieces are duplicated.
    PiecewiseFn refined(std::vector<Rat> points) const
    {
        if (is_zero()) return *this;
        std::vector<Rat> bp = bp_;
        for (auto& p : points)
            if (bp_.front() < p && p < bp_.back()) bp.push_back(std::move(p));
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        std::vector<Poly> pieces;
        pieces.reserve(bp.size() - 1);
        for (std::size_t i = 0; i + 1 < bp.size(); ++i) pieces.push_back(pieces_[static_cast<std::size_t>(cell_of(bp[i]))]);
        PiecewiseFn out;
        out.bp_ = std::move(bp);
        out.pieces_ = std::move(pieces);
        return out;
    }

    /// Merges equal neighbouring pieces and zero gaps.
    PiecewiseFn simplified() const
    {
        if (is_zero()) return *this;
        std::vector<Rat> bp{bp_.front()};
        std::vector<Poly> pieces;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (!pieces.empty() && pieces.back() == pieces_[i]) {
                bp.back() = bp_[i + 1];
                continue;
            }
            pieces.push_back(pieces_[i]);
            bp.push_back(bp_[i + 1]);
        }
        return PiecewiseFn(std::move(bp), std::move(pieces));
    }

    /// t -> f(t - s).
    PiecewiseFn translated(const Rat& s) const
    {
        if (is_zero() || s == 0) return *this;
        PiecewiseFn out;
        out.bp_.reserve(bp_.size());
        for (const auto& b : bp_) out.bp_.push_back(b + s);
        out.pieces_.reserve(pieces_.size());
        for (const auto& p : pieces_) out.pieces_.push_back(p.shifted(s));
        return out;
    }

    PiecewiseFn conj() const
    {
        PiecewiseFn out = *this;
        for (auto& p : out.pieces_) p = p.conj();
        return out;
    }

    PiecewiseFn scaled(const CRat& c) const
    {
        if (c.is_zero()) return {};
        PiecewiseFn out = *this;
        for (auto& p : out.pieces_) p = c * p;
        return out;
    }

    /// chi_[lo, hi] * f.
    PiecewiseFn restricted(const Rat& lo, const Rat& hi) const
    {
        if (is_zero() || !(lo < hi)) return {};
        const Rat l = std::max(lo, bp_.front());
        const Rat r = std::min(hi, bp_.back());
        if (!(l < r)) return {};
        auto segs = segments(l, r);
        return from_segments(segs);
    }

    /// |f| for real-valued windows of degree <= 1; cells are split at sign
    /// changes so the result is again piecewise affine.
    PiecewiseFn abs_real() const
    {
        if (!is_real() || max_degree() > 1) throw std::invalid_argument("abs_real: needs a real window of degree <= 1");
        std::vector<Segment> out;
        for (const auto& s : segments()) {
            const Poly& p = s.p;
            if (p.degree() == 1) {
                const Rat root = -p.coeff(0).re / p.coeff(1).re;
                if (s.l < root && root < s.r) {
                    const bool left_neg = p(s.l).re < 0;
                    out.push_back({s.l, root, left_neg ? -p : p});
                    out.push_back({root, s.r, left_neg ? p : -p});
                    continue;
                }
            }
            const Rat mid = (s.l + s.r) / 2;
            out.push_back({s.l, s.r, p(mid).re < 0 ? -p : p});
        }
        return from_segments(out);
    }

    /// Exact integral of |f|^2.
    Rat l2_norm_sq() const
    {
        Rat acc = 0;
        for (std::size_t i = 0; i < pieces_.size(); ++i) acc += pieces_[i].norm_sq().integrate(bp_[i], bp_[i + 1]).re;
        return acc;
    }

    /// Exact integral of f.
    CRat integral() const
    {
        CRat acc;
        for (std::size_t i = 0; i < pieces_.size(); ++i) acc += pieces_[i].integrate(bp_[i], bp_[i + 1]);
        return acc;
    }

    /// Lebesgue measure of the set where f != 0 (pieces that vanish
    /// identically count as zero; isolated roots are null sets).
    Rat support_measure() const
    {
        Rat m = 0;
        for (std::size_t i = 0; i < pieces_.size(); ++i)
            if (!pieces_[i].is_zero()) m += bp_[i + 1] - bp_[i];
        return m;
    }

    static PiecewiseFn from_segments(const std::vector<Segment>& segs)
    {
        if (segs.empty()) return {};
        std::vector<Rat> bp;
        std::vector<Poly> pieces;
        for (const auto& s : segs) {
            if (!(s.l < s.r)) continue;
            if (bp.empty()) {
                bp.push_back(s.l);
            } else if (bp.back() != s.l) {
                if (bp.back() > s.l) throw std::invalid_argument("from_segments: overlapping segments");
                pieces.emplace_back();
                bp.push_back(s.l);
            }
            pieces.push_back(s.p);
            bp.push_back(s.r);
        }
        if (pieces.empty()) return {};
        return PiecewiseFn(std::move(bp), std::move(pieces));
    }

    /// Pointwise combination on the union of both breakpoint sets.
    template <class Op>
    static PiecewiseFn combine(const PiecewiseFn& f, const PiecewiseFn& g, Op op)
    {
        if (f.is_zero() && g.is_zero()) return {};
        std::vector<Rat> bp;
        bp.reserve(f.bp_.size() + g.bp_.size());
        bp.insert(bp.end(), f.bp_.begin(), f.bp_.end());
        bp.insert(bp.end(), g.bp_.begin(), g.bp_.end());
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        std::vector<Poly> pieces;
        pieces.reserve(bp.size() - 1);
        for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
            const long fi = f.cell_of(bp[i]);
            const long gi = g.cell_of(bp[i]);
            const Poly fp = fi < 0 ? Poly() : f.pieces_[static_cast<std::size_t>(fi)];
            const Poly gp = gi < 0 ? Poly() : g.pieces_[static_cast<std::size_t>(gi)];
            pieces.push_back(op(fp, gp));
        }
        return PiecewiseFn(std::move(bp), std::move(pieces));
    }

    friend PiecewiseFn operator+(const PiecewiseFn& f, const PiecewiseFn& g)
    {
        return combine(f, g, [](const Poly& x, const Poly& y) { return x + y; });
    }
    friend PiecewiseFn operator-(const PiecewiseFn& f, const PiecewiseFn& g)
    {
        return combine(f, g, [](const Poly& x, const Poly& y) { return x - y; });
    }
    friend PiecewiseFn operator*(const PiecewiseFn& f, const PiecewiseFn& g)
    {
        if (f.is_zero() || g.is_zero()) return {};
        const Rat lo = std::max(f.bp_.front(), g.bp_.front());
        const Rat hi = std::min(f.bp_.back(), g.bp_.back());
        if (!(lo < hi)) return {};
        return combine(f.restricted(lo, hi), g.restricted(lo, hi), [](const Poly& x, const Poly& y) { return x * y; });
    }

    /// Equality as elements of L^2: same value on every open cell.
    friend bool equal_ae(const PiecewiseFn& f, const PiecewiseFn& g) { return (f - g).is_zero(); }

    /// Identical representation (same breakpoints and pieces).
    friend bool operator==(const PiecewiseFn& f, const PiecewiseFn& g) { return f.bp_ == g.bp_ && f.pieces_ == g.pieces_; }

private:
    void trim()
    {
        std::size_t first = 0;
        while (first < pieces_.size() && pieces_[first].is_zero()) ++first;
        std::size_t last = pieces_.size();
        while (last > first && pieces_[last - 1].is_zero()) --last;
        if (first == last) {
            bp_.clear();
            pieces_.clear();
            return;
        }
        if (first > 0 || last < pieces_.size()) {
            pieces_ = std::vector<Poly>(pieces_.begin() + static_cast<long>(first), pieces_.begin() + static_cast<long>(last));
            bp_ = std::vector<Rat>(bp_.begin() + static_cast<long>(first), bp_.begin() + static_cast<long>(last) + 1);
        }
    }

    std::vector<Rat> bp_;
    std::vector<Poly> pieces_;
};

/// The value at x of the function with representative `rep` on [0, period),
/// extended periodically.
inline CRat periodic_value(const PiecewiseFn& rep, const Rat& period, const Rat& x)
{
    return rep(frac(x / period) * period);
}

/// Periodization sum_n f(t - n*period), returned as a representative on
/// [0, period). The n-sum is finite because f has compact support.
inline PiecewiseFn periodize(const PiecewiseFn& f, const Rat& period)
{
    if (f.is_zero()) return {};
    const auto [lo, hi] = f.support();
    // t - n*period in [lo, hi) for some t in [0, period)  <=>  n in (-hi/period, (period-lo)/period]
    const BigInt n_min = floor_int(-hi / period);
    const BigInt n_max = ceil_int((period - lo) / period);
    PiecewiseFn acc;
    for (BigInt n = n_min; n <= n_max; ++n) {
        const PiecewiseFn part = f.translated(Rat(n) * period).restricted(0, period);
        if (!part.is_zero()) acc = acc + part;
    }
    return acc;
}

}  // namespace whframe
