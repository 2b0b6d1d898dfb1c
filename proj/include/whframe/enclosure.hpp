#pragma once

#include "whframe/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace whframe {

/// A closed interval [lo, hi] of rationals known to contain a real quantity.
/// lo == hi means the quantity is known exactly.
///
/// Arithmetic is exact on the endpoints, so the only widening comes from
/// square roots of non-square rationals (bracketed by adjacent doubles).
class Enclosure {
public:
    Enclosure() = default;
    Enclosure(Rat exact) : lo_(exact), hi_(std::move(exact)) {}
    Enclosure(int exact) : lo_(exact), hi_(exact) {}
    Enclosure(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi))
    {
        if (hi_ < lo_) throw std::invalid_argument("Enclosure: lo > hi");
    }

    const Rat& lo() const { return lo_; }
    const Rat& hi() const { return hi_; }
    bool exact() const { return lo_ == hi_; }
    Rat width() const { return hi_ - lo_; }
    double lo_d() const { return to_double(lo_); }
    double hi_d() const { return to_double(hi_); }
    double mid_d() const { return to_double((lo_ + hi_) / 2); }

    bool contains(const Rat& x) const { return lo_ <= x && x <= hi_; }

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo_ + b.lo_, a.hi_ + b.hi_}; }
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo_ - b.hi_, a.hi_ - b.lo_}; }
    friend Enclosure operator-(const Enclosure& a) { return {-a.hi_, -a.lo_}; }
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b)
    {
        if (a.exact() && b.exact()) return Enclosure(a.lo_ * b.lo_);
        const Rat p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
        return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
    }
    /// Division by an interval that excludes zero.
    friend Enclosure operator/(const Enclosure& a, const Enclosure& b)
    {
        if (b.lo_ <= 0 && b.hi_ >= 0) throw std::domain_error("Enclosure: division by interval containing 0");
        return a * Enclosure(1 / b.hi_, 1 / b.lo_);
    }
    Enclosure& operator+=(const Enclosure& o) { return *this = *this + o; }

    friend bool operator==(const Enclosure& a, const Enclosure& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

private:
    Rat lo_{0};
    Rat hi_{0};
};

inline Enclosure hull(const Enclosure& a, const Enclosure& b)
{
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

inline Enclosure max(const Enclosure& a, const Enclosure& b)
{
    return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

inline Enclosure min(const Enclosure& a, const Enclosure& b)
{
    return {std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

inline Enclosure clamp_nonneg(const Enclosure& a)
{
    return {std::max(a.lo(), Rat(0)), std::max(a.hi(), Rat(0))};
}

inline Enclosure square(const Enclosure& a)
{
    if (a.lo() >= 0) return {a.lo() * a.lo(), a.hi() * a.hi()};
    if (a.hi() <= 0) return {a.hi() * a.hi(), a.lo() * a.lo()};
    return {Rat(0), std::max(a.lo() * a.lo(), a.hi() * a.hi())};
}

/// Certified bracket of sqrt(x) for x >= 0; exact when x is a rational square.
inline Enclosure sqrt_enclosure(const Rat& x)
{
    if (x < 0) throw std::domain_error("sqrt_enclosure: negative argument");
    if (auto r = exact_sqrt(x)) return Enclosure(*r);
    const double s = std::sqrt(to_double(x));
    double lo = std::nextafter(s, 0.0);
    double hi = std::nextafter(s, std::numeric_limits<double>::infinity());
    while (lo > 0 && Rat(lo) * Rat(lo) > x) lo = std::nextafter(lo, 0.0);
    while (Rat(hi) * Rat(hi) < x) hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
    return {Rat(std::max(lo, 0.0)), Rat(hi)};
}

inline Enclosure sqrt(const Enclosure& a)
{
    if (a.exact()) return sqrt_enclosure(a.lo());
    const Enclosure l = sqrt_enclosure(std::max(a.lo(), Rat(0)));
    const Enclosure h = sqrt_enclosure(a.hi());
    return {l.lo(), h.hi()};
}

/// Three-valued comparison outcome for enclosures against a threshold.
enum class Decision { yes, no, undecided };

inline Decision less_than(const Enclosure& x, const Rat& bound)
{
    if (x.hi() < bound) return Decision::yes;
    if (x.lo() >= bound) return Decision::no;
    return Decision::undecided;
}

inline Decision less_equal(const Enclosure& x, const Rat& bound)
{
    if (x.hi() <= bound) return Decision::yes;
    if (x.lo() > bound) return Decision::no;
    return Decision::undecided;
}

inline std::string to_string(const Enclosure& e)
{
    if (e.exact()) return to_string(e.lo());
    return "[" + to_string(e.lo()) + ", " + to_string(e.hi()) + "]";
}

}  // namespace whframe
