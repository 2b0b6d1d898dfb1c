#pragma once

#include "whframe/enclosure.hpp"
#include "whframe/rational.hpp"

#include <complex>
#include <initializer_list>
#include <vector>

namespace whframe {

/// Polynomial in the absolute variable t with exact complex-rational
/// coefficients, stored lowest order first. Trailing zeros are trimmed so
/// the zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    Poly(std::vector<CRat> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<CRat> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(CRat c) { return Poly({std::move(c)}); }
    static Poly affine(CRat c0, CRat c1) { return Poly({std::move(c0), std::move(c1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_real() const
    {
        for (const auto& c : c_)
            if (!c.is_real()) return false;
        return true;
    }
    CRat coeff(std::size_t j) const { return j < c_.size() ? c_[j] : CRat{}; }
    const std::vector<CRat>& coeffs() const { return c_; }

    CRat operator()(const Rat& t) const
    {
        CRat acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * CRat(t) + *it;
        return acc;
    }

    std::complex<double> operator()(double t) const
    {
        std::complex<double> acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->to_complex();
        return acc;
    }

    Poly conj() const
    {
        std::vector<CRat> out;
        out.reserve(c_.size());
        for (const auto& c : c_) out.push_back(c.conj());
        return Poly(std::move(out));
    }

    Poly real_part() const
    {
        std::vector<CRat> out;
        for (const auto& c : c_) out.emplace_back(c.re);
        return Poly(std::move(out));
    }

    Poly imag_part() const
    {
        std::vector<CRat> out;
        for (const auto& c : c_) out.emplace_back(c.im);
        return Poly(std::move(out));
    }

    /// t -> p(t - s).
    Poly shifted(const Rat& s) const
    {
        std::vector<CRat> out(c_.size());
        // (t - s)^j = sum_i C(j,i) t^i (-s)^(j-i)
        for (std::size_t j = 0; j < c_.size(); ++j) {
            Rat binom = 1;
            for (std::size_t i = 0; i <= j; ++i) {
                if (i > 0) binom = binom * Rat(static_cast<long>(j - i + 1)) / Rat(static_cast<long>(i));
                Rat pw = 1;
                for (std::size_t k = 0; k < j - i; ++k) pw *= -s;
                out[i] += c_[j] * CRat(binom * pw);
            }
        }
        return Poly(std::move(out));
    }

    Poly derivative() const
    {
        std::vector<CRat> out;
        for (std::size_t j = 1; j < c_.size(); ++j) out.push_back(c_[j] * CRat(Rat(static_cast<long>(j))));
        return Poly(std::move(out));
    }

    /// Exact integral over [l, r].
    CRat integrate(const Rat& l, const Rat& r) const
    {
        CRat acc;
        Rat pl = l, pr = r;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            acc += c_[j] * CRat((pr - pl) / Rat(static_cast<long>(j + 1)));
            pl *= l;
            pr *= r;
        }
        return acc;
    }

    /// |p|^2 = p * conj(p), a real polynomial.
    Poly norm_sq() const { return *this * conj(); }

    Poly& operator+=(const Poly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] -= o.c_[j];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) { return Poly() - a; }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<CRat> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(out));
    }
    friend Poly operator*(const CRat& s, const Poly& p) { return Poly::constant(s) * p; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<CRat> c_;
};

/// Exact minimum and maximum of a real polynomial of degree <= 2 on [l, r].
struct RealExtrema {
    Rat min;
    Rat max;
};

inline RealExtrema real_extrema(const Poly& p, const Rat& l, const Rat& r)
{
    if (p.degree() > 2) throw std::invalid_argument("real_extrema: degree > 2");
    const Poly q = p.real_part();
    Rat vl = q(l).re, vr = q(r).re;
    RealExtrema e{std::min(vl, vr), std::max(vl, vr)};
    if (q.degree() == 2) {
        const Rat v = -q.coeff(1).re / (2 * q.coeff(2).re);
        if (l < v && v < r) {
            const Rat vv = q(v).re;
            e.min = std::min(e.min, vv);
            e.max = std::max(e.max, vv);
        }
    }
    return e;
}

}  // namespace whframe
