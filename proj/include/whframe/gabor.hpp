#pragma once

// Gabor systems, frame bounds, and closed-form modulated inner products.

#include "whframe/piecewise.hpp"
#include "whframe/rational.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace whframe {

/// A window together with a rational lattice a*Z x b*Z.
struct GaborSystem {
    PiecewiseFn window;
    Rat a;
    Rat b;

    GaborSystem(PiecewiseFn g, Rat a_, Rat b_) : window(std::move(g)), a(std::move(a_)), b(std::move(b_))
    {
        if (a <= 0 || b <= 0) throw std::invalid_argument("GaborSystem: lattice parameters must be positive");
        if (window.l2_norm_sq() == 0) throw std::invalid_argument("GaborSystem: window must be nonzero");
    }
};

enum class BoundKind { certified, estimated };

inline const char* to_string(BoundKind k) { return k == BoundKind::certified ? "certified" : "estimated"; }

/// Lower and upper frame bounds. A certified lower bound of 0 means that no
/// frame certificate was obtained, not that the system fails to be a frame.
struct FrameBounds {
    Rat lower{0};
    Rat upper{0};
    BoundKind kind = BoundKind::certified;
    /// false when square roots forced outward rounding of the endpoints
    bool exact = true;

    double lower_d() const { return to_double(lower); }
    double upper_d() const { return to_double(upper); }
};

namespace detail {

// s^j e^{-i w s} integrated over [0, L] for j = 0, 1, 2.
inline std::array<std::complex<double>, 3> local_moments(double L, double w)
{
    using C = std::complex<double>;
    std::array<C, 3> J{};
    if (w == 0.0) {
        J[0] = L;
        J[1] = L * L / 2;
        J[2] = L * L * L / 3;
        return J;
    }
    const double x = w * L;
    if (std::abs(x) < 0.5) {
        // sum_k (-i w L)^k / k! * L^(j+1) / (j+k+1)
        const C z(0.0, -x);
        C term = 1.0;
        for (int k = 0; k < 40; ++k) {
            for (int j = 0; j < 3; ++j) J[j] += term / double(j + k + 1);
            term *= z / double(k + 1);
            if (std::abs(term) < 1e-18) break;
        }
        J[1] *= L;
        J[2] *= L * L;
        for (auto& v : J) v *= L;
        return J;
    }
    const C e = std::exp(C(0.0, -x));
    const C inv = 1.0 / C(0.0, -w);  // 1 / (-i w)
    J[0] = (e - 1.0) * inv;
    J[1] = (L * e - J[0]) * inv;
    J[2] = (L * L * e - 2.0 * J[1]) * inv;
    return J;
}

// Exact phase frac(m * x) for x = p/q, with a fast integer path.
class PhaseTable {
public:
    explicit PhaseTable(const Rat& x) : exact_(x)
    {
        const BigInt q = denominator(x);
        const BigInt p = numerator(x) % q;
        if (q <= BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
            q_ = q.convert_to<std::int64_t>();
            p_ = p.convert_to<std::int64_t>();
            if (p_ < 0) p_ += q_;
            fast_ = true;
        }
    }

    /// e^{-2 pi i m x}
    std::complex<double> operator()(long m) const
    {
        if (fast_) {
            __extension__ using i128 = __int128;
            i128 t = static_cast<i128>(m % q_) * p_ % q_;
            if (t < 0) t += q_;
            const double turns = static_cast<double>(static_cast<std::int64_t>(t)) / static_cast<double>(q_);
            constexpr double two_pi = 6.283185307179586476925286766559;
            return {std::cos(two_pi * turns), -std::sin(two_pi * turns)};
        }
        return std::conj(unit_phase(Rat(m) * exact_));
    }

private:
    Rat exact_;
    std::int64_t p_ = 0;
    std::int64_t q_ = 1;
    bool fast_ = false;
};

}  // namespace detail

/// Closed-form Fourier coefficients c_m = int F(t) e^{-2 pi i m b t} dt of a
/// compactly supported piecewise polynomial F of degree <= 2. Cells are
/// re-expanded around their left endpoint so cancellation does not grow
/// with |t|.
class FourierCoefficients {
public:
    FourierCoefficients(const PiecewiseFn& F, const Rat& b) : b_(b)
    {
        for (const auto& s : F.segments()) {
            if (s.p.is_zero()) continue;
            if (s.p.degree() > 2) throw std::invalid_argument("FourierCoefficients: degree > 2");
            const Poly local = s.p.shifted(-s.l);  // local(u) = p(u + l)
            Cell c{to_double(s.r - s.l), {}, detail::PhaseTable(b * s.l), s.p.integrate(s.l, s.r)};
            for (int j = 0; j < 3; ++j) c.d[static_cast<std::size_t>(j)] = local.coeff(static_cast<std::size_t>(j)).to_complex();
            cells_.push_back(std::move(c));
        }
    }

    std::complex<double> operator()(long m) const
    {
        if (m == 0) {
            CRat acc;
            for (const auto& c : cells_) acc += c.integral;
            return acc.to_complex();
        }
        constexpr double two_pi = 6.283185307179586476925286766559;
        const double w = two_pi * static_cast<double>(m) * to_double(b_);
        std::complex<double> acc;
        for (const auto& c : cells_) {
            const auto J = detail::local_moments(c.len, w);
            acc += c.phase(m) * (c.d[0] * J[0] + c.d[1] * J[1] + c.d[2] * J[2]);
        }
        return acc;
    }

    bool empty() const { return cells_.empty(); }

private:
    struct Cell {
        double len;
        std::array<std::complex<double>, 3> d;
        detail::PhaseTable phase;
        CRat integral;
    };
    Rat b_;
    std::vector<Cell> cells_;
};

/// <f, E_{mb} T_{na} g> = int f(t) conj(g(t - na)) e^{-2 pi i m b t} dt.
inline std::complex<double> inner_product_modulated(const PiecewiseFn& f, const PiecewiseFn& g, long m, const Rat& b,
                                                    long n, const Rat& a)
{
    const PiecewiseFn F = f * g.translated(Rat(n) * a).conj();
    if (F.is_zero()) return {};
    return FourierCoefficients(F, b)(m);
}

/// Translation indices n with supp(T_{na} g) meeting supp(f) in a set of
/// positive length.
inline std::vector<long> overlapping_shifts(const PiecewiseFn& f, const PiecewiseFn& g, const Rat& a)
{
    std::vector<long> out;
    if (f.is_zero() || g.is_zero()) return out;
    const auto [fl, fh] = f.support();
    const auto [gl, gh] = g.support();
    // gl + n a < fh and gh + n a > fl
    const BigInt lo = floor_int((fl - gh) / a);
    const BigInt hi = ceil_int((fh - gl) / a);
    for (BigInt n = lo; n <= hi; ++n) {
        const Rat s = Rat(n) * a;
        if (gl + s < fh && gh + s > fl) out.push_back(n.convert_to<long>());
    }
    return out;
}

}  // namespace whframe
