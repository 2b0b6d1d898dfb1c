#pragma once

// Exact rational scalars and the complex numbers built from them.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace whframe {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

/// Exact conversion; every finite double is a dyadic rational.
inline Rat from_double(double x)
{
    if (!std::isfinite(x)) throw std::domain_error("from_double: non-finite value");
    return Rat(x);
}

inline std::string to_string(const Rat& x)
{
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

namespace detail {

inline BigInt parse_int(std::string_view s, std::string_view whole)
{
    if (s.empty()) throw std::invalid_argument("invalid rational '" + std::string(whole) + "'");
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') i = 1;
    if (i == s.size()) throw std::invalid_argument("invalid rational '" + std::string(whole) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9')
            throw std::invalid_argument("invalid rational '" + std::string(whole) + "'");
    // cpp_int reads a leading 0 as an octal prefix
    std::size_t first = s.find_first_not_of('0', i);
    if (first == std::string_view::npos) return BigInt(0);
    BigInt v(std::string(s.substr(first)));
    return s[0] == '-' ? BigInt(-v) : v;
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace detail

/// Parses "p/q", "p" or a plain decimal such as "-0.125" into an exact rational.
inline Rat parse_rat(std::string_view text)
{
    const std::string_view s = detail::trim(text);
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const BigInt num = detail::parse_int(detail::trim(s.substr(0, slash)), text);
        const BigInt den = detail::parse_int(detail::trim(s.substr(slash + 1)), text);
        if (den == 0) throw std::invalid_argument("invalid rational '" + std::string(text) + "': zero denominator");
        return Rat(num, den);
    }
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string digits(s.substr(0, dot));
        const std::string_view frac = s.substr(dot + 1);
        if (frac.empty() || digits == "-" || digits == "+" || digits.empty()) digits += "0";
        digits += frac;
        BigInt den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        return Rat(detail::parse_int(digits, text), den);
    }
    return Rat(detail::parse_int(s, text));
}

inline BigInt floor_int(const Rat& x)
{
    BigInt q = numerator(x) / denominator(x);  // truncates toward zero
    if (x < 0 && Rat(q) != x) q -= 1;
    return q;
}

inline BigInt ceil_int(const Rat& x)
{
    BigInt f = floor_int(x);
    return Rat(f) == x ? f : BigInt(f + 1);
}

/// x - floor(x), in [0, 1).
inline Rat frac(const Rat& x) { return x - Rat(floor_int(x)); }

inline Rat abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline std::optional<Rat> exact_sqrt(const Rat& x)
{
    if (x < 0) return std::nullopt;
    const BigInt& n = numerator(x);
    const BigInt& d = denominator(x);
    const BigInt rn = boost::multiprecision::sqrt(n);
    const BigInt rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return Rat(rn, rd);
}

/// 2*pi*x for x in [0,1) given exactly, reduced before rounding so that
/// phases of large arguments stay accurate and periodic.
inline std::complex<double> unit_phase(const Rat& turns)
{
    const double t = to_double(frac(turns));
    constexpr double two_pi = 6.283185307179586476925286766559;
    return {std::cos(two_pi * t), std::sin(two_pi * t)};
}

/// Complex number with exact rational parts.
struct CRat {
    Rat re{0};
    Rat im{0};

    CRat() = default;
    CRat(Rat r) : re(std::move(r)) {}
    CRat(int r) : re(r) {}
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    Rat norm_sq() const { return re * re + im * im; }
    CRat conj() const { return {re, -im}; }
    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    CRat& operator+=(const CRat& o) { re += o.re; im += o.im; return *this; }
    CRat& operator-=(const CRat& o) { re -= o.re; im -= o.im; return *this; }
    CRat& operator*=(const CRat& o)
    {
        Rat r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    friend CRat operator+(CRat a, const CRat& b) { return a += b; }
    friend CRat operator-(CRat a, const CRat& b) { return a -= b; }
    friend CRat operator*(CRat a, const CRat& b) { return a *= b; }
    friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
};

}  // namespace whframe
