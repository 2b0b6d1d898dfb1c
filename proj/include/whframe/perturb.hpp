#pragma once

// Perturbation certificates: each check evaluates the hypotheses of one
// perturbation criterion exactly (or with a certified enclosure) and, when
// they hold, reports frame bounds for the perturbed system.

#include "whframe/amalgam.hpp"
#include "whframe/enclosure.hpp"
#include "whframe/extrema.hpp"
#include "whframe/gabor.hpp"
#include "whframe/walnut.hpp"
#include "whframe/zak.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace whframe {

enum class Criterion {
    frame_perturbation,  // abstract bound combiner for a frame (f_i) and (g_i)
    cross_term,          // sup_t sum_k |sum_n d(t-na) conj d(t-na-k/b)| <= bR
    amalgam,             // ||g - h||_{W,a} <= sqrt(bR/4)
    zak,                 // sum_n |(g-h)(x+n)| <= lambda sqrt(A), a = b = 1
    truncation,          // chi_[-aN,aN] g stays a frame
    shift,               // translation parameter a -> a', small b'
    lattice_divergence,  // sum_{k,n} |(g-h)(x - na - k/b)|^2 diverges for rational ab
};

inline const char* to_string(Criterion c)
{
    switch (c) {
    case Criterion::frame_perturbation: return "frame_perturbation";
    case Criterion::cross_term: return "cross_term";
    case Criterion::amalgam: return "amalgam";
    case Criterion::zak: return "zak";
    case Criterion::truncation: return "truncation";
    case Criterion::shift: return "shift";
    case Criterion::lattice_divergence: return "lattice_divergence";
    }
    return "?";
}

enum class Verdict { passed, failed, inconclusive };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::passed: return "passed";
    case Verdict::failed: return "failed";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Bounds valid for every b' in (0, b0]: lower_scale / b', upper_scale / b'.
struct ShiftBounds {
    Rat b0;
    Enclosure lower_scale;
    Enclosure upper_scale;

    FrameBounds at(const Rat& b_prime) const
    {
        if (b_prime <= 0 || b_prime > b0) throw std::domain_error("ShiftBounds: b' outside (0, b0]");
        return {lower_scale.lo() / b_prime, upper_scale.hi() / b_prime, BoundKind::certified,
                lower_scale.exact() && upper_scale.exact()};
    }
};

struct Certificate {
    Criterion criterion = Criterion::frame_perturbation;
    std::vector<std::pair<std::string, Enclosure>> values;
    Verdict verdict = Verdict::failed;
    std::optional<FrameBounds> new_bounds;
    std::string failure_reason;
    /// informational: the criterion also transfers the Riesz-basis property
    bool transfers_riesz_basis = false;
    /// where the caller's A and B came from (walnut, zak, user, ...)
    std::string bounds_source;
    std::optional<ShiftBounds> shift_bounds;

    bool passed() const { return verdict == Verdict::passed; }

    const Enclosure& value(const std::string& name) const
    {
        for (const auto& [k, v] : values)
            if (k == name) return v;
        throw std::out_of_range("Certificate: no value named " + name);
    }

    bool has_value(const std::string& name) const
    {
        for (const auto& [k, v] : values)
            if (k == name) return true;
        return false;
    }

    void set(std::string name, Enclosure v) { values.emplace_back(std::move(name), std::move(v)); }
};

/// Bounds of (g_i) when (f_i) is a frame with bounds A, B and
/// sum |<f, f_i - g_i>|^2 <= R ||f||^2 with R < A:
///   A (1 - sqrt(R/A))^2 = A + R - 2 sqrt(AR),  B (1 + sqrt(R/B))^2 = B + R + 2 sqrt(BR).
/// Throws std::domain_error("R must be < A") unless R < A is certain.
inline FrameBounds perturbation_bounds(const Rat& A, const Rat& B, const Enclosure& R)
{
    if (!(A > 0) || B < A) throw std::domain_error("perturbation_bounds: need 0 < A <= B");
    if (R.lo() < 0) throw std::domain_error("perturbation_bounds: R must be nonnegative");
    if (less_than(R, A) != Decision::yes) throw std::domain_error("R must be < A");
    const Rat& r = R.hi();  // both bounds are monotone in R
    const Enclosure lower = clamp_nonneg(Enclosure(A + r) - Enclosure(2) * sqrt_enclosure(A * r));
    const Enclosure upper = Enclosure(B + r) + Enclosure(2) * sqrt_enclosure(B * r);
    return {lower.lo(), upper.hi(), BoundKind::certified, lower.exact() && upper.exact()};
}

namespace detail {

inline void finish(Certificate& c, Decision d, const Rat& A, const Rat& B, const Enclosure& R, const char* fail_msg)
{
    if (d == Decision::yes) {
        c.verdict = Verdict::passed;
        c.new_bounds = perturbation_bounds(A, B, R);
        c.transfers_riesz_basis = true;
    } else if (d == Decision::no) {
        c.verdict = Verdict::failed;
        c.failure_reason = fail_msg;
    } else {
        c.verdict = Verdict::inconclusive;
        c.failure_reason = "inconclusive: enclosure of R straddles A";
    }
}

inline void check_bounds_input(const Rat& A, const Rat& B)
{
    if (!(A > 0) || B < A) throw std::invalid_argument("certificate: need 0 < A <= B");
}

}  // namespace detail

/// Cross-term test on the difference d = h - g:
///   R = ess sup_t sum_k |sum_n d(t-na) conj(d(t-na-k/b))| / b,  pass iff R < A.
inline Certificate certify_cross_term(const PiecewiseFn& g, const PiecewiseFn& h, const Rat& a, const Rat& b,
                                      const Rat& A, const Rat& B, const Rat& tol = default_tolerance())
{
    detail::check_bounds_input(A, B);
    Certificate c;
    c.criterion = Criterion::cross_term;
    const PiecewiseFn d = h - g;
    const Enclosure s = cross_term_sum(cross_correlations(d, d, a, b), tol);
    const Enclosure R = s * Enclosure(1 / b);
    c.set("A", A);
    c.set("B", B);
    c.set("cross_term_sum", s);
    c.set("R", R);
    c.set("R_minus_A", R - Enclosure(A));
    detail::finish(c, less_than(R, A), A, B, R, "hypothesis fails: R >= A");
    return c;
}

/// Amalgam-norm test: w = ||g - h||_{W,a}, R = 4 w^2 / b, pass iff R < A.
inline Certificate certify_amalgam(const PiecewiseFn& g, const PiecewiseFn& h, const Rat& a, const Rat& b,
                                   const Rat& A, const Rat& B)
{
    detail::check_bounds_input(A, B);
    Certificate c;
    c.criterion = Criterion::amalgam;
    const Enclosure w = amalgam_norm(g - h, a).value;
    const Enclosure R = Enclosure(4) * square(w) * Enclosure(1 / b);
    c.set("A", A);
    c.set("B", B);
    c.set("amalgam_norm", w);
    c.set("R", R);
    c.set("R_minus_A", R - Enclosure(A));
    detail::finish(c, less_than(R, A), A, B, R, "hypothesis fails: 4 ||g-h||_{W,a}^2 / b >= A");
    return c;
}

/// The integer-shift sums of a difference d over x in [0, 1).
struct ShiftSums {
    Enclosure l1_sup;  // ess sup_x sum_n |d(x+n)|
    EssRange l2;       // ess range of sum_n |d(x+n)|^2 (exact polynomial)
};

inline ShiftSums integer_shift_sums(const PiecewiseFn& d, const Rat& tol = default_tolerance())
{
    ShiftSums out{Enclosure(0), {Enclosure(0), Enclosure(0)}};
    if (d.is_zero()) return out;
    std::vector<Segment> l2_segments;
    for (const auto& cell : detail::zak_cells(d)) {
        std::vector<Poly> qs;
        Poly sq;
        for (const auto& [n, p] : cell.terms) {
            qs.push_back(p);
            sq += p.norm_sq();
        }
        out.l1_sup = max(out.l1_sup, sup_sum_abs(qs, cell.l, cell.r, tol));
        l2_segments.push_back({cell.l, cell.r, sq});
    }
    out.l2 = ess_range(PiecewiseFn::from_segments(l2_segments), Rat(0), Rat(1), RangeMode::real_part);
    return out;
}

/// Zak-type test for a = b = 1: s = ess sup_x sum_n |(g-h)(x+n)|,
/// lambda = s / sqrt(A), pass iff lambda < 1; bounds (1-lambda)^2 A, (1+lambda)^2 B.
inline Certificate certify_zak(const PiecewiseFn& g, const PiecewiseFn& h, const Rat& A, const Rat& B,
                               const Rat& tol = default_tolerance())
{
    detail::check_bounds_input(A, B);
    Certificate c;
    c.criterion = Criterion::zak;
    const Enclosure s = integer_shift_sums(g - h, tol).l1_sup;
    const Enclosure rootA = sqrt_enclosure(A);
    const Enclosure rootB = sqrt_enclosure(B);
    const Enclosure lambda = s / rootA;
    c.set("A", A);
    c.set("B", B);
    c.set("shift_sum_sup", s);
    c.set("lambda", lambda);
    const Decision d = less_than(square(s), A);
    if (d == Decision::yes) {
        c.verdict = Verdict::passed;
        const Enclosure lower = square(rootA - s);
        const Enclosure upper = square(rootB + s * rootB / rootA);
        c.new_bounds = FrameBounds{lower.lo(), upper.hi(), BoundKind::certified, lower.exact() && upper.exact()};
    } else if (d == Decision::no) {
        c.verdict = Verdict::failed;
        c.failure_reason = "hypothesis fails: lambda >= 1";
    } else {
        c.verdict = Verdict::inconclusive;
        c.failure_reason = "inconclusive: enclosure of lambda straddles 1";
    }
    return c;
}

/// Smallest N >= 1 with ||chi_[-aN,aN] g - g||_{W,a} < sqrt(bA/4), followed
/// by the amalgam test for h = chi_[-aN,aN] g.
inline Certificate certify_truncation(const PiecewiseFn& g, const Rat& a, const Rat& b, const Rat& A, const Rat& B)
{
    detail::check_bounds_input(A, B);
    const Rat threshold_sq = b * A / 4;
    long N = 1;
    Enclosure tail = amalgam_tail(g, a, N);
    while (less_than(square(tail), threshold_sq) != Decision::yes) {
        ++N;
        tail = amalgam_tail(g, a, N);
    }
    const PiecewiseFn h = g.restricted(-a * N, a * N);
    Certificate c = certify_amalgam(g, h, a, b, A, B);
    c.criterion = Criterion::truncation;
    c.set("N", Rat(N));
    c.set("tail", tail);
    c.set("threshold", sqrt_enclosure(threshold_sq));
    return c;
}

/// ess sup over t in [0, a') of sum_n |g(t - na) - g(t - na')|^2. The
/// perturbed sum sum_n |g(t - na')|^2 is a'-periodic, so one period of the
/// new lattice is all the frame-bound argument consults.
inline Rat shift_defect(const PiecewiseFn& g, const Rat& a, const Rat& a_prime)
{
    if (g.is_zero() || a == a_prime) return 0;
    const auto [lo, hi] = g.support();
    auto range_for = [&](const Rat& step) {
        // t - n*step in [lo, hi) for some t in [0, a')
        return std::pair{floor_int(-hi / step), ceil_int((a_prime - lo) / step)};
    };
    const auto [n1, m1] = range_for(a);
    const auto [n2, m2] = range_for(a_prime);
    PiecewiseFn sum;
    for (BigInt n = std::min(n1, n2); n <= std::max(m1, m2); ++n) {
        const PiecewiseFn diff = (g.translated(Rat(n) * a) - g.translated(Rat(n) * a_prime)).restricted(0, a_prime);
        if (diff.is_zero()) continue;
        std::vector<Segment> sq;
        for (const auto& s : diff.segments()) sq.push_back({s.l, s.r, s.p.norm_sq()});
        sum = sum + PiecewiseFn::from_segments(sq);
    }
    if (sum.is_zero()) return 0;
    return ess_range(sum, Rat(0), a_prime, RangeMode::real_part).sup.hi();
}

/// The constructive choices behind the translation-parameter test, before
/// any particular a' is looked at.
struct ShiftRadius {
    Rat epsilon{0};
    Enclosure delta;   // 32 eps ||g||_{W,a} + 16 eps^2
    Enclosure margin;  // (sqrt(bA) - sqrt(R))^2
    Enclosure amalgam;
    long N = 0;
    Rat b0{0};
    bool ok = false;
    std::string reason;
};

namespace detail {

// delta < (sqrt(bA) - sqrt(R))^2  <=>  2 sqrt(bA R) < bA + R - delta, decided
// by squaring, exactly when delta is exact.
inline Decision delta_below_margin(const Enclosure& delta, const Rat& bA, const Rat& R)
{
    const Rat rhs_lo = bA + R - delta.hi();
    const Rat rhs_hi = bA + R - delta.lo();
    const Rat lhs_sq = 4 * bA * R;
    if (rhs_lo > 0 && lhs_sq < rhs_lo * rhs_lo) return Decision::yes;
    if (rhs_hi <= 0 || lhs_sq >= rhs_hi * rhs_hi) return Decision::no;
    return Decision::undecided;
}

}  // namespace detail

/// Largest eps on the grid 1/eps_denominator with eps <= a/2 and
/// 32 eps ||g||_{W,a} + 16 eps^2 < (sqrt(bA) - sqrt(R))^2, then the smallest
/// N with amalgam tail below eps and b0 = 1/(4aN).
inline ShiftRadius shift_radius(const PiecewiseFn& g, const Rat& a, const Rat& b, const Rat& A, const Rat& R,
                                long eps_denominator = 10000)
{
    ShiftRadius out;
    const Rat bA = b * A;
    out.amalgam = amalgam_norm(g, a).value;
    out.margin = clamp_nonneg(Enclosure(bA + R) - Enclosure(2) * sqrt_enclosure(bA * R));
    if (!(R > 0) || R >= bA) {
        out.reason = "R must satisfy 0 < R < bA";
        return out;
    }
    // positive root of 16 e^2 + 32 W e - margin = 0
    const double W = out.amalgam.hi_d();
    const double m = out.margin.lo_d();
    const double root = -W + std::sqrt(W * W + m / 16.0);
    Rat eps(BigInt(static_cast<long long>(std::floor(root * static_cast<double>(eps_denominator)))), BigInt(eps_denominator));
    eps = std::min(eps, a / 2);
    auto delta_of = [&](const Rat& e) { return Enclosure(32 * e) * out.amalgam + Enclosure(16 * e * e); };
    while (eps > 0 && detail::delta_below_margin(delta_of(eps), bA, R) != Decision::yes) eps -= Rat(1, eps_denominator);
    if (!(eps > 0)) {
        out.reason = "no admissible epsilon on the rational grid";
        return out;
    }
    out.epsilon = eps;
    out.delta = delta_of(eps);
    long N = 1;
    while (less_than(amalgam_tail(g, a, N), eps) != Decision::yes) ++N;
    out.N = N;
    out.b0 = 1 / (4 * a * N);
    out.ok = true;
    return out;
}

/// Translation-parameter test. With D the shift defect over one period of
/// the new lattice and R >= D (default: R = max(D, bA/10^4)), reports eps,
/// delta, N, b0 and the bounds
///   (1/b') [(sqrt(bA) - sqrt(R))^2 - delta],  (1/b') [(sqrt(bB) + sqrt(R))^2 + delta]
/// valid for all 0 < b' <= b0, provided |a - a'| < eps.
inline Certificate certify_shift(const PiecewiseFn& g, const Rat& a, const Rat& b, const Rat& A, const Rat& B,
                                 const Rat& a_prime, std::optional<Rat> R_in = std::nullopt,
                                 long eps_denominator = 10000)
{
    detail::check_bounds_input(A, B);
    if (a_prime <= 0) throw std::invalid_argument("certify_shift: a' must be positive");
    Certificate c;
    c.criterion = Criterion::shift;
    const Rat bA = b * A;
    const Rat D = shift_defect(g, a, a_prime);
    const Rat R = R_in ? *R_in : std::max(D, bA / 10000);
    c.set("A", A);
    c.set("B", B);
    c.set("bA", bA);
    c.set("D", D);
    c.set("R", R);
    c.set("shift", abs(a - a_prime));
    if (!(R > 0) || R >= bA) {
        c.failure_reason = "R must satisfy 0 < R < bA";
        return c;
    }
    const ShiftRadius rad = shift_radius(g, a, b, A, R, eps_denominator);
    c.set("amalgam_norm", rad.amalgam);
    c.set("margin", rad.margin);
    if (!rad.ok) {
        c.failure_reason = rad.reason;
        return c;
    }
    c.set("epsilon", rad.epsilon);
    c.set("delta", rad.delta);
    c.set("N", Rat(rad.N));
    c.set("b0", rad.b0);
    if (D > R) {
        c.failure_reason = "hypothesis fails: shift defect D = " + to_string(D) + " exceeds R";
        return c;
    }
    if (abs(a - a_prime) >= rad.epsilon) {
        c.failure_reason = "hypothesis fails: |a - a'| >= epsilon = " + to_string(rad.epsilon);
        return c;
    }
    const Rat bB = b * B;
    const Enclosure lower = rad.margin - rad.delta;
    const Enclosure upper = Enclosure(bB + R) + Enclosure(2) * sqrt_enclosure(bB * R) + rad.delta;
    if (!(lower.lo() > 0)) {
        c.failure_reason = "inconclusive: margin minus delta not certified positive";
        c.verdict = Verdict::inconclusive;
        return c;
    }
    c.verdict = Verdict::passed;
    c.shift_bounds = ShiftBounds{rad.b0, lower, upper};
    c.new_bounds = c.shift_bounds->at(rad.b0);
    return c;
}

/// Sum_{k,n} |(g-h)(x - na - k/b)|^2 is infinite when ab is rational and
/// g != h on a set of positive measure: infinitely many (n, k) satisfy
/// na + k/b = 0.
struct DivergenceReport {
    bool divergent = false;
    std::optional<std::pair<Rat, Rat>> witness;  // a cell where g - h != 0
    std::vector<std::pair<long, long>> zero_pair_counts;  // (box half-width, #pairs)
};

inline DivergenceReport divergence_diagnostic(const PiecewiseFn& g, const PiecewiseFn& h, const Rat& a, const Rat& b,
                                              long box = 64)
{
    DivergenceReport r;
    const PiecewiseFn d = (g - h).simplified();
    for (const auto& s : d.segments()) {
        if (!s.p.is_zero()) {
            r.witness = std::pair{s.l, s.r};
            break;
        }
    }
    if (!r.witness) return r;
    r.divergent = true;
    // na + k/b = 0  <=>  k = -n ab
    const Rat ab = a * b;
    for (long K = box; K <= 4 * box; K *= 2) {
        long count = 0;
        for (long n = -K; n <= K; ++n) {
            const Rat k = -Rat(n) * ab;
            if (denominator(k) == 1 && abs(k) <= K) ++count;
        }
        r.zero_pair_counts.emplace_back(K, count);
    }
    return r;
}

}  // namespace whframe
