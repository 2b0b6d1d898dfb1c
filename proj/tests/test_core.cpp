#include "support.hpp"

#include <gtest/gtest.h>

using namespace whframe;
using testing_support::Gen;
using testing_support::WindowShape;

namespace {

PiecewiseFn chi(Rat l, Rat r) { return PiecewiseFn::indicator(l, r); }

}  // namespace

TEST(Translate, ShiftsBreakpointsExactly)
{
    EXPECT_EQ(chi(0, 1).translated(2), chi(2, 3));
    Gen gen(1);
    for (int i = 0; i < 100; ++i) {
        const PiecewiseFn f = gen.window({5, 1, true});
        const Rat p = gen.rational(5, 7);
        EXPECT_EQ(f.translated(0), f);
        EXPECT_EQ(f.translated(p).translated(-p), f);
    }
}

TEST(Translate, IsAnIsometry)
{
    Gen gen(2);
    for (int i = 0; i < 100; ++i) {
        const PiecewiseFn f = gen.window({5, 1, true});
        EXPECT_EQ(f.translated(gen.rational(9, 13)).l2_norm_sq(), f.l2_norm_sq());
    }
}

TEST(InnerProduct, SpecExamples)
{
    const auto one = inner_product_modulated(chi(0, 1), chi(0, 1), 0, 1, 0, 1);
    EXPECT_NEAR(one.real(), 1.0, 1e-15);
    EXPECT_NEAR(one.imag(), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(inner_product_modulated(chi(0, 1), chi(0, 1), 1, 1, 0, 1)), 0.0, 1e-15);
    const auto v = inner_product_modulated(chi(0, 1), chi(0, 2), 1, Rat(1, 2), 0, 1);
    const auto q = testing_support::quadrature_inner(chi(0, 1), chi(0, 2), 1, Rat(1, 2), 0, 1);
    EXPECT_LE(std::abs(v - q), 1e-10);
}

TEST(InnerProduct, MatchesQuadratureOracleOnRandomInputs)
{
    Gen gen(3);
    for (int i = 0; i < 60; ++i) {
        const PiecewiseFn f = gen.window({4, 1, true});
        const PiecewiseFn g = gen.window({4, 1, true});
        const Rat a = gen.positive(2, 4), b = gen.positive(2, 4);
        const long m = gen.integer(-40, 40), n = gen.integer(-3, 3);
        const auto v = inner_product_modulated(f, g, m, b, n, a);
        const auto q = testing_support::quadrature_inner(f, g, m, b, n, a);
        EXPECT_LE(std::abs(v - q), 1e-10) << "m=" << m << " n=" << n;
    }
}

TEST(InnerProduct, LargeFrequenciesStayAccurate)
{
    const PiecewiseFn f = PiecewiseFn::hat(Rat(1, 3), Rat(7, 5));
    const PiecewiseFn g = chi(Rat(-1, 2), Rat(3, 2));
    for (long m : {1000L, 4095L, -20000L}) {
        const auto v = inner_product_modulated(f, g, m, Rat(3, 7), 1, Rat(1, 3));
        const auto q = testing_support::quadrature_inner(f, g, m, Rat(3, 7), 1, Rat(1, 3));
        EXPECT_LE(std::abs(v - q), 1e-10) << m;
    }
}

TEST(InnerProduct, DiagonalEqualsNormSquared)
{
    Gen gen(4);
    for (int i = 0; i < 100; ++i) {
        const PiecewiseFn f = gen.window({5, 1, true});
        const Rat a = gen.positive(3, 5), b = gen.positive(3, 5);
        const double n2 = to_double(f.l2_norm_sq());
        EXPECT_NEAR(inner_product_modulated(f, f, 0, b, 0, a).real(), n2, 1e-12 * n2);
    }
}

TEST(L2Norm, SpecExamples)
{
    EXPECT_EQ(chi(0, 2).l2_norm_sq(), Rat(2));
    EXPECT_EQ(windows::paper_eps(Rat(1, 4)).l2_norm_sq(), Rat(25, 16));
    EXPECT_EQ(windows::hat().l2_norm_sq(), Rat(2, 3));
}

TEST(EssRange, SpecExamples)
{
    const EssRange r = ess_range(chi(0, 1), 0, 1);
    EXPECT_EQ(r.inf, Enclosure(1));
    EXPECT_EQ(r.sup, Enclosure(1));
    const EssRange z = ess_range(PiecewiseFn{}, 0, 1);
    EXPECT_EQ(z.inf, Enclosure(0));
    EXPECT_EQ(z.sup, Enclosure(0));
    const PiecewiseFn ramp({Rat(0), Rat(1)}, {Poly::affine(CRat(0), CRat(1))});
    const EssRange m = ess_range(ramp, 0, 1, RangeMode::modulus);
    EXPECT_EQ(m.inf, Enclosure(0));
    EXPECT_EQ(m.sup, Enclosure(1));
}

TEST(EssRange, ExactForPiecewiseConstantInputs)
{
    Gen gen(5);
    for (int i = 0; i < 100; ++i) {
        const PiecewiseFn f = gen.constant_window(5, 4, 3, true);
        const Rat lo = gen.rational(3, 4);
        const Rat hi = lo + gen.positive(3, 4);
        for (auto mode : {RangeMode::real_part, RangeMode::modulus}) {
            const EssRange r = ess_range(f, lo, hi, mode);
            EXPECT_TRUE(r.inf.exact() || mode == RangeMode::modulus);
            EXPECT_TRUE(r.sup.exact() || mode == RangeMode::modulus);
            if (mode == RangeMode::real_part || f.is_real()) {
                EXPECT_TRUE(r.inf.exact());
                EXPECT_TRUE(r.sup.exact());
            }
        }
    }
}

TEST(EssRange, EnclosesDenseSamples)
{
    Gen gen(6);
    for (int i = 0; i < 60; ++i) {
        const PiecewiseFn f = gen.window({4, 1, true});
        const auto [lo, hi] = f.support();
        const EssRange r = ess_range(f, lo, hi, RangeMode::modulus);
        const double l = to_double(lo), h = to_double(hi);
        for (int k = 0; k < 2000; ++k) {
            const double t = l + (h - l) * (k + 0.5) / 2000;
            const double v = std::abs(f(t));
            EXPECT_GE(v, r.inf.lo_d() - 1e-12);
            EXPECT_LE(v, r.sup.hi_d() + 1e-12);
        }
    }
}

TEST(Refinement, ChangesNoOutput)
{
    Gen gen(7);
    for (int i = 0; i < 40; ++i) {
        const PiecewiseFn f = gen.window({4, 1, false});
        const auto [lo, hi] = f.support();
        std::vector<Rat> pts;
        for (int k = 0; k < 3; ++k) pts.push_back(lo + (hi - lo) * gen.positive(1, 7) / 2);
        const PiecewiseFn r = f.refined(pts);
        EXPECT_GT(r.num_pieces(), f.num_pieces() - 1);
        EXPECT_TRUE(equal_ae(f, r));
        EXPECT_EQ(r.l2_norm_sq(), f.l2_norm_sq());
        const EssRange e1 = ess_range(f, lo, hi), e2 = ess_range(r, lo, hi);
        EXPECT_EQ(e1.inf, e2.inf);
        EXPECT_EQ(e1.sup, e2.sup);
        EXPECT_EQ(amalgam_norm(f, 1).value, amalgam_norm(r, 1).value);
        const FrameBounds w1 = walnut_bounds(GaborSystem{f, 1, Rat(1, 2)});
        const FrameBounds w2 = walnut_bounds(GaborSystem{r, 1, Rat(1, 2)});
        EXPECT_EQ(w1.lower, w2.lower);
        EXPECT_EQ(w1.upper, w2.upper);
        EXPECT_NEAR(std::abs(inner_product_modulated(f, f, 3, 1, 0, Rat(1, 2)) - inner_product_modulated(r, r, 3, 1, 0, Rat(1, 2))),
                    0.0, 1e-13);
        EXPECT_EQ(r.simplified(), f.simplified());
    }
}

TEST(Poly, ArithmeticAndIntegration)
{
    const Poly p = Poly::affine(CRat(1), CRat(2));  // 1 + 2t
    const Poly q = p * p;                           // 1 + 4t + 4t^2
    EXPECT_EQ(q.degree(), 2);
    EXPECT_EQ(q.integrate(0, 1).re, Rat(1) + Rat(2) + Rat(4, 3));
    EXPECT_EQ(p.shifted(1)(Rat(1)).re, Rat(1));
    EXPECT_EQ(p.derivative(), Poly::constant(CRat(2)));
    EXPECT_TRUE((p - p).is_zero());
}

TEST(Piecewise, OperationsAgreeWithPointEvaluation)
{
    Gen gen(8);
    for (int i = 0; i < 60; ++i) {
        const PiecewiseFn f = gen.window({4, 1, true}), g = gen.window({4, 1, true});
        const PiecewiseFn s = f + g, d = f - g, p = f * g.conj();
        for (int k = 0; k < 50; ++k) {
            const Rat t = gen.rational(4, 97);
            bool on_break = false;
            for (const auto* h : {&f, &g})
                on_break = on_break || std::find(h->breakpoints().begin(), h->breakpoints().end(), t) != h->breakpoints().end();
            if (on_break) continue;
            EXPECT_EQ(s(t), f(t) + g(t));
            EXPECT_EQ(d(t), f(t) - g(t));
            EXPECT_EQ(p(t), f(t) * g(t).conj());
        }
    }
}

TEST(Piecewise, RejectsMalformedInput)
{
    EXPECT_THROW(PiecewiseFn({Rat(0), Rat(0)}, {Poly::constant(CRat(1))}), std::invalid_argument);
    EXPECT_THROW(PiecewiseFn({Rat(0), Rat(1)}, {}), std::invalid_argument);
    EXPECT_THROW(GaborSystem(PiecewiseFn{}, 1, 1), std::invalid_argument);
    EXPECT_THROW(GaborSystem(chi(0, 1), 0, 1), std::invalid_argument);
}

TEST(SupSumAbs, EnclosesSampledMaximum)
{
    Gen gen(9);
    for (int i = 0; i < 80; ++i) {
        std::vector<Poly> qs;
        const int k = static_cast<int>(gen.integer(1, 4));
        for (int j = 0; j < k; ++j) {
            const Poly a = Poly::affine(CRat(gen.rational(2, 5), gen.rational(2, 5)), CRat(gen.rational(2, 5), gen.rational(2, 5)));
            const Poly b = Poly::affine(CRat(gen.rational(2, 5), gen.rational(2, 5)), CRat(gen.rational(2, 5), gen.rational(2, 5)));
            qs.push_back(gen.coin() ? a : a * b.conj());
        }
        const Rat l = gen.rational(2, 4), r = l + gen.positive(2, 4);
        const Enclosure e = sup_sum_abs(qs, l, r);
        EXPECT_LE(to_double(e.width()), 1e-9);
        double best = 0;
        const double ld = to_double(l), rd = to_double(r);
        for (int s = 0; s <= 4000; ++s) {
            const double t = ld + (rd - ld) * s / 4000;
            double acc = 0;
            for (const auto& q : qs) acc += std::abs(q(t));
            best = std::max(best, acc);
        }
        EXPECT_LE(best, e.hi_d() + 1e-12);
        EXPECT_GE(best, e.lo_d() - 1e-3);
    }
}
