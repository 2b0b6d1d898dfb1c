#include "support.hpp"

#include <gtest/gtest.h>

using namespace whframe;
using testing_support::Gen;

namespace {

bool constant_equal(const PiecewiseFn& rep, const Rat& a, const Rat& value)
{
    const EssRange r = ess_range(rep, 0, a);
    return r.inf == Enclosure(value) && r.sup == Enclosure(value) && rep.support_measure() == (value == 0 ? Rat(0) : a);
}

}  // namespace

TEST(Correlations, SpecExamples)
{
    const CorrelationSeries s1 = correlations(GaborSystem{windows::indicator(), 1, 1});
    EXPECT_EQ(s1.terms.size(), 1u);
    EXPECT_TRUE(constant_equal(s1.term(0), 1, 1));

    const CorrelationSeries s2 = correlations(GaborSystem{windows::double_indicator(), 1, 1});
    EXPECT_TRUE(constant_equal(s2.term(0), 1, 2));
    EXPECT_TRUE(constant_equal(s2.term(1), 1, 1));
    EXPECT_TRUE(constant_equal(s2.term(-1), 1, 1));
    EXPECT_EQ(s2.k_max, 1);

    const Rat eps(1, 4);
    const CorrelationSeries s3 = correlations(GaborSystem{windows::paper_eps(eps), 1, 1});
    EXPECT_TRUE(constant_equal(s3.term(0), 1, 1 + (1 - eps) * (1 - eps)));
    EXPECT_TRUE(constant_equal(s3.term(1), 1, 1 - eps));
    EXPECT_TRUE(constant_equal(s3.term(-1), 1, 1 - eps));
    EXPECT_EQ(s3.terms.size(), 3u);
}

TEST(Correlations, BruteForceEnumerationAgrees)
{
    Gen gen(31);
    for (int i = 0; i < 40; ++i) {
        const PiecewiseFn g = gen.window({4, 1, true, 4, 2});
        const Rat a = gen.positive(2, 4), b = gen.positive(2, 4);
        const CorrelationSeries s = correlations(GaborSystem{g, a, b});
        for (int j = 0; j < 20; ++j) {
            const Rat t = gen.rational(3, 101);
            for (long k = -s.k_max - 1; k <= s.k_max + 1; ++k) {
                CRat direct;
                for (long n = -40; n <= 40; ++n) direct += g(t - Rat(n) * a) * g(t - Rat(n) * a - Rat(k) / b).conj();
                bool on_break = false;
                for (long n = -40; n <= 40 && !on_break; ++n)
                    for (const Rat& p : g.breakpoints())
                        if (t - Rat(n) * a == p || t - Rat(n) * a - Rat(k) / b == p) on_break = true;
                if (on_break) continue;
                EXPECT_EQ(s.value(k, t), direct) << "k=" << k;
            }
        }
    }
}

TEST(Correlations, VanishBeyondSupportDiameter)
{
    Gen gen(32);
    for (int i = 0; i < 40; ++i) {
        const PiecewiseFn g = gen.window({4, 1, true, 4, 2});
        const Rat b = gen.positive(2, 4);
        const CorrelationSeries s = correlations(GaborSystem{g, gen.positive(2, 4), b});
        const auto [lo, hi] = g.support();
        const Rat L = std::max(abs(lo), abs(hi));
        for (long k : s.ordered_keys()) EXPECT_LE(Rat(k < 0 ? -k : k), 2 * L * b);
    }
}

TEST(Correlations, HermitianSymmetry)
{
    // G_{-k}(t) = conj(G_k(t + k/b))
    Gen gen(33);
    for (int i = 0; i < 40; ++i) {
        const PiecewiseFn g = gen.window({4, 1, true, 4, 2});
        const Rat a = gen.positive(2, 4), b = gen.positive(2, 4);
        const CorrelationSeries s = correlations(GaborSystem{g, a, b});
        for (long k : s.ordered_keys()) {
            const PiecewiseFn& gm = s.term(-k);
            const PiecewiseFn shifted = periodic_extension(s.term(k), a, -a - abs(Rat(k) / b), 2 * a + abs(Rat(k) / b))
                                            .translated(-Rat(k) / b)
                                            .restricted(0, a)
                                            .conj();
            EXPECT_TRUE(equal_ae(gm, shifted)) << "k=" << k;
        }
    }
}

TEST(CrossTermSum, SpecExamples)
{
    const Rat eps(1, 4);
    const PiecewiseFn d = PiecewiseFn::indicator(1, 2, CRat(eps));
    EXPECT_EQ(cross_term_sum(cross_correlations(d, d, 1, 1)), Enclosure(eps * eps));
    EXPECT_EQ(cross_term_sum(cross_correlations(PiecewiseFn{}, PiecewiseFn{}, 1, 1)), Enclosure(0));
    const Rat c(3, 5);
    const PiecewiseFn e = PiecewiseFn::indicator(0, 1, CRat(c));
    EXPECT_EQ(cross_term_sum(cross_correlations(e, e, 1, 1)), Enclosure(c * c));
}

TEST(WalnutBounds, SpecExamples)
{
    const FrameBounds b1 = walnut_bounds(GaborSystem{windows::indicator(), 1, 1});
    EXPECT_EQ(b1.lower, Rat(1));
    EXPECT_EQ(b1.upper, Rat(1));
    EXPECT_EQ(b1.kind, BoundKind::certified);
    const FrameBounds b2 = walnut_bounds(GaborSystem{windows::double_indicator(), 1, 1});
    EXPECT_EQ(b2.lower, Rat(0));
    EXPECT_EQ(b2.upper, Rat(4));
    const FrameBounds b3 = walnut_bounds(GaborSystem{windows::paper_eps(Rat(1, 4)), 1, 1});
    EXPECT_EQ(b3.lower, Rat(1, 16));
    EXPECT_EQ(b3.upper, Rat(49, 16));
    EXPECT_TRUE(b3.exact);
    const FrameBounds b4 = walnut_bounds(GaborSystem{windows::hat(), 1, Rat(1, 4)});
    EXPECT_EQ(b4.lower, Rat(2));
    EXPECT_EQ(b4.upper, Rat(4));
}

TEST(WalnutBounds, NecessaryConditionOnG0)
{
    Gen gen(34);
    for (int i = 0; i < 60; ++i) {
        const GaborSystem sys{gen.window({4, 1, true, 4, 2}), gen.positive(2, 4), gen.positive(2, 4)};
        const CorrelationSeries s = correlations(sys);
        const FrameBounds fb = walnut_bounds(s);
        EXPECT_LE(g0_range(s).sup.hi(), sys.b * fb.upper);
        EXPECT_LE(fb.lower, fb.upper);
        EXPECT_GE(fb.lower, 0);
    }
}

TEST(CrossTermBound, OffDiagonalPartDominatedByAbsoluteSum)
{
    // |sum_{k != 0} int conj(f(t)) f(t - k/b) G_k(t) dt| <= int |f|^2 sum_{k != 0} |G_k|
    Gen gen(35);
    for (int i = 0; i < 60; ++i) {
        const PiecewiseFn g = gen.constant_window(4, 4, 2);
        const PiecewiseFn f = gen.constant_window(4, 4, 2);
        const Rat a = gen.positive(2, 4), b = gen.positive(2, 4);
        const CorrelationSeries s = correlations(GaborSystem{g, a, b});
        CRat lhs;
        PiecewiseFn abs_sum;
        for (long k : s.ordered_keys()) {
            if (k == 0) continue;
            const PiecewiseFn P = f.conj() * f.translated(Rat(k) / b);
            if (!P.is_zero()) {
                const auto [lo, hi] = P.support();
                lhs += (P * periodic_extension(s.term(k), a, lo, hi)).integral();
            }
            abs_sum = abs_sum + s.term(k).abs_real();
        }
        const auto [lo, hi] = f.support();
        const Rat rhs = (f.conj() * f * periodic_extension(abs_sum, a, lo, hi)).integral().re;
        EXPECT_LE(lhs.norm_sq(), rhs * rhs);
    }
}

TEST(IdentityCheck, SpecExamples)
{
    const GaborSystem onb{windows::indicator(), 1, 1};
    const IdentityReport r1 = identity_check(windows::indicator(), onb, 200);
    EXPECT_EQ(r1.rhs_exact, Rat(1));
    EXPECT_NEAR(r1.lhs_truncated, 1.0, 1e-2);
    EXPECT_TRUE(r1.passed());
    EXPECT_LE(identity_check(windows::indicator(), onb, 800).gap(), r1.gap() + 1e-12);
    const PiecewiseFn half = PiecewiseFn::indicator(0, Rat(1, 2));
    EXPECT_LT(identity_check(half, onb, 800).gap(), identity_check(half, onb, 200).gap());

    const IdentityReport r2 = identity_check(windows::indicator(), GaborSystem{windows::double_indicator(), 1, 1}, 512);
    EXPECT_EQ(r2.rhs_exact, Rat(2));
    EXPECT_TRUE(r2.passed());

    const IdentityReport r3 = identity_check(PiecewiseFn{}, onb, 16);
    EXPECT_EQ(r3.rhs_exact, Rat(0));
    EXPECT_EQ(r3.lhs_truncated, 0.0);
    EXPECT_THROW(identity_check(windows::indicator(), onb, 0), std::invalid_argument);
}

TEST(IdentityCheck, ExactSideIsRealAndGapWithinTail)
{
    Gen gen(36);
    for (int i = 0; i < 20; ++i) {
        const GaborSystem sys{gen.window({3, 1, true, 3, 2}), gen.positive(2, 3), gen.positive(2, 3)};
        const PiecewiseFn f = gen.window({3, 1, true, 5, 2});
        const IdentityReport r = identity_check(f, sys, 512);
        EXPECT_TRUE(r.passed(1e-9)) << "gap " << r.gap() << " tail " << r.tail_bound;
        EXPECT_GE(to_double(r.rhs_exact), 0.0);
    }
}

TEST(IdentityCheck, GapShrinksAsTruncationGrows)
{
    Gen gen(37);
    for (int i = 0; i < 6; ++i) {
        const GaborSystem sys{gen.constant_window(3, 3, 2), 1, 1};
        const PiecewiseFn f = gen.constant_window(3, 5, 2);
        double prev = identity_check(f, sys, 128).gap();
        for (long m = 256; m <= 2048; m *= 2) {
            const double gap = identity_check(f, sys, m).gap();
            EXPECT_LE(gap, 1.1 * prev + 1e-12) << m;
            prev = gap;
        }
    }
}
