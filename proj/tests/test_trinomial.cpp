#include <gtest/gtest.h>

#include <random>

#include "invariants.hpp"
#include "lbroots/lbroots.hpp"

using namespace lbroots;

namespace {

// Relative error against the closed form; a zero closed term is measured against
// the largest neighbouring term.
double worst_term_error(const trinomial_spec& sp, trinomial_field f, long s, int J)
{
    const int k = f == trinomial_field::L1 ? 1 : 2;
    const auto d = lagrange_derivatives(trinomial_equation(sp), {k, 1, s, 0}, J, precision::quad);
    std::vector<cplx> c(J);
    for (int j = 1; j <= J; ++j)
        c[j - 1] = closed_term(j, s, sp, f);
    double worst = 0.0;
    for (int j = 0; j < J; ++j) {
        double ref = std::abs(c[j]);
        if (ref == 0.0)
            for (int i = std::max(0, j - 1); i <= std::min(J - 1, j + 1); ++i)
                ref = std::max(ref, std::abs(c[i]));
        worst = std::max(worst, std::abs(d[j] - c[j]) / (ref == 0.0 ? 1.0 : ref));
    }
    return worst;
}

std::vector<cplx> trinomial_coeffs(int r1, int r2, cplx m1, cplx t)
{
    const int deg = std::max(r1, r2);
    std::vector<cplx> c(deg + 1, 0.0);
    c[deg - r2] += 1.0;
    c[deg - r1] += m1;
    c[deg] += t;
    return c;
}

} // namespace

TEST(ClosedTerm, SepticFirstTermAgainstJets)
{
    const trinomial_spec sp{3.0, 7.0, 3.0, 7.0};
    const auto d = lagrange_derivatives(trinomial_equation(sp), {2, 1, 0, 0}, 1);
    EXPECT_LT(std::abs(closed_term(1, 0, sp, trinomial_field::L2) - d[0]), 1e-11 * std::abs(d[0]));
}

TEST(ClosedTerm, GoldenFirstTermAgainstJets)
{
    const trinomial_spec sp{1.0, 2.0, -1.0, -1.0};
    const auto d = lagrange_derivatives(trinomial_equation(sp), {2, 1, 0, 0}, 1);
    EXPECT_LT(std::abs(closed_term(1, 0, sp, trinomial_field::L2) - d[0]), 1e-11 * std::abs(d[0]));
}

TEST(ClosedTerm, PoleCancellationGivesZero)
{
    // x^2 + m x + t on L2: a = (1+j)/2 and b = (1+j+2-2j)/2 = (3-j)/2, so b hits
    // nonpositive integers for odd j >= 3 and the term vanishes
    const trinomial_spec sp{1.0, 2.0, -1.0, -1.0};
    EXPECT_EQ(closed_term(3, 0, sp, trinomial_field::L2), cplx(0.0));
    EXPECT_EQ(closed_term(5, 0, sp, trinomial_field::L2), cplx(0.0));
    const auto d = lagrange_derivatives(trinomial_equation(sp), {2, 1, 0, 0}, 5);
    EXPECT_LT(std::abs(d[2]), 1e-12 * std::abs(d[1]));
}

TEST(ClosedTerm, MatchesEngineOnRandomIntegerSpecs)
{
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> ex(1, 9);
    std::uniform_int_distribution<long> wind(-4, 4);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int specs = 0;
    while (specs < 25) {
        int r1 = ex(rng), r2 = ex(rng);
        if (r1 == r2)
            continue;
        if (r1 > r2)
            std::swap(r1, r2);
        ++specs;
        const trinomial_spec sp{double(r1), double(r2), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
        for (const auto f : {trinomial_field::L1, trinomial_field::L2})
            EXPECT_LE(worst_term_error(sp, f, wind(rng), 30), 1e-11) << r1 << "," << r2;
    }
}

TEST(Trinomial, SepticBothFields)
{
    const trinomial_spec sp{3.0, 7.0, 3.0, 7.0};
    const root_field l2 = roots_L2(sp);
    const root_field l1 = roots_L1(sp);
    EXPECT_EQ(l2.roots.size(), 7u);
    EXPECT_EQ(l1.roots.size(), 3u);
    for (const auto& r : l2.roots)
        EXPECT_LT(r.residual, 1e-10);
    const auto oracle = aberth_roots({1, 0, 0, 0, 3, 0, 0, 7});
    EXPECT_TRUE(compare_root_sets(l2, oracle, 1e-8).clean());
    const comparison_report u = compare_root_sets(trinomial_roots(sp), oracle, 1e-8);
    EXPECT_TRUE(u.clean());
    EXPECT_LE(u.max_distance, 1e-8);
}

TEST(Trinomial, Golden)
{
    const trinomial_spec sp{1.0, 2.0, -1.0, -1.0};
    const root_field l2 = roots_L2(sp);
    ASSERT_EQ(l2.roots.size(), 2u);
    EXPECT_TRUE(compare_root_sets(l2, {0.5 * (1 + std::sqrt(5.0)), 0.5 * (1 - std::sqrt(5.0))}, 1e-10).clean());
    const root_field l1 = roots_L1(sp);
    ASSERT_EQ(l1.roots.size(), 1u);
    EXPECT_EQ(l1.roots[0].branch.s, 0);
    EXPECT_LT(std::abs(l1.roots[0].z.imag()), 1e-12);
    EXPECT_LT(residual_of(trinomial_equation(sp), l1.roots[0].z), 1e-12);
}

TEST(Trinomial, DoubleRoot)
{
    const root_field f = trinomial_roots({1.0, 2.0, -2.0, 1.0});
    ASSERT_EQ(f.roots.size(), 1u);
    EXPECT_LT(std::abs(f.roots[0].z - 1.0), 1e-6);
    EXPECT_EQ(f.roots[0].multiplicity, 2);
}

TEST(Trinomial, RandomIntegerSpecsCoverAberth)
{
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> ex(1, 9);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int covered = 0, draws = 0;
    while (draws < 50) {
        const int r1 = ex(rng), r2 = ex(rng);
        if (r1 == r2)
            continue;
        ++draws;
        const cplx m1(u(rng), u(rng)), t(u(rng), u(rng));
        const trinomial_spec sp{double(r1), double(r2), m1, t};
        const auto oracle = aberth_roots(trinomial_coeffs(r1, r2, m1, t));
        const root_field f = trinomial_roots(sp);
        const comparison_report rep = compare_root_sets(f, oracle, 1e-8);
        EXPECT_TRUE(rep.oracle_only.empty()) << "r1=" << r1 << " r2=" << r2;
        EXPECT_TRUE(rep.engine_only.empty()) << "r1=" << r1 << " r2=" << r2;
        for (const auto& r : f.roots)
            EXPECT_LE(r.residual, 1e-9 * std::max(1.0, std::abs(r.z)));
        covered += rep.clean();
    }
    EXPECT_EQ(covered, 50);
}

TEST(Trinomial, RationalExponentsWithWindings)
{
    // x^{5/2} + 2 x^{1/2} - 1, which is y^5 + 2y - 1 in y = x^{1/2}
    const trinomial_spec sp{0.5, 2.5, 2.0, -1.0};
    const auto oracle = polynomial_oracle_roots(trinomial_equation(sp));
    ASSERT_TRUE(oracle.has_value());
    const root_field f = trinomial_roots(sp);
    const comparison_report rep = compare_root_sets(f, *oracle, 1e-8);
    EXPECT_TRUE(rep.oracle_only.empty());
    for (const auto& r : f.roots)
        EXPECT_LE(r.residual, 1e-9 * std::max(1.0, std::abs(r.z)));
}

TEST(Trinomial, RejectsDegenerateSpecs)
{
    EXPECT_THROW(trinomial_roots({2.0, 2.0, 1.0, 1.0}), solver_error);
    EXPECT_THROW(trinomial_roots({0.0, 2.0, 1.0, 1.0}), solver_error);
    EXPECT_THROW(trinomial_roots({1.0, 2.0, 0.0, 1.0}), solver_error);
}

// ---------------------------------------------------------------------------

TEST(XnSeries, LeadingTermAtZero)
{
    for (int n : {2, 3, 5, 8})
        for (long k = 0; k < n - 1; ++k)
            EXPECT_LT(std::abs(xn_series_root(n, 0.0, k, 20).z - xn_leading(n, k)), 1e-15);
}

TEST(XnSeries, QuadraticRootNearOne)
{
    const double t = 0.2;
    const root_record r = xn_series_root(2, t, 0, 150);
    EXPECT_LT(std::abs(r.z - 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * t))), 1e-9);
    EXPECT_LT(r.residual, 1e-9);
}

TEST(XnSeries, QuinticAgainstAberth)
{
    const auto oracle = aberth_roots({1, 0, 0, 0, -1, 0.1});
    for (long k = 0; k < 4; ++k) {
        const root_record r = xn_series_root(5, 0.1, k, 60);
        EXPECT_TRUE(std::any_of(oracle.begin(), oracle.end(), [&](cplx z) { return std::abs(z - r.z) < 1e-10; }))
            << "k=" << k;
    }
}

TEST(XnHypergeometric, AgreesWithSeries)
{
    for (int n : {2, 3, 4, 5, 7})
        for (const cplx t : {cplx(0.1), cplx(0.05, 0.08), cplx(-0.12)})
            for (long k = 0; k < n - 1; ++k) {
                if (std::abs(xn_hyper_argument(n, t)) >= 0.8)
                    continue;
                EXPECT_LT(std::abs(xn_hypergeometric_root(n, t, k) - xn_series_root(n, t, k, 200).z), 1e-9)
                    << "n=" << n << " k=" << k;
            }
}

TEST(XnHypergeometric, Examples)
{
    EXPECT_LT(std::abs(xn_hypergeometric_root(5, 0.0, 1) - xn_leading(5, 1)), 1e-15);
    EXPECT_LT(std::abs(xn_hypergeometric_root(2, 0.2) - 0.5 * (1.0 + std::sqrt(0.2))), 1e-12);
}

TEST(XnHypergeometric, ParameterCancellation)
{
    const hyper_parameters p = xn_hyper_parameters(5, 0);
    EXPECT_EQ(p.a.size(), 4u);
    EXPECT_EQ(p.b.size(), 3u);
}

TEST(Quintic, Examples)
{
    const auto z0 = quintic_bring_jerrard(0.0);
    const std::array<cplx, 5> expect{0.0, 1.0, -1.0, cplx(0, 1), cplx(0, -1)};
    for (int i = 0; i < 5; ++i)
        EXPECT_LT(std::abs(z0[i] - expect[i]), 1e-12);
    for (const double t : {0.1, 0.25}) {
        const auto z = quintic_bring_jerrard(t);
        const comparison_report rep =
            compare_root_sets(std::vector<cplx>(z.begin(), z.end()), aberth_roots({1, 0, 0, 0, -1, t}), 1e-9);
        EXPECT_TRUE(rep.clean()) << "t=" << t;
        for (const cplx& x : z)
            EXPECT_LT(std::abs(std::pow(x, 5) - x + t), 1e-12);
    }
    EXPECT_THROW(quintic_bring_jerrard(0.6), solver_error);
}
