#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "invariants.hpp"
#include "lbroots/lbroots.hpp"

using namespace lbroots;

namespace {

using jet = basic_jet<cplx>;

// n-th derivative by the trapezoid rule on a circle (a finite-difference stencil on
// roots of unity).
template <class F>
cplx contour_derivative(F&& f, cplx a, int n, double radius = 0.25, int points = 64)
{
    cplx sum = 0.0;
    for (int i = 0; i < points; ++i) {
        const cplx u = std::polar(1.0, two_pi * i / points);
        sum += f(a + radius * u) * std::pow(u, -n);
    }
    double fact = 1.0;
    for (int i = 2; i <= n; ++i)
        fact *= i;
    return fact * sum / (static_cast<double>(points) * std::pow(radius, n));
}

equation golden() { return equation({{1.0, term_function::power(2)}, {-1.0, term_function::power(1)}}, -1.0); }
equation septic() { return trinomial_equation({3.0, 7.0, 3.0, 7.0}); }
equation showcase() { return equation({{0.5, term_function::sin()}, {-15.0, term_function::exp()}}, pi); }

} // namespace

// ---------------------------------------------------------------------------
// Jets

TEST(Jet, ProductIsCauchyConvolution)
{
    for (std::uint64_t seed : {21u, 22u}) {
        const auto r = checks::jet_convolution(seed);
        EXPECT_TRUE(r.ok) << r.detail;
    }
}

TEST(Jet, PolynomialProductsExact)
{
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> coef(-9, 9), deg(0, 8);
    for (int t = 0; t < 100; ++t) {
        std::vector<cplx> p(deg(rng) + 1), q(deg(rng) + 1);
        for (auto& c : p)
            c = coef(rng);
        for (auto& c : q)
            c = coef(rng);
        const std::size_t order = p.size() + q.size();
        std::vector<cplx> pj(order + 1, 0.0), qj(order + 1, 0.0);
        std::copy(p.begin(), p.end(), pj.begin());
        std::copy(q.begin(), q.end(), qj.begin());
        const jet prod = jet(0.0, pj) * jet(0.0, qj);
        for (std::size_t k = 0; k <= order; ++k) {
            cplx direct = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i)
                if (k >= i && k - i < q.size())
                    direct += p[i] * q[k - i];
            EXPECT_EQ(prod[k], direct);
        }
    }
}

TEST(Jet, ElementaryFunctionsMatchContourDerivatives)
{
    const cplx a(0.7, -0.3);
    const jet x = jet::variable(a, 6);
    const std::vector<std::pair<jet, std::function<cplx(cplx)>>> cases = {
        {exp(x), [](cplx z) { return std::exp(z); }},
        {sin(x), [](cplx z) { return std::sin(z); }},
        {cos(x), [](cplx z) { return std::cos(z); }},
        {log(x), [](cplx z) { return std::log(z); }},
        {exp(sin(x) * x), [](cplx z) { return std::exp(std::sin(z) * z); }},
        {pow(x, cplx(2.5), std::pow(a, 2.5)), [](cplx z) { return std::pow(z, 2.5); }},
    };
    for (const auto& [j, f] : cases)
        for (int n = 1; n <= 4; ++n) {
            const cplx fd = contour_derivative(f, a, n);
            EXPECT_LT(std::abs(j.derivative_at_center(n) - fd), 1e-6 * std::max(1.0, std::abs(fd))) << "order " << n;
        }
}

TEST(Jet, LambertJetSolvesItsEquation)
{
    const cplx t0(0.4, 0.2);
    const jet t = jet::variable(t0, 8);
    const jet w = lambert_w(t, lbroots::lambert_w(0, t0));
    const jet back = w * exp(w) - t;
    for (std::size_t i = 0; i <= 8; ++i)
        EXPECT_LT(std::abs(back[i]), 1e-13);
}

// ---------------------------------------------------------------------------
// Equations

TEST(Equation, Evaluation)
{
    const equation zexpz({{1.0, term_function::linexp(1.0)}}, -2.0);
    EXPECT_EQ(zexpz.value(cplx(0.0)), cplx(-2.0));
    EXPECT_EQ(septic().value(cplx(-1.0)), cplx(3.0));
    EXPECT_EQ(septic().derivative(cplx(1.0)), cplx(16.0));
}

TEST(Equation, RejectsDegenerateInput)
{
    EXPECT_THROW(equation({{0.0, term_function::exp()}}, 1.0), solver_error);
    EXPECT_THROW(equation({}, 1.0), solver_error);
    EXPECT_THROW(term_function::power(0.0), solver_error);
    try {
        equation({{0.0, term_function::power(2)}, {0.0, term_function::exp()}}, 1.0);
        FAIL();
    } catch (const solver_error& e) {
        EXPECT_NE(std::string(e.what()).find("at least one nonzero m_i"), std::string::npos);
    }
}

TEST(Equation, InverseExamples)
{
    EXPECT_EQ(term_function::exp().inverse(cplx(1.0), 1, 0), cplx(0.0));
    EXPECT_EQ(term_function::power(7).inverse(cplx(-7.0), 1, 2), root_branch(cplx(-7.0), cplx(7.0), 2));
    EXPECT_LT(std::abs(term_function::selfpower().inverse(cplx(4.0), 1, 0) - 2.0), 1e-14);
}

TEST(Equation, CategoryCounts)
{
    EXPECT_EQ(term_function::sin().categories(), 2);
    EXPECT_EQ(term_function::cos().categories(), 2);
    EXPECT_EQ(term_function::exp().categories(), 1);
    EXPECT_EQ(term_function::power(3).categories(), 1);
    EXPECT_EQ(term_function::selfpower().categories(), 1);
}

TEST(Equation, RightInverseProperty)
{
    const auto r = checks::right_inverse(31, 120);
    EXPECT_TRUE(r.ok) << r.detail;
    EXPECT_GE(r.cases, 1000);
}

// ---------------------------------------------------------------------------
// Series core

TEST(Phi, SingleTermIsZero)
{
    const equation eq({{2.0, term_function::exp()}}, -3.0);
    const auto f = phi<cplx>(eq, {1, 1, 0, 0});
    const jet v = f(jet::variable(1.5, 5));
    for (std::size_t i = 0; i <= 5; ++i)
        EXPECT_EQ(v[i], cplx(0.0));
}

TEST(Phi, TrinomialComposite)
{
    const trinomial_spec sp{3.0, 7.0, 3.0, 7.0};
    const long s = 2;
    const auto f = phi<cplx>(trinomial_equation(sp), {2, 1, s, 0});
    for (const cplx w : {cplx(-7.0), cplx(1.0, 2.0), cplx(-3.0, -1.0)}) {
        const cplx expected = 3.0 * std::pow(w, 3.0 / 7.0) * std::exp(cplx(0, two_pi * s * 3.0 / 7.0));
        EXPECT_LT(std::abs(f(jet::variable(w, 1))[0] - expected), 1e-13 * std::abs(expected));
    }
}

TEST(LagrangeRoot, ZexpzLogForm)
{
    // z e^z = t as z + log z = log t, expanded on the log term; t lies inside that
    // series' radius 1/e
    const cplx t = 0.2;
    const root_record r = lagrange_root(lambert_log_form(t, 0), {2, 1, 0, 0}, 30);
    EXPECT_LT(std::abs(r.z - lambert_w(0, t)), 1e-9);
    EXPECT_TRUE(r.converged);
}

TEST(LagrangeRoot, KeplerAtPi)
{
    const root_record r = lagrange_root(kepler_equation({pi, 0.5}), {1, 1, 0, 0}, 30);
    EXPECT_NEAR(r.z.real(), pi, 1e-14);
    EXPECT_NEAR(r.z.imag(), 0.0, 1e-14);
}

TEST(LagrangeRoot, SepticBeforeRefinement)
{
    const root_record r = lagrange_root(septic(), {2, 1, 0, 0}, 40);
    EXPECT_LT(r.residual, 1e-6);
    const auto oracle = aberth_roots({1, 0, 0, 0, 3, 0, 0, 7});
    EXPECT_TRUE(std::any_of(oracle.begin(), oracle.end(), [&](cplx z) { return std::abs(z - r.z) < 1e-6; }));
}

TEST(LagrangeRoot, OverflowIsAnError)
{
    const equation eq({{1.0, term_function::power(2)}, {1e8, term_function::exp()}}, -1e9);
    EXPECT_THROW(lagrange_root(eq, {1, 1, 0, 0}, 200), solver_error);
}

TEST(LagrangeRoot, QuadMatchesDouble)
{
    const auto d = lagrange_derivatives(septic(), {2, 1, 1, 0}, 12);
    const auto q = lagrange_derivatives(septic(), {2, 1, 1, 0}, 12, precision::quad);
    for (std::size_t j = 0; j < d.size(); ++j)
        EXPECT_LT(std::abs(d[j] - q[j]), 1e-8 * std::max(1.0, std::abs(q[j])));
}

TEST(ConvergenceCheck, Examples)
{
    const convergence_report one = convergence_check(equation({{2.0, term_function::exp()}}, -3.0), 1, 64, 1.0);
    EXPECT_TRUE(one.satisfied);
    EXPECT_DOUBLE_EQ(one.margin, 1.0);

    const convergence_report sc = convergence_check(showcase(), 1, 64, 1.0);
    EXPECT_EQ(sc.samples, 64);
    EXPECT_TRUE(sc.satisfied);
    EXPECT_GT(sc.margin, 0.0);

    // z e^z = 3 in log form: the inequality holds on a smaller circle only
    const equation lf = lambert_log_form(3.0, 0);
    EXPECT_TRUE(convergence_check(lf, 1, 64, 0.45).satisfied);
    EXPECT_FALSE(convergence_check(lf, 1, 64, 1.0).satisfied);
}

TEST(EnumerateBranches, Counts)
{
    EXPECT_EQ(enumerate_branches(showcase(), 1, -1, 1).size(), 6u);
    EXPECT_EQ(enumerate_branches(septic(), 2, -10, 10).size(), 7u);
    EXPECT_EQ(enumerate_branches(showcase(), 2, 0, 0).size(), 1u);
}

TEST(Newton, Examples)
{
    const root_record exact = newton_refine(golden(), 0.5 * (1.0 + std::sqrt(5.0)));
    EXPECT_LE(exact.newton_iterations, 1);
    EXPECT_NEAR(newton_refine(golden(), 1.5).z.real(), 1.61803398874989, 1e-13);
    EXPECT_NEAR(newton_refine(wien_equation(), 4.9).z.real(), 4.9651142317442763, 1e-12);
}

TEST(Newton, ExactRootIsAFixedPoint)
{
    const root_record r = newton_refine(wien_equation(), 0.0);
    EXPECT_EQ(r.z, cplx(0.0));
    EXPECT_EQ(r.newton_iterations, 0);
}

TEST(Newton, RefinementIsIdempotent)
{
    for (const equation& eq : {golden(), septic(), showcase()}) {
        const root_field f = solve_all(eq, -3, 3);
        for (const auto& r : f.roots) {
            if (r.multiplicity > 1)
                continue;
            const root_record again = newton_refine(eq, r.z);
            EXPECT_LT(std::abs(again.z - r.z), 1e-12 * std::max(1.0, std::abs(r.z)));
        }
    }
}

// ---------------------------------------------------------------------------
// Root fields

TEST(SolveAll, Golden)
{
    const root_field f = solve_all(golden(), 0, 0);
    ASSERT_EQ(f.roots.size(), 2u);
    const auto v = f.values();
    EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](cplx z) { return std::abs(z - 1.6180339887498949) < 1e-10; }));
    EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](cplx z) { return std::abs(z + 0.6180339887498949) < 1e-10; }));
}

TEST(SolveAll, SepticMatchesAberth)
{
    const root_field f = solve_all(septic(), 0, 0);
    const comparison_report rep = compare_root_sets(f, aberth_roots({1, 0, 0, 0, 3, 0, 0, 7}), 1e-8);
    EXPECT_TRUE(rep.clean());
    EXPECT_EQ(rep.matched.size(), 7u);
}

TEST(SolveAll, ShowcaseRealRootAndConjugates)
{
    const root_field f = solve_all(showcase(), -5, 0);
    const auto v = f.values();
    EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](cplx z) { return std::abs(z - -1.7341515112743) < 1e-9; }));
    // the outermost winding's partner lies outside the range, so count pairs
    int paired = 0;
    for (const cplx& z : v)
        if (std::abs(z.imag()) > 1e-6 && checks::has_conjugate(f, z, 1e-8))
            ++paired;
    EXPECT_GE(paired, 8);
}

TEST(SolveAll, ResidualContract)
{
    for (const equation& eq : {golden(), septic(), showcase(), kepler_equation({1.0, 0.3})}) {
        const root_field f = solve_all(eq, -4, 4);
        for (const auto& r : f.roots) {
            if (r.multiplicity > 1)
                continue;
            EXPECT_LE(residual_of(eq, r.z), 1e-12 * std::max(1.0, std::abs(r.z)));
            EXPECT_EQ(r.residual, residual_of(eq, r.z));
        }
    }
}

TEST(SolveAll, StoredRootsAreDistinctAndKeepSources)
{
    const root_field f = solve_all(showcase(), -6, 6);
    for (std::size_t i = 0; i < f.roots.size(); ++i) {
        EXPECT_FALSE(f.roots[i].sources.empty());
        for (std::size_t j = i + 1; j < f.roots.size(); ++j)
            EXPECT_FALSE(same_root(f.roots[i].z, f.roots[j].z, f.dedup_tol));
    }
}

TEST(SolveAll, UnionOfIndependentBranches)
{
    for (const equation& eq : {golden(), septic(), showcase()}) {
        solve_options opt;
        opt.s_min = -3;
        opt.s_max = 3;
        std::vector<branch_result> results;
        for (int k = 1; k <= eq.size(); ++k)
            for (const auto& b : enumerate_branches(eq, k, opt.s_min, opt.s_max))
                results.push_back(solve_branch(eq, b, opt));
        std::mt19937_64 rng(9);
        std::shuffle(results.begin(), results.end(), rng);
        const root_field u = assemble_field(results, eq, opt);
        EXPECT_TRUE(checks::same_set(u.values(), solve_all(eq, opt).values()));
    }
}

TEST(SolveAll, DoubleRootCarriesMultiplicity)
{
    const equation eq({{1.0, term_function::power(2)}, {-2.0, term_function::power(1)}}, 1.0);
    const root_field f = solve_all(eq, 0, 0);
    ASSERT_EQ(f.roots.size(), 1u);
    EXPECT_LT(std::abs(f.roots[0].z - 1.0), 1e-6);
    EXPECT_EQ(f.roots[0].multiplicity, 2);
}

TEST(SolveAll, DedupIdempotence)
{
    const auto r = checks::dedup_idempotence();
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(SolveAll, ConjugateClosure)
{
    const auto r = checks::conjugate_closure();
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(SolveAll, DivergentUnrefinedBranchIsReported)
{
    solve_options opt;
    opt.terms = 2;
    opt.refine = false;
    const root_field f = solve_all(golden(), opt);
    EXPECT_TRUE(f.has_unrescued_divergence());
}
