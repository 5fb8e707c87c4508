// One pass/fail line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "invariants.hpp"
#include "lbroots/lbroots.hpp"

using namespace lbroots;
using lbroots::checks::check_result;

namespace {

struct outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(int id, const char* title, const std::function<outcome()>& body, double time_limit = 0.0)
{
    const auto start = std::chrono::steady_clock::now();
    outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit > 0.0 && secs >= time_limit) {
        o.pass = false;
        o.detail += " (time limit " + std::to_string(time_limit) + " s exceeded)";
    }
    if (!o.pass)
        ++failures;
    std::printf("AC%-2d %s  %-34s %8.3f s  %s\n", id, o.pass ? "PASS" : "FAIL", title, secs, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

outcome ac1()
{
    const wien_result w = wien_solve();
    const double err = std::abs(w.x - 4.9651142317442763037);
    return {err <= 1e-12, fmt("x = %.17g, |err| = %.2e", w.x, err)};
}

outcome ac2()
{
    const double M = 10.0 * pi / 11.8622, e = 0.04844;
    const kepler_result k = kepler_solve({M, e});
    const double res = std::abs(k.E - e * std::sin(k.E) - M);
    return {std::abs(k.E - 2.6704) <= 5e-4 && res <= 1e-12, fmt("E = %.15f, residual = %.2e", k.E, res)};
}

outcome ac3()
{
    const hypersphere_result s = hypersphere_max(hypersphere_kind::surface);
    const hypersphere_result v = hypersphere_max(hypersphere_kind::volume);
    auto near = [](double a, double b) { return std::abs(a - b) <= 1e-4; };
    const bool bounds = near(s.root_half, 7.27218) && near(s.root_gamma, 7.18109) && near(v.root_half, 5.27218) &&
                        near(v.root_gamma, 5.18109);
    const bool bracket =
        s.lower < s.true_root && s.true_root < s.upper && v.lower < v.true_root && v.true_root < v.upper;
    const bool ints = s.integer_answer == 7 && v.integer_answer == 5;
    return {bounds && bracket && ints, fmt("surface %.6f/%.6f true %.6f", s.root_half, s.root_gamma, s.true_root) +
                                           fmt(", volume %.6f/%.6f true %.6f", v.root_half, v.root_gamma, v.true_root) +
                                           fmt(", integers %g/%g", s.integer_answer, v.integer_answer)};
}

outcome ac4()
{
    const trinomial_spec sp{3.0, 7.0, 3.0, 7.0};
    const root_field f = trinomial_roots(sp);
    const std::vector<cplx> oracle = aberth_roots({1, 0, 0, 0, 3, 0, 0, 7});
    const comparison_report rep = compare_root_sets(f, oracle, 1e-8);
    const bool ok = rep.clean() && rep.matched.size() == 7 && f.roots.size() == 7;
    return {ok, fmt("engine %g roots, matched %g, max distance %.2e", static_cast<double>(f.roots.size()),
                    static_cast<double>(rep.matched.size()), rep.max_distance)};
}

outcome ac5()
{
    int checked = 0;
    double worst_w = 0.0, worst_res = 0.0;
    bool ok = true;
    for (const cplx t : {cplx(0.2), cplx(1.0), cplx(std::exp(1.0)), cplx(-3.0), cplx(2.0, 2.0)}) {
        const root_field f = zexpz_solve(t, -1, 1);
        for (long k = -1; k <= 1; ++k) {
            const cplx w = lambert_w(k, t);
            const auto it = std::find_if(f.roots.begin(), f.roots.end(),
                                         [&](const root_record& r) { return std::abs(r.z - w) <= 1e-9; });
            ++checked;
            if (it == f.roots.end()) {
                ok = false;
                continue;
            }
            const double res = std::abs(it->z * std::exp(it->z) - t);
            worst_w = std::max(worst_w, std::abs(it->z - w));
            worst_res = std::max(worst_res, res);
            ok = ok && res <= 1e-10;
        }
    }
    return {ok, fmt("%g (t, k) pairs, max |z - W| = %.2e, max residual = %.2e", checked, worst_w, worst_res)};
}

outcome ac6()
{
    const auto q = quintic_bring_jerrard(0.1);
    const comparison_report rep =
        compare_root_sets(std::vector<cplx>(q.begin(), q.end()), aberth_roots({1, 0, 0, 0, -1, 0.1}), 1e-9);
    const auto z = quintic_bring_jerrard(0.0);
    const std::vector<cplx> expect{0.0, 1.0, -1.0, cplx(0, 1), cplx(0, -1)};
    bool exact = true;
    for (std::size_t i = 0; i < 5; ++i)
        exact = exact && std::abs(z[i] - expect[i]) <= 1e-12;
    return {rep.clean() && rep.matched.size() == 5 && exact,
            fmt("t=0.1 max distance %.2e, t=0 exact %g", rep.max_distance, exact)};
}

// Relative error of the engine term against the closed form. A closed term that is
// exactly zero is compared against the largest neighbouring term.
outcome ac7()
{
    std::mt19937_64 rng(20240607);
    std::uniform_int_distribution<int> ex(1, 8);
    std::uniform_int_distribution<long> wind(-3, 3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    int specs = 0;
    while (specs < 25) {
        const int r1 = ex(rng), r2 = ex(rng);
        if (r1 == r2)
            continue;
        const trinomial_spec sp{double(r1), double(r2), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
        ++specs;
        for (const trinomial_field f : {trinomial_field::L1, trinomial_field::L2}) {
            const int k = f == trinomial_field::L1 ? 1 : 2;
            const long s = wind(rng);
            const auto d = lagrange_derivatives(trinomial_equation(sp), {k, 1, s, 0}, 30, precision::quad);
            std::vector<cplx> c(30);
            for (int j = 1; j <= 30; ++j)
                c[j - 1] = closed_term(j, s, sp, f);
            for (int j = 0; j < 30; ++j) {
                double ref = std::abs(c[j]);
                if (ref == 0.0)
                    for (int i = std::max(0, j - 1); i <= std::min(29, j + 1); ++i)
                        ref = std::max(ref, std::abs(c[i]));
                if (ref == 0.0)
                    ref = 1.0;
                worst = std::max(worst, std::abs(d[j] - c[j]) / ref);
            }
        }
    }
    return {worst <= 1e-11, fmt("%g specs, j <= 30, worst relative error %.2e", specs, worst)};
}

outcome ac8()
{
    const equation eq({{0.5, term_function::sin()}, {-15.0, term_function::exp()}}, pi);
    solve_options opt;
    opt.s_min = -12;
    opt.s_max = 12;
    const root_field f = solve_all(eq, opt);
    auto has_source = [](const root_record& r, int k, int q) {
        return std::any_of(r.sources.begin(), r.sources.end(),
                           [&](const branch_spec& b) { return b.k == k && b.q == q; });
    };

    // real root of the exp field, checked against an independent scan
    const auto grid = grid_newton_scan(eq, {-4.0, 1.0, -1.0, 1.0}, 40, 40);
    bool l2_ok = false;
    double l2 = 0.0, l2_res = 0.0;
    for (const auto& r : f.roots) {
        if (!has_source(r, 2, 1) || std::abs(r.z.imag()) > 1e-10)
            continue;
        l2 = r.z.real();
        l2_res = std::abs(eq.value(r.z));
        const bool in_grid =
            std::any_of(grid.begin(), grid.end(), [&](cplx g) { return std::abs(g - r.z) <= 1e-8; });
        l2_ok = l2_res <= 1e-10 && in_grid;
    }

    int l11 = 0, paired = 0;
    for (const auto& r : f.roots) {
        if (!has_source(r, 1, 1))
            continue;
        ++l11;
        const bool conj = std::any_of(f.roots.begin(), f.roots.end(), [&](const root_record& o) {
            return has_source(o, 1, 2) && std::abs(o.z - std::conj(r.z)) <= 1e-8;
        });
        paired += conj;
    }
    return {l2_ok && paired >= 9,
            fmt("L2 real root %.14f (residual %.1e)", l2, l2_res) +
                fmt(", L1,1 roots %g, conjugates in L1,2 %g", l11, paired)};
}

outcome ac9()
{
    const dde_result d = dde_char_roots({0.5, -1.0, 0.5, 1.0, 0.5}, {-5.0, 5.0, -20.0, 20.0}, -5, 5);
    const equation eq = dde_equation({0.5, -1.0, 0.5, 1.0, 0.5});
    double worst = 0.0;
    int total = 0;
    for (const auto& r : d.field.roots) {
        worst = std::max(worst, std::abs(eq.value(r.z)));
        total += r.multiplicity;
    }
    const int independent = argument_principle_count(eq, d.region, 2048);
    return {total == independent && total == d.contour_count && worst <= 1e-9,
            fmt("roots %g, argument principle %g, max |h| = %.2e", total, independent, worst)};
}

outcome ac10()
{
    using namespace lbroots::checks;
    const std::vector<std::pair<const char*, std::function<check_result()>>> suites = {
        {"jet convolution", [] { return jet_convolution(1); }},
        {"gamma identities", [] { return gamma_identities(2); }},
        {"right inverse", [] { return right_inverse(3); }},
        {"conjugate closure", [] { return conjugate_closure(); }},
        {"dedup idempotence", [] { return dedup_idempotence(); }},
        {"comparison order", [] { return comparison_order_independence(4); }},
    };
    std::string detail;
    bool ok = true;
    for (const auto& [name, fn] : suites) {
        const check_result r = fn();
        ok = ok && r.ok && r.cases > 0;
        detail += std::string(name) + (r.ok ? " ok" : " FAILED (" + r.detail + ")") + "; ";
    }
    return {ok, detail};
}

} // namespace

int main()
{
    const auto start = std::chrono::steady_clock::now();
    run(1, "Wien constant", ac1, 1.0);
    run(2, "Kepler, Jupiter", ac2);
    run(3, "hypersphere bounds", ac3);
    run(4, "trinomial x^7+3x^3+7 vs Aberth", ac4, 5.0);
    run(5, "Lambert family vs lambert_w", ac5);
    run(6, "quintic hypergeometric roots", ac6);
    run(7, "series vs closed-form terms", ac7);
    run(8, "sin/exp showcase", ac8);
    run(9, "DDE root count", ac9);
    run(10, "invariant suites", ac10);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("acceptance: %d of 10 failed, %.2f s\n", failures, secs);
    return failures;
}
