#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lbroots/engine.hpp"
#include "lbroots/equation.hpp"
#include "lbroots/jet.hpp"
#include "lbroots/oracle.hpp"
#include "lbroots/specialfn.hpp"

namespace lbroots {

// ---------------------------------------------------------------------------
// z e^z = t

enum class lambert_case { A, B, C };

inline lambert_case lambert_case_of(cplx t, long k)
{
    const double a = std::abs(t);
    const double e = std::exp(1.0);
    if (k != 0 || a > e)
        return lambert_case::A;
    if (a < 1.0 / e)
        return lambert_case::B;
    return lambert_case::C;
}

// z + Log z - (Log t + 2 pi i k) = 0
inline equation lambert_log_form(cplx t, long k, cplx identity_coef = 1.0)
{
    const cplx zeta = std::log(t) + cplx(0.0, two_pi * static_cast<double>(k));
    return equation({{identity_coef, term_function::power(1)}, {1.0, term_function::log()}}, -zeta);
}

struct zexpz_options {
    int terms = 80;
    double tol = 1e-14;
    int max_damping = 8;
};

namespace detail {

inline cplx lambert_residual(cplx z, cplx t) { return z * std::exp(z) - t; }

inline std::optional<root_record> zexpz_branch(cplx t, long k, const zexpz_options& opt,
                                               std::vector<branch_diagnostic>& diags)
{
    const equation ek = lambert_log_form(t, k);
    const lambert_case c = lambert_case_of(t, k);
    const int term = c == lambert_case::B ? 2 : 1;
    const branch_spec tag{term, 1, k, 0};
    root_record rec;
    bool seeded = false;
    try {
        if (c == lambert_case::C) {
            for (int s = 1; s <= opt.max_damping; ++s) {
                const equation damped = lambert_log_form(t, k, std::exp(-(s + 1.0)));
                rec = lagrange_root(damped, {2, 1, 0, 0}, opt.terms);
                seeded = true;
                if (rec.converged)
                    break;
            }
        } else {
            rec = lagrange_root(ek, {term, 1, 0, 0}, opt.terms);
            seeded = true;
        }
    } catch (const solver_error& e) {
        diags.push_back({tag, diagnostic_kind::skipped, e.what()});
    }
    const bool series_converged = seeded && rec.converged && c != lambert_case::C;
    cplx seed = seeded ? rec.z : lambert_w(k, t);
    newton_outcome o =
        newton_attempt(ek, seed, {opt.tol, 100, series_converged ? 0.5 : 0.0});
    if (o.status != newton_status::converged)
        o = newton_iterate([&](cplx z) { return lambert_residual(z, t); },
                           [&](cplx z) { return (1.0 + z) * std::exp(z); }, seed, {opt.tol, 100, 0.0});
    if (o.status != newton_status::converged) {
        diags.push_back({tag, diagnostic_kind::diverged, "Newton failed: " + o.message});
        return std::nullopt;
    }
    const cplx w = lambert_w(k, t);
    const double res = std::abs(lambert_residual(o.z, t));
    if (std::abs(o.z - w) > 1e-9 * scale_of(w) || res > 1e-10 * scale_of(t)) {
        diags.push_back({tag, diagnostic_kind::refinement_failed, "root disagrees with lambert_w on this branch"});
        return std::nullopt;
    }
    root_record out;
    out.z = o.z;
    out.seed = seeded ? rec.z : w;
    out.branch = tag;
    out.sources = {tag};
    out.residual = res;
    out.series_terms = opt.terms;
    out.converged = series_converged;
    out.refined = true;
    out.newton_iterations = o.iterations;
    if (!seeded)
        diags.push_back({tag, diagnostic_kind::rescued, "seeded from lambert_w"});
    return out;
}

} // namespace detail

inline root_field zexpz_solve(cplx t, long k_min, long k_max, const zexpz_options& opt = {})
{
    if (t == 0.0)
        raise(errc::invalid_argument, "z e^z = t needs t != 0");
    root_field field;
    for (long k = k_min; k <= k_max; ++k)
        if (auto r = detail::zexpz_branch(t, k, opt, field.diagnostics))
            field.insert(std::move(*r));
    return field;
}

// ---------------------------------------------------------------------------
// Hypersphere of maximal surface or volume

enum class hypersphere_kind { surface, volume };

struct hypersphere_result {
    double root_half = 0.0;  // bound with 1/2
    double root_gamma = 0.0; // bound with e^{-gamma}
    double seed_half = 0.0;
    double seed_gamma = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double true_root = 0.0;
    int integer_answer = 0;
};

// Root of ln(x/2 + A) - 1/(x/2 + B) = ln pi: damped series seed, then Newton.
inline double hypersphere_bound_root(double A, double B, double* seed = nullptr, int J = 30)
{
    const double mstar = std::exp(-2.0);
    const auto ex = lagrange_expand<cplx>(
        cplx(std::log(pi)), J, [&](const jet& w) { return (exp(w) - cplx(A)) * cplx(2.0); },
        [&](const jet& g) { return cplx(-mstar) / (g * cplx(0.5) + cplx(B)); });
    const double z0 = series_sum(ex).real();
    if (seed)
        *seed = z0;
    auto f = [&](cplx x) { return std::log(x / 2.0 + A) - 1.0 / (x / 2.0 + B) - std::log(pi); };
    auto df = [&](cplx x) { return 0.5 / (x / 2.0 + A) + 0.5 / ((x / 2.0 + B) * (x / 2.0 + B)); };
    const newton_outcome o = newton_iterate(f, df, z0, {1e-15, 100, 0.0});
    if (o.status != newton_status::converged)
        raise(errc::no_convergence, "hypersphere bound equation: " + o.message);
    return o.z.real();
}

// upper_constant replaces e^{-gamma}; the default is the rounded value the bounds are quoted with.
inline hypersphere_result hypersphere_max(hypersphere_kind kind, double upper_constant = 0.56)
{
    const double shift = kind == hypersphere_kind::surface ? 0.0 : 1.0;
    hypersphere_result r;
    r.root_half = hypersphere_bound_root(shift + 0.5, shift, &r.seed_half);
    r.root_gamma = hypersphere_bound_root(shift + upper_constant, shift, &r.seed_gamma);
    r.lower = std::min(r.root_half, r.root_gamma);
    r.upper = std::max(r.root_half, r.root_gamma);

    // psi(n/2 + shift) = ln pi by bisection; psi is increasing
    const double target = std::log(pi);
    double lo = 1.0, hi = 40.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (digamma(mid / 2.0 + shift) < target ? lo : hi) = mid;
    }
    r.true_root = 0.5 * (lo + hi);

    double best = -INFINITY;
    for (int n = 1; n <= 60; ++n) {
        const double x = n / 2.0;
        const double v = kind == hypersphere_kind::surface ? std::log(2.0) + x * std::log(pi) - std::lgamma(x)
                                                           : x * std::log(pi) - std::lgamma(x + 1.0);
        if (v > best) {
            best = v;
            r.integer_answer = n;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Kepler: E - e sin E = M

struct kepler_spec {
    double M = 0.0;
    double e = 0.0;
};

struct kepler_result {
    double E = 0.0;
    double series_value = 0.0;
    bool converged = false;
    int terms = 0;
    int newton_iterations = 0;
    double residual = 0.0;
};

inline equation kepler_equation(const kepler_spec& sp)
{
    return equation({{1.0, term_function::power(1)}, {-sp.e, term_function::sin()}}, -sp.M);
}

// E = M + sum_j e^j/j! d^{j-1}/dM^{j-1} sin^j M, with the sin-power derivatives
// written as finite sums of sines.
inline double kepler_series(double M, double e, int J, bool* converged = nullptr)
{
    double E = M;
    std::vector<cplx> terms;
    if (e != 0.0) {
        const double le = std::log(std::abs(e));
        for (int j = 1; j <= J; ++j) {
            double term = 0.0;
            for (int k = 0; 2 * k < j; ++k) {
                const double a = j - 2.0 * k;
                const double lmag = j * le + (1.0 - j) * std::log(2.0) - std::lgamma(k + 1.0) -
                                    std::lgamma(j - k + 1.0) + (j - 1.0) * std::log(a);
                const double sgn = (k % 2 == 0 ? 1.0 : -1.0) * (e < 0.0 && j % 2 == 1 ? -1.0 : 1.0);
                term += sgn * std::exp(lmag) * std::sin(a * M);
            }
            terms.push_back(term);
            E += term;
        }
    }
    check_terms_finite(terms);
    if (converged)
        *converged = tail_small(terms, E);
    return E;
}

inline kepler_result kepler_solve(const kepler_spec& sp, int J = 60)
{
    if (J < 1)
        raise(errc::invalid_argument, "series needs J >= 1");
    kepler_result r;
    r.terms = J;
    bool conv = false;
    double seed;
    try {
        seed = kepler_series(sp.M, sp.e, J, &conv);
    } catch (const solver_error&) {
        conv = false;
        seed = NAN;
    }
    r.series_value = seed;
    r.converged = conv;
    if (!conv || !std::isfinite(seed))
        seed = sp.M + 0.85 * sp.e * (std::sin(sp.M) >= 0.0 ? 1.0 : -1.0);
    auto f = [&](cplx E) { return E - sp.e * std::sin(E) - sp.M; };
    auto df = [&](cplx E) { return 1.0 - sp.e * std::cos(E); };
    const newton_outcome o = newton_iterate(f, df, seed, {1e-15, 100, conv ? 0.5 : 0.0});
    if (o.status != newton_status::converged)
        raise(o.status == newton_status::derivative_underflow ? errc::derivative_underflow : errc::no_convergence,
              "Kepler Newton: " + o.message);
    r.E = o.z.real();
    r.newton_iterations = o.iterations;
    r.residual = std::abs(r.E - sp.e * std::sin(r.E) - sp.M);
    return r;
}

// Arcsin field: expansions on the sin term, both categories, windings k_min..k_max.
inline root_field kepler_arcsin_field(const kepler_spec& sp, long k_min, long k_max, int J = 30)
{
    if (sp.e == 0.0)
        raise(errc::invalid_argument, "the arcsin field needs e != 0");
    const equation eq = kepler_equation(sp);
    solve_options opt;
    opt.terms = J;
    std::vector<branch_result> results;
    for (int q = 1; q <= 2; ++q)
        for (long s = k_min; s <= k_max; ++s)
            results.push_back(solve_branch(eq, {2, q, s, 0}, opt));
    return assemble_field(std::move(results), eq, opt);
}

// ---------------------------------------------------------------------------
// DDE characteristic roots: h(l) = l (1 - C e^{-l r}) - a - w e^{-l nu}

struct dde_spec {
    cplx C = 0.0;
    cplx a = 0.0;
    cplx w = 0.0;
    double r = 0.0;
    double nu = 0.0;
};

inline equation dde_equation(const dde_spec& sp)
{
    std::vector<term> terms;
    cplx lin = 1.0;
    cplx constant = -sp.a;
    if (sp.C != 0.0) {
        if (sp.r == 0.0)
            lin -= sp.C;
        else
            terms.push_back({-sp.C, term_function::linexp(-sp.r)});
    }
    if (sp.w != 0.0) {
        if (sp.nu == 0.0)
            constant -= sp.w;
        else
            terms.push_back({-sp.w, term_function::expscaled(-sp.nu)});
    }
    terms.insert(terms.begin(), {lin, term_function::power(1)});
    return equation(std::move(terms), constant);
}

struct dde_result {
    root_field field;
    int contour_count = 0;
    rectangle region;
};

namespace detail {

// Zero count on r, nudging r outward when a root sits on the contour and
// refining the sampling on phase jumps.
inline int robust_count(const equation& eq, rectangle& r, int samples = 512)
{
    for (int nudge = 0; nudge < 12; ++nudge) {
        int n = samples;
        bool too_close = false;
        while (n <= (1 << 16)) {
            try {
                return argument_principle_count(eq, r, n);
            } catch (const solver_error& e) {
                if (e.code() == errc::phase_jump) {
                    n *= 2;
                    continue;
                }
                if (e.code() != errc::boundary_too_close)
                    throw;
                too_close = true;
                break;
            }
        }
        if (!too_close)
            raise(errc::phase_jump, "phase jumps persist at maximum sampling");
        const double d = 1e-3 * std::max(r.re_max - r.re_min, r.im_max - r.im_min) * (1.0 + 0.37 * nudge);
        r = r.expanded(d);
    }
    raise(errc::boundary_too_close, "could not move the contour off a root");
}

inline int multiplicity_in_field(const root_field& f, const rectangle& r)
{
    int n = 0;
    for (const auto& rec : f.roots)
        if (r.contains(rec.z))
            n += rec.multiplicity;
    return n;
}

inline void fill_by_subdivision(const equation& eq, root_field& field, rectangle r, int depth, double tol)
{
    int count;
    try {
        count = robust_count(eq, r);
    } catch (const solver_error&) {
        return;
    }
    if (multiplicity_in_field(field, r) >= count)
        return;
    if (depth == 0) {
        for (const cplx& z : grid_newton_scan(eq, r, 16, 16, tol)) {
            root_record rec;
            rec.z = rec.seed = z;
            rec.branch = {0, 0, 0, 0};
            rec.residual = residual_of(eq, z);
            rec.refined = true;
            field.insert(rec);
        }
        return;
    }
    const bool split_re = r.re_max - r.re_min >= r.im_max - r.im_min;
    const double frac = 0.5 + 0.0137 * depth;
    rectangle a = r, b = r;
    if (split_re) {
        const double cut = r.re_min + frac * (r.re_max - r.re_min);
        a.re_max = b.re_min = cut;
    } else {
        const double cut = r.im_min + frac * (r.im_max - r.im_min);
        a.im_max = b.im_min = cut;
    }
    fill_by_subdivision(eq, field, a, depth - 1, tol);
    fill_by_subdivision(eq, field, b, depth - 1, tol);
}

} // namespace detail

inline dde_result dde_char_roots(const dde_spec& sp, rectangle region, long k_min, long k_max, int J = 30)
{
    region.validate();
    const equation eq = dde_equation(sp);
    dde_result out;
    out.contour_count = detail::robust_count(eq, region);
    out.region = region;

    solve_options opt;
    opt.s_min = k_min;
    opt.s_max = k_max;
    opt.terms = J;
    const root_field all = solve_all(eq, opt);
    out.field.diagnostics = all.diagnostics;
    for (const auto& r : all.roots)
        if (region.contains(r.z))
            out.field.roots.push_back(r);

    if (detail::multiplicity_in_field(out.field, region) < out.contour_count) {
        const std::size_t before = out.field.roots.size();
        detail::fill_by_subdivision(eq, out.field, region, 8, opt.tol);
        if (out.field.roots.size() > before)
            out.field.diagnostics.push_back({{0, 0, 0, 0}, diagnostic_kind::rescued,
                                             std::to_string(out.field.roots.size() - before) +
                                                 " roots added by contour subdivision"});
    }
    for (auto& r : out.field.roots) {
        double nearest = INFINITY;
        for (const auto& o : out.field.roots)
            if (&o != &r)
                nearest = std::min(nearest, std::abs(o.z - r.z));
        const double radius = std::min(1e-3 * scale_of(r.z), 0.4 * nearest);
        const int m = winding_on_circle(eq, r.z, radius);
        if (m >= 1)
            r.multiplicity = m;
    }
    std::stable_sort(out.field.roots.begin(), out.field.roots.end(),
                     [](const root_record& a, const root_record& b) { return canonical_less(a.z, b.z); });
    return out;
}

// ---------------------------------------------------------------------------
// x^x - m x + t = 0

// solve_branch, retried when it fails with the other terms damped by
// e^{-(s+1)}, s = 1..max_damping; the damped series root seeds Newton.
inline branch_result damped_branch(const equation& eq, const branch_spec& b, const solve_options& opt,
                                   int max_damping = 8)
{
    branch_result first = solve_branch(eq, b, opt);
    if (first.root)
        return first;
    for (int s = 1; s <= max_damping; ++s) {
        std::vector<term> terms = eq.terms();
        for (int i = 1; i <= eq.size(); ++i)
            if (i != b.k)
                terms[static_cast<std::size_t>(i - 1)].coef *= std::exp(-(s + 1.0));
        root_record rec;
        try {
            rec = lagrange_root(equation(terms, eq.constant()), b, opt.terms);
        } catch (const solver_error&) {
            continue;
        }
        if (!rec.converged)
            continue;
        const newton_outcome o = newton_attempt(eq, rec.z, {opt.tol, opt.max_iter, 0.0});
        if (o.status != newton_status::converged)
            continue;
        rec.z = o.z;
        rec.residual = o.residual;
        rec.refined = true;
        rec.converged = false;
        rec.newton_iterations = o.iterations;
        branch_result out;
        out.root = rec;
        out.diagnostics.push_back({b, diagnostic_kind::rescued,
                                   "damped series (s = " + std::to_string(s) + ") seeded Newton"});
        return out;
    }
    return first;
}

inline equation selfpower_equation(cplx m, cplx t)
{
    return equation({{1.0, term_function::selfpower()}, {-m, term_function::power(1)}}, t);
}

inline root_field selfpower_solve(cplx m, cplx t, long k_min, long k_max, const std::set<long>& h_set = {-1, 0, 1},
                                  int J = 30)
{
    if (t == 0.0)
        raise(errc::invalid_argument, "selfpower needs t != 0");
    const equation eq = selfpower_equation(m, t);
    solve_options opt;
    opt.terms = J;
    std::vector<branch_result> results;
    for (long h : h_set) {
        if (h < -1 || h > 1)
            raise(errc::invalid_argument, "h must lie in {-1, 0, 1}");
        for (long k = k_min; k <= k_max; ++k)
            results.push_back(damped_branch(eq, {1, 1, h, k}, opt));
    }
    if (m != 0.0)
        results.push_back(damped_branch(eq, {2, 1, 0, 0}, opt));
    return assemble_field(std::move(results), eq, opt);
}

// ---------------------------------------------------------------------------
// x^q - m x^p + t = 0

inline equation power_pq_equation(cplx p, cplx q, cplx m, cplx t)
{
    return equation({{1.0, term_function::power(q)}, {-m, term_function::power(p)}}, t);
}

// Windings -n..n with n = floor(|r|/2) for real r, floor(((a^2+b^2)/a)/2) for r = a+bi.
inline long power_winding_bound(cplx r)
{
    if (r.imag() == 0.0)
        return static_cast<long>(std::floor(std::abs(r.real()) / 2.0));
    if (r.real() == 0.0)
        return 2;
    return static_cast<long>(std::floor(std::abs(std::norm(r) / r.real()) / 2.0));
}

inline root_field power_pq_solve(cplx p, cplx q, cplx m, cplx t, int J = 30, double tol = 1e-12)
{
    if (p == q)
        raise(errc::invalid_argument, "power_pq needs p != q");
    if (m == 0.0)
        raise(errc::invalid_argument, "power_pq needs m != 0");
    const equation e1 = power_pq_equation(p, q, m, t);
    solve_options opt;
    opt.terms = J;
    opt.tol = tol;
    std::vector<branch_result> results;
    for (int k = 1; k <= 2; ++k) {
        const long n = power_winding_bound(e1.at(k).fn.parameter());
        for (const auto& b : enumerate_branches(e1, k, -n, n))
            results.push_back(solve_branch(e1, b, opt));
    }
    if (t != 0.0) {
        // x = 1/y: t y^q - m y^{q-p} + 1 = 0
        const equation e2({{t, term_function::power(q)}, {-m, term_function::power(q - p)}}, 1.0);
        for (int k = 1; k <= 2; ++k) {
            const long n = power_winding_bound(e2.at(k).fn.parameter());
            for (const auto& b : enumerate_branches(e2, k, -n, n)) {
                // tag reciprocal branches with k = 3, 4
                const branch_spec tag{b.k + 2, b.q, b.s, b.sheet};
                root_record rec;
                std::optional<cplx> lead;
                try {
                    rec = lagrange_root(e2, b, J);
                    const cplx y0 = e2.at(k).fn.inverse(detail::expansion_center<cplx>(e2, k), b.q, b.s, b.sheet);
                    if (y0 != 0.0)
                        lead = 1.0 / y0;
                } catch (const solver_error& e) {
                    branch_result br;
                    br.diagnostics.push_back({tag, diagnostic_kind::skipped, e.what()});
                    results.push_back(std::move(br));
                    continue;
                }
                if (rec.z == 0.0 || !is_finite(rec.z)) {
                    branch_result br;
                    br.diagnostics.push_back({tag, diagnostic_kind::skipped, "reciprocal seed at y = 0"});
                    results.push_back(std::move(br));
                    continue;
                }
                rec.z = rec.seed = 1.0 / rec.z;
                rec.branch = tag;
                rec.sources = {tag};
                results.push_back(refine_series_root(e1, rec, lead, opt));
            }
        }
    }
    return assemble_field(std::move(results), e1, opt);
}

// ---------------------------------------------------------------------------
// w = m tan w

namespace detail {

inline cplx tan_form(cplx w, cplx m) { return w * std::cos(w) - m * std::sin(w); }
inline cplx tan_form_derivative(cplx w, cplx m) { return (1.0 - m) * std::cos(w) - w * std::sin(w); }

} // namespace detail

inline root_field tan_solve(cplx m, long k_min, long k_max, int J = 30, double tol = 1e-12)
{
    if (m == 0.0)
        raise(errc::invalid_argument, "tan_solve needs m != 0");
    auto f = [&](cplx w) { return detail::tan_form(w, m); };
    auto df = [&](cplx w) { return detail::tan_form_derivative(w, m); };
    std::vector<branch_result> results;

    // identity field: w = m tan w about 0
    {
        const auto ex = lagrange_expand<cplx>(
            cplx(0.0), J, [](const jet& w) { return w; }, [&](const jet& g) { return -m * tan(g); });
        std::vector<cplx> terms;
        root_record rec;
        rec.z = rec.seed = series_sum(ex, &terms);
        rec.branch = {1, 1, 0, 0};
        rec.series_terms = J;
        rec.converged = tail_small(terms, rec.z);
        branch_result br;
        const newton_outcome o = newton_iterate(f, df, rec.z, {tol, 100, 0.5});
        if (o.status == newton_status::converged) {
            rec.z = o.z;
            rec.refined = true;
            rec.residual = std::abs(o.z - m * std::tan(o.z));
            rec.sources = {rec.branch};
            br.root = rec;
        } else {
            br.diagnostics.push_back({rec.branch, diagnostic_kind::diverged, o.message});
        }
        results.push_back(std::move(br));
    }

    // cos field: cos w = m sin(w)/w, w = +/-arccos(.) + 2 pi k about 0
    for (int q = 1; q <= 2; ++q) {
        for (long k = k_min; k <= k_max; ++k) {
            const branch_spec b{2, q, k, 0};
            branch_result br;
            const cplx g0 = arccos_branch(cplx(0.0), q, k);
            if (std::abs(g0) < 1e-12) {
                br.diagnostics.push_back({b, diagnostic_kind::skipped, "branch center at w = 0"});
                results.push_back(std::move(br));
                continue;
            }
            root_record rec;
            rec.branch = b;
            rec.sources = {b};
            rec.series_terms = J;
            bool ok = true;
            try {
                const auto ex = lagrange_expand<cplx>(
                    cplx(0.0), J, [&](const jet& w) { return acos(w, g0); },
                    [&](const jet& g) { return -m * sin(g) / g; });
                std::vector<cplx> terms;
                rec.z = rec.seed = series_sum(ex, &terms);
                check_terms_finite(terms);
                rec.converged = tail_small(terms, rec.z);
            } catch (const solver_error&) {
                ok = false;
                rec.z = rec.seed = g0;
                rec.converged = false;
            }
            newton_outcome o = newton_iterate(f, df, rec.z, {tol, 100, rec.converged ? 0.5 : 0.0});
            if (o.status != newton_status::converged && rec.z != g0)
                o = newton_iterate(f, df, g0, {tol, 100, 0.0});
            if (o.status == newton_status::converged) {
                rec.z = o.z;
                rec.refined = true;
                rec.residual = std::abs(o.z - m * std::tan(o.z));
                br.root = rec;
                if (!rec.converged || !ok)
                    br.diagnostics.push_back({b, diagnostic_kind::rescued, "series did not converge; Newton rescued the seed"});
            } else {
                br.diagnostics.push_back({b, diagnostic_kind::diverged, "Newton failed: " + o.message});
            }
            results.push_back(std::move(br));
        }
    }

    root_field field;
    std::vector<root_record> found;
    for (auto& r : results) {
        if (r.root)
            found.push_back(*r.root);
        for (auto& d : r.diagnostics)
            field.diagnostics.push_back(std::move(d));
    }
    std::stable_sort(found.begin(), found.end(), [](const root_record& a, const root_record& b) { return a.branch < b.branch; });
    for (auto& r : found)
        field.insert(std::move(r));
    merge_clusters(
        field, f, df, [&](cplx w) { return std::abs(std::cos(w)) + std::abs(w * std::sin(w)) + std::abs(m * std::cos(w)); },
        tol);
    for (auto& r : field.roots)
        r.residual = std::abs(r.z - m * std::tan(r.z));
    return field;
}

// ---------------------------------------------------------------------------
// Wien: 5 - 5 e^{-x} - x = 0

struct wien_result {
    double x = 0.0;
    double trivial = 0.0;
    double series_value = 0.0;
    bool converged = false;
    int terms = 0;
    double residual = 0.0;
};

inline equation wien_equation()
{
    return equation({{-1.0, term_function::power(1)}, {-5.0, term_function::expscaled(-1.0)}}, 5.0);
}

inline wien_result wien_solve(int J = 40)
{
    const equation eq = wien_equation();
    const root_record s = lagrange_root(eq, {1, 1, 0, 0}, J);
    const newton_outcome o = newton_attempt(eq, s.z, {1e-15, 100, 0.5});
    if (o.status != newton_status::converged)
        raise(errc::no_convergence, "Wien Newton: " + o.message);
    wien_result r;
    r.x = o.z.real();
    r.series_value = s.z.real();
    r.converged = s.converged;
    r.terms = J;
    r.residual = std::abs(eq.value(cplx(r.x)));
    return r;
}

// lambda_max T = h c / (x k)
inline double wien_displacement(double h, double c, double k, double x) { return h * c / (x * k); }

} // namespace lbroots
