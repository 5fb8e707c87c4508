#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

#include "lbroots/engine.hpp"
#include "lbroots/equation.hpp"
#include "lbroots/errors.hpp"

namespace lbroots {

// ---------------------------------------------------------------------------
// Polynomials, descending coefficients

inline cplx poly_eval(const std::vector<cplx>& c, cplx z)
{
    cplx acc = 0.0;
    for (const cplx& a : c)
        acc = acc * z + a;
    return acc;
}

inline std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots)
{
    std::vector<cplx> c{1.0};
    for (const cplx& r : roots) {
        c.push_back(0.0);
        for (std::size_t i = c.size() - 1; i > 0; --i)
            c[i] -= r * c[i - 1];
    }
    return c;
}

inline std::vector<cplx> aberth_roots(const std::vector<cplx>& coeffs, int max_sweeps = 500)
{
    if (coeffs.size() < 2)
        raise(errc::invalid_argument, "aberth_roots needs degree >= 1");
    if (coeffs.front() == 0.0)
        raise(errc::invalid_argument, "leading coefficient is zero");
    std::vector<cplx> c(coeffs);
    std::vector<cplx> roots;
    while (c.size() > 1 && c.back() == 0.0) {
        roots.push_back(0.0);
        c.pop_back();
    }
    const std::size_t n = c.size() - 1;
    if (n == 0)
        return roots;
    const cplx lead = c.front();
    for (cplx& a : c)
        a /= lead;
    std::vector<cplx> dc(n);
    for (std::size_t i = 0; i < n; ++i)
        dc[i] = c[i] * static_cast<double>(n - i);

    double radius = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
        radius = std::max(radius, std::pow(std::abs(c[i]), 1.0 / static_cast<double>(i)));
    if (radius == 0.0)
        radius = 1.0;
    std::vector<cplx> z(n);
    for (std::size_t j = 0; j < n; ++j)
        z[j] = std::polar(radius, two_pi * static_cast<double>(j) / static_cast<double>(n) + 0.4);

    bool done = false;
    for (int sweep = 0; sweep < max_sweeps && !done; ++sweep) {
        done = true;
        for (std::size_t j = 0; j < n; ++j) {
            const cplx p = poly_eval(c, z[j]);
            if (p == 0.0)
                continue;
            const cplx ratio = p / poly_eval(dc, z[j]);
            cplx s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (i != j)
                    s += 1.0 / (z[j] - z[i]);
            const cplx w = ratio / (1.0 - ratio * s);
            if (!is_finite(w))
                continue;
            z[j] -= w;
            if (std::abs(w) > 1e-15 * scale_of(z[j]))
                done = false;
        }
    }
    double norm = 0.0;
    for (const cplx& a : coeffs)
        norm += std::abs(a);
    const double deg = static_cast<double>(coeffs.size() - 1);
    for (const cplx& r : z) {
        if (std::abs(poly_eval(coeffs, r)) > 1e-12 * norm * std::pow(scale_of(r), deg))
            raise(errc::no_convergence, "Aberth iteration did not converge");
        roots.push_back(r);
    }
    return roots;
}

namespace detail {

// p/q with q <= max_den when x is (numerically) rational
inline std::optional<std::pair<long, long>> as_rational(double x, long max_den = 12)
{
    for (long q = 1; q <= max_den; ++q) {
        const double p = std::round(x * static_cast<double>(q));
        if (std::abs(p - x * static_cast<double>(q)) < 1e-12 * std::max(1.0, std::abs(x * static_cast<double>(q))))
            return std::pair<long, long>{static_cast<long>(p), q};
    }
    return std::nullopt;
}

} // namespace detail

struct polynomial_form {
    std::vector<cplx> coeffs; // descending, in y
    long d = 1;               // x = y^d
};

// Writes an equation of real rational powers as a polynomial in y = x^{1/d}.
inline std::optional<polynomial_form> polynomial_form_of(const equation& eq, long max_degree = 64)
{
    std::vector<std::pair<long, long>> exps;
    long d = 1;
    for (const auto& tm : eq.terms()) {
        if (tm.coef == 0.0)
            continue;
        if (tm.fn.kind() != term_kind::power || !tm.fn.has_real_parameter())
            return std::nullopt;
        const auto r = detail::as_rational(tm.fn.parameter().real());
        if (!r)
            return std::nullopt;
        exps.push_back(*r);
        d = std::lcm(d, r->second);
    }
    std::vector<std::pair<long, cplx>> powers{{0, eq.constant()}};
    std::size_t idx = 0;
    for (const auto& tm : eq.terms()) {
        if (tm.coef == 0.0)
            continue;
        const auto [p, q] = exps[idx++];
        powers.push_back({p * (d / q), tm.coef});
    }
    long lo = 0, hi = 0;
    for (const auto& [e, c] : powers) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    if (hi - lo > max_degree || hi - lo < 1)
        return std::nullopt;
    polynomial_form out;
    out.d = d;
    out.coeffs.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (const auto& [e, c] : powers)
        out.coeffs[static_cast<std::size_t>(hi - e)] += c;
    while (out.coeffs.size() > 1 && out.coeffs.front() == 0.0)
        out.coeffs.erase(out.coeffs.begin());
    if (out.coeffs.size() < 2)
        return std::nullopt;
    return out;
}

// Aberth roots of the polynomial form, mapped back to x and kept when they
// solve the original equation on the principal branch.
inline std::optional<std::vector<cplx>> polynomial_oracle_roots(const equation& eq, double tol = 1e-8)
{
    const auto form = polynomial_form_of(eq);
    if (!form)
        return std::nullopt;
    std::vector<cplx> out;
    for (const cplx& y : aberth_roots(form->coeffs)) {
        const cplx x = std::pow(y, static_cast<double>(form->d));
        if (x == 0.0 || !is_finite(x))
            continue;
        if (residual_of(eq, x) <= tol * scale_of(x) &&
            std::none_of(out.begin(), out.end(), [&](cplx o) { return same_root(o, x, 1e-7); }))
            out.push_back(x);
    }
    return out;
}

// ---------------------------------------------------------------------------

inline bool canonical_less(cplx a, cplx b)
{
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

template <class F, class DF>
std::vector<cplx> grid_newton_scan(F&& f, DF&& df, const rectangle& region, int nx, int ny, double tol = 1e-12,
                                   int max_iter = 100)
{
    region.validate();
    if (nx < 4 || ny < 4)
        raise(errc::invalid_argument, "grid_newton_scan needs at least a 4x4 grid");
    std::vector<cplx> found;
    const double dx = (region.re_max - region.re_min) / (nx - 1);
    const double dy = (region.im_max - region.im_min) / (ny - 1);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const cplx z0(region.re_min + i * dx, region.im_min + j * dy);
            const newton_outcome o = newton_iterate(f, df, z0, {tol, max_iter, 0.0});
            if (o.status != newton_status::converged || !region.contains(o.z))
                continue;
            if (std::none_of(found.begin(), found.end(), [&](cplx r) { return same_root(r, o.z, 1e-7); }))
                found.push_back(o.z);
        }
    }
    std::sort(found.begin(), found.end(), canonical_less);
    return found;
}

inline std::vector<cplx> grid_newton_scan(const equation& eq, const rectangle& region, int nx, int ny,
                                          double tol = 1e-12, int max_iter = 100)
{
    return grid_newton_scan([&](cplx z) { return eq.value(z); }, [&](cplx z) { return eq.derivative(z); }, region,
                            nx, ny, tol, max_iter);
}

template <class F, class DF>
int argument_principle_count(F&& f, DF&& df, const rectangle& region, int samples_per_edge = 256)
{
    region.validate();
    if (samples_per_edge < 4)
        raise(errc::invalid_argument, "argument_principle_count needs >= 4 samples per edge");
    const std::array<cplx, 5> corners{cplx(region.re_min, region.im_min), cplx(region.re_max, region.im_min),
                                      cplx(region.re_max, region.im_max), cplx(region.re_min, region.im_max),
                                      cplx(region.re_min, region.im_min)};
    auto sample = [&](cplx z) {
        const cplx v = f(z);
        const double slope = std::max(1.0, std::abs(df(z)));
        if (!is_finite(v) || std::abs(v) / slope < 1e-6)
            raise(errc::boundary_too_close, "a root lies within 1e-6 of the contour");
        return v;
    };
    double total = 0.0;
    cplx prev = sample(corners[0]);
    for (int e = 0; e < 4; ++e) {
        for (int i = 1; i <= samples_per_edge; ++i) {
            const cplx z = corners[e] + (corners[e + 1] - corners[e]) * (static_cast<double>(i) / samples_per_edge);
            const cplx cur = sample(z);
            const double step = std::arg(cur / prev);
            if (std::abs(step) >= 0.5 * pi)
                raise(errc::phase_jump, "phase jump between contour samples; increase samples");
            total += step;
            prev = cur;
        }
    }
    return static_cast<int>(std::lround(total / two_pi));
}

inline int argument_principle_count(const equation& eq, const rectangle& region, int samples_per_edge = 256)
{
    return argument_principle_count([&](cplx z) { return eq.value(z); }, [&](cplx z) { return eq.derivative(z); },
                                    region, samples_per_edge);
}

// ---------------------------------------------------------------------------

struct matched_pair {
    cplx engine;
    cplx oracle;
    double distance;
};

struct comparison_report {
    std::vector<matched_pair> matched;
    std::vector<cplx> engine_only;
    std::vector<cplx> oracle_only;
    double max_distance = 0.0;
    double tol = 0.0;

    bool clean() const { return engine_only.empty() && oracle_only.empty(); }
};

inline comparison_report compare_root_sets(std::vector<cplx> engine, std::vector<cplx> oracle, double tol)
{
    std::sort(engine.begin(), engine.end(), canonical_less);
    std::sort(oracle.begin(), oracle.end(), canonical_less);
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < engine.size(); ++i)
        for (std::size_t j = 0; j < oracle.size(); ++j) {
            const double d = std::abs(engine[i] - oracle[j]);
            if (d <= tol)
                pairs.emplace_back(d, i, j);
        }
    std::sort(pairs.begin(), pairs.end());
    std::vector<bool> used_e(engine.size()), used_o(oracle.size());
    comparison_report rep;
    rep.tol = tol;
    for (const auto& [d, i, j] : pairs) {
        if (used_e[i] || used_o[j])
            continue;
        used_e[i] = used_o[j] = true;
        rep.matched.push_back({engine[i], oracle[j], d});
        rep.max_distance = std::max(rep.max_distance, d);
    }
    std::sort(rep.matched.begin(), rep.matched.end(),
              [](const matched_pair& a, const matched_pair& b) { return canonical_less(a.engine, b.engine); });
    for (std::size_t i = 0; i < engine.size(); ++i)
        if (!used_e[i])
            rep.engine_only.push_back(engine[i]);
    for (std::size_t j = 0; j < oracle.size(); ++j)
        if (!used_o[j])
            rep.oracle_only.push_back(oracle[j]);
    return rep;
}

inline comparison_report compare_root_sets(const root_field& engine, std::vector<cplx> oracle, double tol)
{
    return compare_root_sets(engine.values(), std::move(oracle), tol);
}

} // namespace lbroots
