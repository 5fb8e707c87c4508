#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "lbroots/engine.hpp"
#include "lbroots/equation.hpp"
#include "lbroots/specialfn.hpp"

namespace lbroots {

// x^{r2} + m1 x^{r1} + t = 0
struct trinomial_spec {
    cplx r1;
    cplx r2;
    cplx m1;
    cplx t;

    void validate() const
    {
        if (r1 == r2)
            raise(errc::invalid_argument, "trinomial exponents must differ");
        if (r1 == 0.0 || r2 == 0.0)
            raise(errc::invalid_argument, "trinomial exponents must be nonzero");
        if (m1 == 0.0 || t == 0.0)
            raise(errc::invalid_argument, "trinomial needs m1 != 0 and t != 0");
    }
};

enum class trinomial_field { L1, L2 };

// term 1: m1 x^{r1}, term 2: x^{r2}
inline equation trinomial_equation(const trinomial_spec& sp)
{
    return equation({{sp.m1, term_function::power(sp.r1)}, {1.0, term_function::power(sp.r2)}}, sp.t);
}

namespace detail {

struct trinomial_roles {
    cplx r;  // exponent being inverted
    cplx rp; // the other exponent
    cplx c;  // coefficient of the other term relative to the inverted one
    cplx z;  // expansion center
    int k;   // term index in trinomial_equation
};

inline trinomial_roles roles(const trinomial_spec& sp, trinomial_field f)
{
    if (f == trinomial_field::L2)
        return {sp.r2, sp.r1, sp.m1, -sp.t, 2};
    return {sp.r1, sp.r2, 1.0 / sp.m1, -sp.t / sp.m1, 1};
}

inline cplx cpow(cplx z, cplx a) { return std::exp(a * std::log(unsigned_zero(z))); }

} // namespace detail

// d^{j-1}/dw^{j-1}[g' phi^j] at the center, in Gamma-ratio form.
inline cplx closed_term(int j, long s, const trinomial_spec& sp, trinomial_field f)
{
    if (j < 1)
        raise(errc::invalid_argument, "closed_term needs j >= 1");
    const auto [r, rp, c, z, k] = detail::roles(sp, f);
    const double jj = j;
    const cplx i2pi(0.0, two_pi);
    const cplx a = (1.0 + jj * rp) / r;
    const cplx b = (1.0 + jj * rp + r - jj * r) / r;
    const cplx ratio = gamma_ratio(a, b);
    if (ratio == 0.0)
        return 0.0;
    const cplx phase = std::exp(i2pi * static_cast<double>(s) / r) * std::exp(i2pi * static_cast<double>(s) * rp * jj / r);
    return phase * std::pow(c, j) * detail::cpow(z, (1.0 + jj * rp - jj * r) / r) * ratio / r;
}

// Unrefined series value on one winding of field f.
inline root_record trinomial_series(const trinomial_spec& sp, trinomial_field f, long s, int J)
{
    sp.validate();
    if (J < 1)
        raise(errc::invalid_argument, "series needs J >= 1");
    const auto ro = detail::roles(sp, f);
    const equation eq = trinomial_equation(sp);
    root_record rec;
    rec.branch = {ro.k, 1, s, 0};
    rec.series_terms = J;
    cplx z = root_branch(ro.z, ro.r, s);
    std::vector<cplx> terms;
    for (int j = 1; j <= J; ++j) {
        cplx term = closed_term(j, s, sp, f) / std::exp(std::lgamma(j + 1.0));
        if (j % 2 == 1)
            term = -term;
        terms.push_back(term);
        z += term;
    }
    check_terms_finite(terms);
    rec.z = rec.seed = z;
    rec.converged = tail_small(terms, z);
    rec.residual = residual_of(eq, z);
    rec.sources = {rec.branch};
    return rec;
}

namespace detail {

inline std::vector<long> trinomial_windings(cplx r, std::optional<std::pair<long, long>> windings)
{
    std::vector<long> out;
    const double n = std::round(r.real());
    if (!windings && r.imag() == 0.0 && n == r.real() && n != 0.0) {
        for (long s = 0; s < static_cast<long>(std::abs(n)); ++s)
            out.push_back(s);
        return out;
    }
    const auto [lo, hi] = windings.value_or(std::pair<long, long>{-2, 2});
    for (long s = lo; s <= hi; ++s)
        out.push_back(s);
    return out;
}

inline std::vector<branch_result> trinomial_branches(const trinomial_spec& sp, trinomial_field f, int J, double tol,
                                                     std::optional<std::pair<long, long>> windings)
{
    sp.validate();
    const auto ro = roles(sp, f);
    const equation eq = trinomial_equation(sp);
    solve_options opt;
    opt.tol = tol;
    std::vector<branch_result> out;
    for (long s : trinomial_windings(ro.r, windings)) {
        const branch_spec b{ro.k, 1, s, 0};
        std::optional<cplx> lead;
        try {
            lead = root_branch(ro.z, ro.r, s);
        } catch (const solver_error&) {
        }
        root_record rec;
        try {
            rec = trinomial_series(sp, f, s, J);
        } catch (const solver_error& e) {
            if (e.code() != errc::overflow || !lead) {
                branch_result br;
                br.diagnostics.push_back({b, diagnostic_kind::skipped, e.what()});
                out.push_back(std::move(br));
                continue;
            }
            rec.z = rec.seed = *lead;
            rec.branch = b;
            rec.series_terms = J;
            rec.converged = false;
        }
        out.push_back(refine_series_root(eq, rec, lead, opt));
    }
    return out;
}

} // namespace detail

inline root_field roots_L2(const trinomial_spec& sp, int J = 60, double tol = 1e-12,
                           std::optional<std::pair<long, long>> windings = {})
{
    solve_options opt;
    opt.tol = tol;
    return assemble_field(detail::trinomial_branches(sp, trinomial_field::L2, J, tol, windings), trinomial_equation(sp), opt);
}

inline root_field roots_L1(const trinomial_spec& sp, int J = 60, double tol = 1e-12,
                           std::optional<std::pair<long, long>> windings = {})
{
    solve_options opt;
    opt.tol = tol;
    return assemble_field(detail::trinomial_branches(sp, trinomial_field::L1, J, tol, windings), trinomial_equation(sp), opt);
}

inline root_field trinomial_roots(const trinomial_spec& sp, int J = 60, double tol = 1e-12,
                                  std::optional<std::pair<long, long>> windings = {})
{
    auto all = detail::trinomial_branches(sp, trinomial_field::L1, J, tol, windings);
    for (auto& br : detail::trinomial_branches(sp, trinomial_field::L2, J, tol, windings))
        all.push_back(std::move(br));
    solve_options opt;
    opt.tol = tol;
    return assemble_field(std::move(all), trinomial_equation(sp), opt);
}

// ---------------------------------------------------------------------------
// x^n - x + t = 0

inline equation xn_equation(int n, cplx t)
{
    return equation({{1.0, term_function::power(n)}, {-1.0, term_function::power(1)}}, t);
}

inline cplx xn_leading(int n, long k) { return std::polar(1.0, -two_pi * static_cast<double>(k) / (n - 1)); }

// Root near e^{-2 pi i k/(n-1)}:
// x = rho - t/(n-1) sum_q (t/rho)^q Gamma(nq/(n-1)+1) / (Gamma(q/(n-1)+1) Gamma(q+2))
inline root_record xn_series_root(int n, cplx t, long k, int J)
{
    if (n < 2)
        raise(errc::invalid_argument, "x^n - x + t needs n >= 2");
    if (J < 0)
        raise(errc::invalid_argument, "series needs J >= 0");
    const double d = n - 1.0;
    const cplx rho = xn_leading(n, k);
    const cplx u = t / rho;
    std::vector<cplx> terms;
    cplx sum = 0.0;
    cplx upow = 1.0;
    for (int q = 0; q <= J; ++q) {
        const double lg = std::lgamma(n * q / d + 1.0) - std::lgamma(q / d + 1.0) - std::lgamma(q + 2.0);
        const cplx term = -t / d * upow * std::exp(lg);
        terms.push_back(term);
        sum += term;
        upow *= u;
    }
    check_terms_finite(terms);
    root_record rec;
    rec.z = rec.seed = rho + sum;
    rec.branch = {1, 1, k, 0};
    rec.series_terms = J;
    rec.converged = t == 0.0 || tail_small(terms, rec.z);
    rec.residual = residual_of(xn_equation(n, t), rec.z);
    rec.sources = {rec.branch};
    return rec;
}

// Argument of the hypergeometric pieces of the x^n - x + t series.
inline cplx xn_hyper_argument(int n, cplx t)
{
    const double d = n - 1.0;
    return std::pow(t, n - 1) * std::exp(n * std::log(static_cast<double>(n)) - d * std::log(d));
}

struct hyper_parameters {
    std::vector<cplx> a;
    std::vector<cplx> b;
};

// Parameters of the r-th residue class (q = r mod n-1), with unit pairs cancelled.
inline hyper_parameters xn_hyper_parameters(int n, int r)
{
    const double d = n - 1.0;
    hyper_parameters p;
    for (int i = 0; i <= n - 2; ++i)
        p.a.push_back(r / d + (1.0 + i) / n);
    p.a.push_back(1.0);
    for (int i = 0; i <= n - 2; ++i)
        p.b.push_back((r + 2.0 + i) / d);
    for (auto ib = p.b.begin(); ib != p.b.end(); ++ib) {
        const auto ia = std::find(p.a.begin(), p.a.end(), *ib);
        if (ia != p.a.end()) {
            p.a.erase(ia);
            p.b.erase(ib);
            break;
        }
    }
    return p;
}

inline cplx xn_hypergeometric_root(int n, cplx t, long k = 0)
{
    if (n < 2)
        raise(errc::invalid_argument, "x^n - x + t needs n >= 2");
    const double d = n - 1.0;
    const cplx rho = xn_leading(n, k);
    if (t == 0.0)
        return rho;
    const cplx z = xn_hyper_argument(n, t);
    if (std::abs(z) >= 1.0)
        raise(errc::divergence, "hypergeometric argument outside the unit disk");
    cplx sum = 0.0;
    for (int r = 0; r <= n - 2; ++r) {
        const cplx c = std::pow(t / rho, r) *
                       std::exp(std::lgamma(n * r / d + 1.0) - std::lgamma(r / d + 1.0) - std::lgamma(r + 2.0));
        const hyper_parameters p = xn_hyper_parameters(n, r);
        sum += c * pfq(p.a, p.b, z);
    }
    return rho - t / d * sum;
}

// Roots of x^5 - x + t: the root near 0 first, then those near 1, -1, i, -i.
inline std::array<cplx, 5> quintic_bring_jerrard(cplx t)
{
    const cplx z = 3125.0 * std::pow(t, 4) / 256.0;
    if (std::abs(z) >= 1.0)
        raise(errc::domain, "quintic needs |3125 t^4/256| < 1");
    const cplx F1 = pfq({-1.0 / 20, 3.0 / 20, 7.0 / 20, 11.0 / 20}, {1.0 / 4, 1.0 / 2, 3.0 / 4}, z);
    const cplx F2 = pfq({1.0 / 5, 2.0 / 5, 3.0 / 5, 4.0 / 5}, {1.0 / 2, 3.0 / 4, 5.0 / 4}, z);
    const cplx F3 = pfq({9.0 / 20, 13.0 / 20, 17.0 / 20, 21.0 / 20}, {3.0 / 4, 5.0 / 4, 3.0 / 2}, z);
    const cplx F4 = pfq({7.0 / 10, 9.0 / 10, 11.0 / 10, 13.0 / 10}, {5.0 / 4, 3.0 / 2, 7.0 / 4}, z);
    std::array<cplx, 5> x;
    x[0] = t * F2;
    const std::array<cplx, 4> rhos{cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)};
    for (int i = 0; i < 4; ++i) {
        const cplx rho = rhos[i];
        x[i + 1] = rho * F1 - t / 4.0 * F2 - 5.0 / 32.0 * t * t / rho * F3 - 5.0 / 32.0 * t * t * t / (rho * rho) * F4;
    }
    for (const cplx& r : x) {
        if (std::abs(std::pow(r, 5) - r + t) > 1e-9)
            raise(errc::no_convergence, "quintic root fails the residual check");
    }
    return x;
}

} // namespace lbroots
