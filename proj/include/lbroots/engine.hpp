#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lbroots/equation.hpp"
#include "lbroots/errors.hpp"
#include "lbroots/jet.hpp"
#include "lbroots/quad.hpp"
#include "lbroots/scalar.hpp"

namespace lbroots {

enum class precision { standard, quad };

struct root_record {
    cplx z;
    branch_spec branch;
    double residual = 0.0;
    int series_terms = 0;
    bool refined = false;
    bool converged = false;
    int multiplicity = 1;
    std::vector<branch_spec> sources;
    cplx seed;
    int newton_iterations = 0;
};

enum class diagnostic_kind { skipped, diverged, rescued, refinement_failed, advisory };

inline const char* diagnostic_name(diagnostic_kind k)
{
    switch (k) {
    case diagnostic_kind::skipped: return "skipped";
    case diagnostic_kind::diverged: return "diverged";
    case diagnostic_kind::rescued: return "rescued";
    case diagnostic_kind::refinement_failed: return "refinement-failed";
    case diagnostic_kind::advisory: return "advisory";
    }
    return "?";
}

struct branch_diagnostic {
    branch_spec branch;
    diagnostic_kind kind;
    std::string message;
};

inline std::string to_string(const branch_diagnostic& d)
{
    return std::string(diagnostic_name(d.kind)) + " " + to_string(d.branch) + ": " + d.message;
}

inline bool same_root(cplx a, cplx b, double tol)
{
    return std::abs(a - b) <= tol * std::max(scale_of(a), scale_of(b));
}

struct root_field {
    std::vector<root_record> roots;
    double dedup_tol = 1e-8;
    std::vector<branch_diagnostic> diagnostics;

    // Adds r unless an equal root is stored; then only its branch is recorded.
    bool insert(root_record r)
    {
        if (r.sources.empty())
            r.sources.push_back(r.branch);
        for (auto& kept : roots) {
            if (same_root(kept.z, r.z, dedup_tol)) {
                for (const auto& b : r.sources)
                    if (std::find(kept.sources.begin(), kept.sources.end(), b) == kept.sources.end())
                        kept.sources.push_back(b);
                return false;
            }
        }
        roots.push_back(std::move(r));
        return true;
    }

    bool has_unrescued_divergence() const
    {
        return std::any_of(diagnostics.begin(), diagnostics.end(),
                           [](const branch_diagnostic& d) { return d.kind == diagnostic_kind::diverged; });
    }

    std::vector<cplx> values() const
    {
        std::vector<cplx> v;
        for (const auto& r : roots)
            v.push_back(r.z);
        return v;
    }
};

// ---------------------------------------------------------------------------
// Series core

// For z = g(w0) + sum_j (-1)^j/j! d^{j-1}/dw^{j-1}[g'(w) phi(w)^j] at w0,
// holds g(w0) and c_j = [g' phi^j]_{j-1}, the Taylor coefficient, so that
// d_j = (j-1)! c_j and the j-th term is (-1)^j c_j / j.
template <class C>
struct lagrange_expansion {
    C leading;
    std::vector<C> coefficients;
};

template <class C, class Inverse, class Phi>
lagrange_expansion<C> lagrange_expand(const C& w0, int J, Inverse&& inverse, Phi&& phi)
{
    if (J < 1)
        raise(errc::invalid_argument, "series needs J >= 1");
    const auto order = static_cast<std::size_t>(J);
    const basic_jet<C> w = basic_jet<C>::variable(w0, order);
    const basic_jet<C> g = inverse(w);
    const basic_jet<C> dg = differentiate(g);
    const basic_jet<C> ph = phi(g).truncated(order - 1);
    basic_jet<C> power = basic_jet<C>::constant(w0, C(1), order - 1);
    lagrange_expansion<C> out{g[0], {}};
    out.coefficients.reserve(order);
    for (std::size_t j = 1; j <= order; ++j) {
        power = power * ph;
        C acc(0);
        for (std::size_t i = 0; i < j; ++i)
            acc += dg[i] * power[j - 1 - i];
        out.coefficients.push_back(acc);
    }
    return out;
}

template <class C>
C series_sum(const lagrange_expansion<C>& ex, std::vector<cplx>* terms = nullptr)
{
    C z = ex.leading;
    using R = typename scalar_traits<C>::real_type;
    for (std::size_t j = 1; j <= ex.coefficients.size(); ++j) {
        C term = ex.coefficients[j - 1] / C(R(static_cast<long>(j)));
        if (j % 2 == 1)
            term = -term;
        if (terms)
            terms->push_back(to_cplx(term));
        z += term;
    }
    return z;
}

// Converged when the largest of the last three terms is below 1e-10 max(1,|z|).
// Three terms rather than one because individual terms can vanish exactly.
inline bool tail_small(const std::vector<cplx>& terms, cplx z, double rel = 1e-10)
{
    double tail = 0.0;
    const std::size_t n = terms.size();
    for (std::size_t i = n >= 3 ? n - 3 : 0; i < n; ++i)
        tail = std::max(tail, std::abs(terms[i]));
    return tail < rel * scale_of(z);
}

inline void check_terms_finite(const std::vector<cplx>& terms)
{
    for (const cplx& t : terms)
        if (!is_finite(t) || std::abs(t) > 1e100)
            raise(errc::overflow, "series term exceeds 1e100");
}

namespace detail {

inline void validate_branch(const equation& eq, const branch_spec& b)
{
    if (b.k < 1 || b.k > eq.size())
        raise(errc::invalid_argument, "term index " + std::to_string(b.k) + " out of range");
    if (eq.at(b.k).coef == 0.0)
        raise(errc::invalid_argument, "branch on a term with m_k = 0");
    if (b.q < 1 || b.q > eq.at(b.k).fn.categories())
        raise(errc::invalid_argument, "category out of range for " + eq.at(b.k).fn.name());
}

template <class C>
C expansion_center(const equation& eq, int k)
{
    return unsigned_zero(C(-from_cplx<C>(eq.constant()) / from_cplx<C>(eq.at(k).coef)));
}

} // namespace detail

// phi(w) = sum_{i != k} (m_i/m_k) p_i(p_k^{-1}(w)), as a map on jets of g = p_k^{-1}(w).
template <class C>
basic_jet<C> phi_of_inverse(const equation& eq, int k, const basic_jet<C>& g)
{
    const C mk = from_cplx<C>(eq.at(k).coef);
    basic_jet<C> acc = basic_jet<C>::constant(g.center(), C(0), g.order());
    for (int i = 1; i <= eq.size(); ++i) {
        if (i == k || eq.at(i).coef == 0.0)
            continue;
        acc += eq.at(i).fn.apply(g) * C(from_cplx<C>(eq.at(i).coef) / mk);
    }
    return acc;
}

template <class C = cplx>
std::function<basic_jet<C>(const basic_jet<C>&)> phi(const equation& eq, const branch_spec& b)
{
    detail::validate_branch(eq, b);
    return [eq, b](const basic_jet<C>& w) {
        const basic_jet<C> g = eq.at(b.k).fn.inverse_jet(w, b.q, b.s, b.sheet);
        return phi_of_inverse(eq, b.k, g);
    };
}

template <class C>
lagrange_expansion<C> expand_branch(const equation& eq, const branch_spec& b, int J)
{
    detail::validate_branch(eq, b);
    const C w0 = detail::expansion_center<C>(eq, b.k);
    const term_function& pk = eq.at(b.k).fn;
    return lagrange_expand<C>(
        w0, J, [&](const basic_jet<C>& w) { return pk.inverse_jet(w, b.q, b.s, b.sheet); },
        [&](const basic_jet<C>& g) { return phi_of_inverse(eq, b.k, g); });
}

// d_j = d^{j-1}/dw^{j-1}[g' phi^j] at the center, j = 1..J
inline std::vector<cplx> lagrange_derivatives(const equation& eq, const branch_spec& b, int J,
                                              precision prec = precision::standard)
{
    auto convert = [](const auto& ex) {
        using C = std::decay_t<decltype(ex.leading)>;
        using R = typename scalar_traits<C>::real_type;
        std::vector<cplx> d;
        C fact(1);
        for (std::size_t j = 1; j <= ex.coefficients.size(); ++j) {
            if (j > 1)
                fact *= C(R(static_cast<long>(j - 1)));
            d.push_back(to_cplx(C(fact * ex.coefficients[j - 1])));
        }
        return d;
    };
    if (prec == precision::quad)
        return convert(expand_branch<quad_complex>(eq, b, J));
    return convert(expand_branch<cplx>(eq, b, J));
}

inline double residual_of(const equation& eq, cplx z)
{
    try {
        const double r = std::abs(eq.value(z));
        return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
    } catch (const solver_error&) {
        return std::numeric_limits<double>::infinity();
    }
}

template <class C>
root_record finish_series(const equation& eq, const branch_spec& b, const lagrange_expansion<C>& ex, int J)
{
    std::vector<cplx> terms;
    const cplx z = to_cplx(series_sum(ex, &terms));
    check_terms_finite(terms);
    root_record r;
    r.z = z;
    r.seed = z;
    r.branch = b;
    r.series_terms = J;
    r.converged = is_finite(z) && tail_small(terms, z);
    r.residual = residual_of(eq, z);
    r.sources = {b};
    return r;
}

inline root_record lagrange_root(const equation& eq, const branch_spec& b, int J,
                                 precision prec = precision::standard)
{
    if (prec == precision::quad)
        return finish_series(eq, b, expand_branch<quad_complex>(eq, b, J), J);
    return finish_series(eq, b, expand_branch<cplx>(eq, b, J), J);
}

// ---------------------------------------------------------------------------
// Inequality check on the circle |z - (-t/m_k)| = radius

struct convergence_report {
    bool satisfied = false;
    double margin = 0.0;
    int samples = 0;
    int skipped = 0;
};

inline convergence_report convergence_check(const equation& eq, int k, int samples = 64, double radius = 1.0)
{
    if (samples < 16)
        raise(errc::invalid_argument, "convergence_check needs at least 16 samples");
    if (!(radius > 0.0))
        raise(errc::invalid_argument, "convergence_check radius must be positive");
    detail::validate_branch(eq, {k, 1, 0, 0});
    const cplx mk = eq.at(k).coef;
    const cplx alpha = -eq.constant() / mk;
    convergence_report rep{true, std::numeric_limits<double>::infinity(), samples, 0};
    for (int i = 0; i < samples; ++i) {
        const double theta = two_pi * i / samples;
        const cplx z = alpha + std::polar(radius, theta);
        try {
            cplx acc = 0.0;
            for (int j = 1; j <= eq.size(); ++j)
                if (j != k && eq.at(j).coef != 0.0)
                    acc += eq.at(j).coef * eq.at(j).fn.value(z);
            const double lhs = std::abs(acc / mk);
            if (!std::isfinite(lhs)) {
                ++rep.skipped;
                continue;
            }
            rep.margin = std::min(rep.margin, radius - lhs);
        } catch (const solver_error&) {
            ++rep.skipped;
        }
    }
    if (rep.skipped == samples)
        rep.margin = -std::numeric_limits<double>::infinity();
    rep.satisfied = rep.skipped == 0 && rep.margin > 0.0;
    return rep;
}

// ---------------------------------------------------------------------------

inline std::vector<branch_spec> enumerate_branches(const equation& eq, int k, long s_min, long s_max)
{
    std::vector<branch_spec> out;
    if (k < 1 || k > eq.size() || eq.at(k).coef == 0.0 || s_min > s_max)
        return out;
    const term_function& p = eq.at(k).fn;
    long n;
    if (p.integer_power(&n)) {
        for (long s = 0; s < std::abs(n); ++s)
            out.push_back({k, 1, s, 0});
        return out;
    }
    if (p.kind() == term_kind::log) {
        out.push_back({k, 1, 0, 0});
        return out;
    }
    for (int q = 1; q <= p.categories(); ++q)
        for (long s = s_min; s <= s_max; ++s)
            out.push_back({k, q, s, 0});
    return out;
}

// ---------------------------------------------------------------------------
// Newton

enum class newton_status { converged, derivative_underflow, no_convergence, basin_escape, domain };

struct newton_outcome {
    cplx z;
    int iterations = 0;
    double residual = 0.0;
    newton_status status = newton_status::no_convergence;
    std::string message;
};

struct newton_options {
    double tol = 1e-12;
    int max_iter = 100;
    double basin_factor = 0.5; // <= 0 disables the guard
};

template <class F, class DF>
newton_outcome newton_iterate(F&& f, DF&& df, cplx z0, const newton_options& opt)
{
    newton_outcome out;
    cplx z = z0;
    try {
        for (int it = 0;; ++it) {
            const cplx fz = f(z);
            out.z = z;
            out.iterations = it;
            out.residual = std::abs(fz);
            if (!is_finite(fz)) {
                out.status = newton_status::no_convergence;
                out.message = "non-finite residual";
                return out;
            }
            if (out.residual <= opt.tol * scale_of(z)) {
                if (opt.basin_factor > 0.0 && std::abs(z - z0) > opt.basin_factor * scale_of(z0)) {
                    out.status = newton_status::basin_escape;
                    out.message = "converged outside the starting basin";
                } else {
                    out.status = newton_status::converged;
                }
                return out;
            }
            if (it >= opt.max_iter) {
                out.status = newton_status::no_convergence;
                out.message = "max_iter reached";
                return out;
            }
            const cplx d = df(z);
            const cplx step = fz / d;
            if (d == 0.0 || !is_finite(step)) {
                out.status = newton_status::derivative_underflow;
                out.message = "derivative vanished";
                return out;
            }
            z -= step;
        }
    } catch (const solver_error& e) {
        out.status = newton_status::domain;
        out.message = e.what();
    }
    return out;
}

inline newton_outcome newton_attempt(const equation& eq, cplx z0, const newton_options& opt)
{
    return newton_iterate([&](cplx z) { return eq.value(z); }, [&](cplx z) { return eq.derivative(z); }, z0, opt);
}

inline root_record newton_refine(const equation& eq, cplx z0, double tol = 1e-12, int max_iter = 100)
{
    const newton_outcome o = newton_attempt(eq, z0, {tol, max_iter, 0.5});
    switch (o.status) {
    case newton_status::converged: break;
    case newton_status::derivative_underflow: raise(errc::derivative_underflow, o.message);
    case newton_status::basin_escape: raise(errc::basin_escape, o.message);
    case newton_status::domain: raise(errc::domain, o.message);
    case newton_status::no_convergence: raise(errc::no_convergence, o.message);
    }
    root_record r;
    r.z = o.z;
    r.seed = z0;
    r.residual = o.residual;
    r.refined = true;
    r.converged = true;
    r.newton_iterations = o.iterations;
    return r;
}

// ---------------------------------------------------------------------------
// Per-branch solve and union

struct solve_options {
    long s_min = 0;
    long s_max = 0;
    int terms = 30;
    double tol = 1e-12;
    double radius = 1.0;
    int samples = 64;
    precision prec = precision::standard;
    int max_iter = 100;
    double basin_factor = 0.5;
    double dedup_tol = 1e-8;
    bool refine = true;
    bool merge_clusters = true;
};

struct branch_result {
    std::optional<root_record> root;
    std::vector<branch_diagnostic> diagnostics;
};

namespace detail {

// Picard iteration z <- p_k^{-1}((-t - sum_{i!=k} m_i p_i(z)) / m_k) on the branch b.
inline std::optional<cplx> branch_fixed_point(const equation& eq, const branch_spec& b, cplx z, int max_iter = 1000)
{
    if (b.k < 1 || b.k > eq.size())
        return std::nullopt;
    try {
        const auto& tk = eq.at(b.k);
        for (int it = 0; it < max_iter; ++it) {
            cplx rest = eq.constant();
            for (int i = 1; i <= eq.size(); ++i)
                if (i != b.k)
                    rest += eq.at(i).coef * eq.at(i).fn.value(z);
            const cplx next = tk.fn.inverse(-rest / tk.coef, b.q, b.s, b.sheet);
            if (!is_finite(next))
                return std::nullopt;
            const double step = std::abs(next - z);
            z = next;
            if (step <= 1e-10 * scale_of(z))
                return z;
        }
    } catch (const solver_error&) {
    }
    return std::nullopt;
}

} // namespace detail

// Refines a series value. lead, when given, is the series leading term, used
// as a second seed if the partial sum fails.
inline branch_result refine_series_root(const equation& eq, root_record rec, std::optional<cplx> lead,
                                        const solve_options& opt)
{
    branch_result out;
    const branch_spec b = rec.branch;
    if (rec.sources.empty())
        rec.sources = {b};
    rec.residual = residual_of(eq, rec.z);
    const bool converged = rec.converged;
    if (!opt.refine) {
        if (rec.residual <= opt.tol * scale_of(rec.z))
            out.root = rec;
        else
            out.diagnostics.push_back({b, converged ? diagnostic_kind::refinement_failed : diagnostic_kind::diverged,
                                       "unrefined series value misses the tolerance"});
        return out;
    }
    // a divergent series gives no basin to protect, so the guard is off
    newton_outcome o{rec.z, 0, rec.residual, newton_status::no_convergence, "non-finite seed"};
    if (is_finite(rec.z))
        o = newton_attempt(eq, rec.z, {opt.tol, opt.max_iter, converged ? opt.basin_factor : 0.0});
    if (!converged) {
        // prefer the root the branch equation itself picks out
        const auto fp = detail::branch_fixed_point(eq, b, lead ? *lead : rec.z);
        if (fp) {
            const newton_outcome o2 = newton_attempt(eq, *fp, {opt.tol, opt.max_iter, opt.basin_factor});
            if (o2.status == newton_status::converged)
                o = o2;
        }
    }
    if (o.status != newton_status::converged && !converged && lead && *lead != rec.z) {
        const newton_outcome o2 = newton_attempt(eq, *lead, {opt.tol, opt.max_iter, 0.0});
        if (o2.status == newton_status::converged)
            o = o2;
    }
    if (o.status == newton_status::converged) {
        rec.z = o.z;
        rec.residual = o.residual;
        rec.refined = true;
        rec.newton_iterations = o.iterations;
        out.root = rec;
        if (!converged)
            out.diagnostics.push_back({b, diagnostic_kind::rescued, "series did not converge; Newton rescued the seed"});
    } else {
        out.diagnostics.push_back({b, converged ? diagnostic_kind::refinement_failed : diagnostic_kind::diverged,
                                   "Newton failed: " + o.message});
    }
    return out;
}

inline branch_result solve_branch(const equation& eq, const branch_spec& b, const solve_options& opt)
{
    std::optional<cplx> lead;
    try {
        lead = eq.at(b.k).fn.inverse(detail::expansion_center<cplx>(eq, b.k), b.q, b.s, b.sheet);
    } catch (const solver_error&) {
    }
    root_record rec;
    try {
        rec = lagrange_root(eq, b, opt.terms, opt.prec);
    } catch (const solver_error& e) {
        if (e.code() != errc::overflow || !lead) {
            branch_result out;
            out.diagnostics.push_back({b, diagnostic_kind::skipped, e.what()});
            return out;
        }
        rec.z = rec.seed = *lead;
        rec.branch = b;
        rec.series_terms = opt.terms;
        rec.converged = false;
    }
    return refine_series_root(eq, rec, lead, opt);
}

namespace detail {

// Modified Newton for a root of known multiplicity m.
template <class F, class DF>
cplx polish_multiple(F&& f, DF&& df, cplx z, int m)
{
    try {
        double best = std::abs(f(z));
        for (int it = 0; it < 30 && best > 0.0; ++it) {
            const cplx d = df(z);
            if (d == 0.0)
                break;
            const cplx next = z - static_cast<double>(m) * f(z) / d;
            const double r = std::abs(f(next));
            if (!(r < best))
                break;
            best = r;
            z = next;
        }
    } catch (const solver_error&) {
    }
    return z;
}

} // namespace detail

// Zero count inside the circle |z - c| = r by phase continuation; 0 on failure.
template <class F>
int winding_on_circle(F&& f, cplx c, double r, int n = 256)
{
    try {
        cplx prev = f(c + r);
        double total = 0.0;
        for (int i = 1; i <= n; ++i) {
            const cplx cur = f(c + std::polar(r, two_pi * i / n));
            if (cur == 0.0 || prev == 0.0 || !is_finite(cur))
                return 0;
            total += std::arg(cur / prev);
            prev = cur;
        }
        return static_cast<int>(std::lround(total / two_pi));
    } catch (const solver_error&) {
        return 0;
    }
}

inline int winding_on_circle(const equation& eq, cplx c, double r, int n = 256)
{
    return winding_on_circle([&](cplx z) { return eq.value(z); }, c, r, n);
}

// Collapses roots sitting at a zero of f' into one record per cluster, with
// multiplicity from the zero count on a small enclosing circle. mag(z) is
// the scale |f'| is compared against.
template <class F, class DF, class Mag>
void merge_clusters(root_field& field, F&& f, DF&& df, Mag&& mag, double tol)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < field.roots.size() && !changed; ++i) {
            const cplx z = field.roots[i].z;
            const double sc = scale_of(z);
            cplx fz, dz;
            double m_scale;
            try {
                fz = f(z);
                dz = df(z);
                m_scale = mag(z);
            } catch (const solver_error&) {
                continue;
            }
            if (std::abs(dz) > 1e-4 * std::max(m_scale, 1e-300))
                continue;
            double nearest = INFINITY;
            for (std::size_t j = 0; j < field.roots.size(); ++j)
                if (j != i)
                    nearest = std::min(nearest, std::abs(field.roots[j].z - z));
            double rho = dz != 0.0 ? 10.0 * std::abs(fz / dz) : 0.0;
            if (!std::isfinite(rho))
                rho = 0.0;
            if (nearest < 1e-2 * sc)
                rho = std::max(rho, 2.0 * nearest);
            rho = std::clamp(rho, 1e-6 * sc, 1e-2 * sc);
            const int m = winding_on_circle(f, z, rho);
            if (m < 2)
                continue;
            std::vector<std::size_t> members;
            for (std::size_t j = 0; j < field.roots.size(); ++j)
                if (j == i || std::abs(field.roots[j].z - z) < rho)
                    members.push_back(j);
            if (members.size() == 1 && field.roots[i].multiplicity == m)
                continue;
            const cplx zc = detail::polish_multiple(f, df, z, m);
            double res;
            try {
                res = std::abs(f(zc));
            } catch (const solver_error&) {
                continue;
            }
            if (!(res <= tol * scale_of(zc)))
                continue;
            root_record merged = field.roots[i];
            merged.z = zc;
            merged.residual = res;
            merged.multiplicity = m;
            for (std::size_t j : members)
                for (const auto& src : field.roots[j].sources)
                    if (std::find(merged.sources.begin(), merged.sources.end(), src) == merged.sources.end())
                        merged.sources.push_back(src);
            field.roots[i] = merged;
            for (auto it = members.rbegin(); it != members.rend(); ++it)
                if (*it != i)
                    field.roots.erase(field.roots.begin() + static_cast<std::ptrdiff_t>(*it));
            changed = true;
        }
    }
}

inline void merge_multiple_roots(root_field& field, const equation& eq, double tol)
{
    merge_clusters(
        field, [&](cplx z) { return eq.value(z); }, [&](cplx z) { return eq.derivative(z); },
        [&](cplx z) { return eq.derivative_magnitude(z); }, tol);
}

inline root_field assemble_field(std::vector<branch_result> results, const equation& eq, const solve_options& opt)
{
    root_field field;
    field.dedup_tol = opt.dedup_tol;
    std::vector<root_record> found;
    for (auto& r : results) {
        if (r.root)
            found.push_back(*r.root);
        for (auto& d : r.diagnostics)
            field.diagnostics.push_back(std::move(d));
    }
    std::stable_sort(found.begin(), found.end(), [](const root_record& a, const root_record& b) { return a.branch < b.branch; });
    for (auto& r : found)
        if (r.residual <= opt.tol * scale_of(r.z))
            field.insert(std::move(r));
    if (opt.merge_clusters)
        merge_multiple_roots(field, eq, opt.tol);
    return field;
}

inline root_field solve_all(const equation& eq, const solve_options& opt)
{
    std::vector<int> ks;
    for (int k = 1; k <= eq.size(); ++k)
        if (eq.at(k).coef != 0.0)
            ks.push_back(k);
    std::stable_sort(ks.begin(), ks.end(), [&](int a, int b) { return std::abs(eq.at(a).coef) < std::abs(eq.at(b).coef); });
    std::vector<branch_result> results;
    for (int k : ks) {
        try {
            const convergence_report rep = convergence_check(eq, k, opt.samples, opt.radius);
            if (!rep.satisfied) {
                branch_result adv;
                adv.diagnostics.push_back({{k, 1, 0, 0}, diagnostic_kind::advisory,
                                           "inequality not satisfied at radius " + std::to_string(opt.radius) +
                                               " (worst margin " + std::to_string(rep.margin) + ", skipped " +
                                               std::to_string(rep.skipped) + ")"});
                results.push_back(std::move(adv));
            }
        } catch (const solver_error& e) {
            branch_result adv;
            adv.diagnostics.push_back({{k, 1, 0, 0}, diagnostic_kind::advisory, e.what()});
            results.push_back(std::move(adv));
        }
        for (const auto& b : enumerate_branches(eq, k, opt.s_min, opt.s_max))
            results.push_back(solve_branch(eq, b, opt));
    }
    return assemble_field(std::move(results), eq, opt);
}

inline root_field solve_all(const equation& eq, long s_min, long s_max, int J = 30, double tol = 1e-12)
{
    solve_options opt;
    opt.s_min = s_min;
    opt.s_max = s_max;
    opt.terms = J;
    opt.tol = tol;
    return solve_all(eq, opt);
}

} // namespace lbroots
