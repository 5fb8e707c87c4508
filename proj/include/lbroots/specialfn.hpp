#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "lbroots/errors.hpp"
#include "lbroots/scalar.hpp"

namespace lbroots {

namespace detail {

inline bool is_nonpositive_integer(cplx z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// sin(pi z) with the real part reduced exactly by an even integer first.
inline cplx sin_pi(cplx z)
{
    const double shift = 2.0 * std::round(z.real() / 2.0);
    return std::sin(pi * cplx(z.real() - shift, z.imag()));
}

inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_coef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

inline cplx lanczos_series(cplx z)
{
    cplx x = lanczos_coef[0];
    for (std::size_t i = 1; i < lanczos_coef.size(); ++i)
        x += lanczos_coef[i] / (z + static_cast<double>(i));
    return x;
}

template <class C>
C make_c(double re, double im)
{
    return from_cplx<C>(cplx(re, im));
}

} // namespace detail

inline cplx gamma(cplx z)
{
    if (detail::is_nonpositive_integer(z))
        raise(errc::pole, "gamma has a pole at " + std::to_string(z.real()));
    if (z.real() < 0.5)
        return pi / (detail::sin_pi(z) * gamma(1.0 - z));
    z -= 1.0;
    const cplx t = z + detail::lanczos_g + 0.5;
    return std::sqrt(two_pi) * std::exp((z + 0.5) * std::log(t) - t) * detail::lanczos_series(z);
}

// Some logarithm of gamma: exp(lgamma(z)) == gamma(z), not necessarily the
// principal branch of log(gamma(z)).
inline cplx lgamma(cplx z)
{
    if (detail::is_nonpositive_integer(z))
        raise(errc::pole, "log-gamma has a pole at " + std::to_string(z.real()));
    if (z.real() < 0.5)
        return std::log(pi) - std::log(detail::sin_pi(z)) - lgamma(1.0 - z);
    z -= 1.0;
    const cplx t = z + detail::lanczos_g + 0.5;
    return 0.5 * std::log(two_pi) + (z + 0.5) * std::log(t) - t + std::log(detail::lanczos_series(z));
}

inline cplx gamma_ratio(cplx a, cplx b)
{
    if (a == b)
        return 1.0;
    const bool a_pole = detail::is_nonpositive_integer(a);
    const bool b_pole = detail::is_nonpositive_integer(b);
    if (a_pole && b_pole) {
        const double n = -a.real();
        const double m = -b.real();
        const double sign = std::fmod(std::abs(n - m), 2.0) == 0.0 ? 1.0 : -1.0;
        return sign * std::exp(std::lgamma(m + 1.0) - std::lgamma(n + 1.0));
    }
    if (a_pole)
        raise(errc::pole, "gamma ratio diverges: numerator at a pole");
    if (b_pole)
        return 0.0;
    if (std::abs(a) < 100.0 && std::abs(b) < 100.0) {
        const cplx ga = gamma(a);
        const cplx gb = gamma(b);
        const cplx r = ga / gb;
        if (is_finite(ga) && is_finite(gb) && ga != 0.0 && is_finite(r))
            return r;
    }
    const cplx r = std::exp(lgamma(a) - lgamma(b));
    if (!is_finite(r))
        raise(errc::overflow, "gamma ratio overflows");
    return r;
}

inline double digamma(double x)
{
    if (!(x > 0.0))
        raise(errc::domain, "digamma is implemented for x > 0 only");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double x2 = 1.0 / (x * x);
    // Bernoulli tail: B_2k / (2k x^2k)
    const double tail = x2 * (1.0 / 12 - x2 * (1.0 / 120 - x2 * (1.0 / 252 - x2 * (1.0 / 240 - x2 * (1.0 / 132 - x2 * (691.0 / 32760 - x2 / 12))))));
    return acc + std::log(x) - 0.5 / x - tail;
}

struct pfq_result {
    cplx value;
    long terms;
};

inline pfq_result pfq_series(std::span<const cplx> a, std::span<const cplx> b, cplx z, double tol = 1e-17)
{
    for (const cplx& bj : b)
        if (detail::is_nonpositive_integer(bj))
            raise(errc::domain, "pFq lower parameter is a nonpositive integer");
    if (z == 0.0)
        return {1.0, 1};
    bool terminating = false;
    for (const cplx& ai : a)
        if (detail::is_nonpositive_integer(ai))
            terminating = true;
    const std::size_t p = a.size();
    const std::size_t q = b.size();
    if (!terminating) {
        if (p > q + 1)
            raise(errc::divergence, "pFq with p > q+1 diverges for z != 0");
        if (p == q + 1 && std::abs(z) >= 1.0)
            raise(errc::divergence, "pFq with p = q+1 needs |z| < 1");
    }
    constexpr long max_terms = 1000000;
    cplx sum = 1.0;
    cplx term = 1.0;
    int quiet = 0;
    for (long n = 0; n < max_terms; ++n) {
        const double nd = static_cast<double>(n);
        cplx ratio = z / (nd + 1.0);
        for (const cplx& ai : a)
            ratio *= ai + nd;
        for (const cplx& bj : b)
            ratio /= bj + nd;
        term *= ratio;
        sum += term;
        if (!is_finite(sum))
            raise(errc::divergence, "pFq partial sum overflowed");
        if (term == 0.0)
            return {sum, n + 2};
        if (std::abs(term) < tol * std::abs(sum)) {
            if (++quiet == 3)
                return {sum, n + 2};
        } else {
            quiet = 0;
        }
    }
    raise(errc::divergence, "pFq did not settle within 1e6 terms");
}

inline cplx pfq(std::span<const cplx> a, std::span<const cplx> b, cplx z, double tol = 1e-17)
{
    return pfq_series(a, b, z, tol).value;
}

inline cplx pfq(const std::vector<cplx>& a, const std::vector<cplx>& b, cplx z, double tol = 1e-17)
{
    return pfq_series(std::span<const cplx>(a), std::span<const cplx>(b), z, tol).value;
}

namespace detail {

inline bool lambert_on_branch(long k, cplx w, cplx t)
{
    if (w == 0.0)
        return k == 0;
    const cplx lhs = w + std::log(w);
    const cplx rhs = std::log(t) + cplx(0.0, two_pi * static_cast<double>(k));
    return std::abs(lhs - rhs) <= 1e-6 * scale_of(rhs);
}

inline bool lambert_residual_ok(cplx w, cplx t)
{
    return std::abs(w * std::exp(w) - t) <= 1e-12 * scale_of(t);
}

inline bool lambert_halley(cplx& w, cplx t)
{
    for (int it = 0; it < 100; ++it) {
        const cplx ew = std::exp(w);
        const cplx f = w * ew - t;
        const cplx wp1 = w + 1.0;
        if (wp1 == 0.0)
            return false;
        const cplx denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if (denom == 0.0 || !is_finite(denom))
            return false;
        const cplx dw = f / denom;
        w -= dw;
        if (!is_finite(w))
            return false;
        if (std::abs(dw) <= 1e-15 * scale_of(w))
            return true;
    }
    return false;
}

inline bool lambert_log_newton(cplx& w, cplx t, long k)
{
    const cplx target = std::log(t) + cplx(0.0, two_pi * static_cast<double>(k));
    for (int it = 0; it < 100; ++it) {
        if (w == 0.0 || w == -1.0)
            return false;
        const cplx f = w + std::log(w) - target;
        const cplx dw = f / (1.0 + 1.0 / w);
        w -= dw;
        if (!is_finite(w))
            return false;
        if (std::abs(dw) <= 1e-15 * scale_of(w))
            return true;
    }
    return false;
}

inline double lambert_real(double w, double t)
{
    for (int it = 0; it < 100; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - t;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0)
            return w;
        const double dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= dw;
        if (std::abs(dw) <= 1e-15 * std::max(1.0, std::abs(w)))
            return w;
    }
    raise(errc::no_convergence, "lambert_w real iteration did not settle in 100 steps");
}

} // namespace detail

// Branch k of the Lambert W function. Branches are pinned by
// W + Log W = Log t + 2 pi i k, except that W_{-1} is the real branch on
// [-1/e, 0).
inline cplx lambert_w(long k, cplx t)
{
    t = unsigned_zero(t);
    if (t == 0.0) {
        if (k == 0)
            return 0.0;
        raise(errc::domain, "lambert_w branch k != 0 is singular at t = 0");
    }
    constexpr double e = std::numbers::e;
    const double branch_point = -1.0 / e;
    if (t.imag() == 0.0 && t.real() < 0.0 && t.real() >= branch_point && (k == 0 || k == -1)) {
        const double x = t.real();
        if (std::abs(x - branch_point) < 1e-15)
            return -1.0;
        const double p = std::sqrt(std::max(0.0, 2.0 * (e * x + 1.0)));
        double seed;
        if (k == 0)
            seed = x > -0.25 ? x - x * x : -1.0 + p - p * p / 3.0;
        else
            seed = x > -0.25 ? std::log(-x) - std::log(-std::log(-x)) : -1.0 - p - p * p / 3.0;
        const double w = detail::lambert_real(seed, x);
        if (std::abs(w * std::exp(w) - x) > 1e-12)
            raise(errc::no_convergence, "lambert_w real iteration missed the residual target");
        return w;
    }

    std::vector<cplx> seeds;
    const cplx near_bp = t - branch_point;
    if (std::abs(near_bp) < 0.25 && (k == 0 || (k == -1 && t.imag() >= 0.0) || (k == 1 && t.imag() < 0.0))) {
        cplx p = std::sqrt(2.0 * (e * t + 1.0));
        if (k != 0)
            p = -p;
        seeds.push_back(-1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p);
    }
    if (k == 0 && std::abs(t) < 0.5)
        seeds.push_back(t - t * t + 1.5 * t * t * t);
    const cplx big_l = std::log(t) + cplx(0.0, two_pi * static_cast<double>(k));
    if (std::abs(big_l) > 1e-3)
        seeds.push_back(big_l - std::log(big_l));
    if (k == 0)
        seeds.push_back(cplx(0.5, 0.0));

    for (const cplx& s : seeds) {
        cplx w = s;
        if (detail::lambert_halley(w, t) && detail::lambert_residual_ok(w, t) && detail::lambert_on_branch(k, w, t))
            return w;
    }
    for (const cplx& s : seeds) {
        cplx w = s;
        if (!detail::lambert_log_newton(w, t, k))
            continue;
        cplx polished = w;
        if (detail::lambert_halley(polished, t) && detail::lambert_on_branch(k, polished, t))
            w = polished;
        if (detail::lambert_residual_ok(w, t) && detail::lambert_on_branch(k, w, t))
            return w;
    }
    raise(errc::no_convergence, "lambert_w found no point on branch " + std::to_string(k));
}

// Lambert W in a wider scalar type: double-precision branch selection, then
// Halley polishing in C.
template <class C>
C lambert_w_as(long k, const C& t)
{
    if constexpr (std::is_same_v<C, cplx>) {
        return lambert_w(k, t);
    } else {
        using std::exp;
        using std::abs;
        C w = from_cplx<C>(lambert_w(k, to_cplx(t)));
        for (int it = 0; it < 6; ++it) {
            const C ew = exp(w);
            const C f = w * ew - t;
            const C wp1 = w + C(1);
            if (abs(wp1) == 0)
                break;
            const C dw = f / (ew * wp1 - (w + C(2)) * f / (C(2) * wp1));
            w -= dw;
            if (abs(dw) <= scalar_traits<C>::epsilon() * (abs(w) + 1))
                break;
        }
        return w;
    }
}

template <class C = cplx>
C log_branch(const C& z, long s)
{
    using std::log;
    using std::abs;
    if (abs(z) == 0)
        raise(errc::domain, "log_branch at z = 0");
    using R = typename scalar_traits<C>::real_type;
    return log(unsigned_zero(z)) + C(R(0), R(2) * scalar_traits<C>::pi() * R(s));
}

template <class C = cplx>
C root_branch(const C& z, const C& r, long s)
{
    using std::exp;
    using std::log;
    using std::abs;
    if (abs(z) == 0)
        raise(errc::domain, "root_branch at z = 0");
    if (abs(r) == 0)
        raise(errc::invalid_argument, "root_branch with r = 0");
    using R = typename scalar_traits<C>::real_type;
    const C winding = C(R(0), R(2) * scalar_traits<C>::pi() * R(s)) / r;
    return exp(log(unsigned_zero(z)) / r) * exp(winding);
}

template <class C = cplx>
C arcsin_branch(const C& z, int q, long s)
{
    using std::asin;
    using R = typename scalar_traits<C>::real_type;
    const C base = asin(unsigned_zero(z));
    const C turn = C(R(2) * scalar_traits<C>::pi() * R(s));
    if (q == 1)
        return base + turn;
    if (q == 2)
        return pi_as<C>() - base + turn;
    raise(errc::invalid_argument, "arcsin_branch category must be 1 or 2");
}

template <class C = cplx>
C arccos_branch(const C& z, int q, long s)
{
    using std::acos;
    using R = typename scalar_traits<C>::real_type;
    const C base = acos(unsigned_zero(z));
    const C turn = C(R(2) * scalar_traits<C>::pi() * R(s));
    if (q == 1)
        return base + turn;
    if (q == 2)
        return -base + turn;
    raise(errc::invalid_argument, "arccos_branch category must be 1 or 2");
}

} // namespace lbroots
