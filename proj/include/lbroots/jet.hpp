#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lbroots/errors.hpp"
#include "lbroots/scalar.hpp"

namespace lbroots {

// Truncated Taylor series c_0 + c_1 h + ... + c_N h^N about `center`.
template <class C>
class basic_jet {
public:
    using value_type = C;
    using real_type = typename scalar_traits<C>::real_type;

    basic_jet() = default;
    basic_jet(C center, std::vector<C> coeffs) : center_(std::move(center)), c_(std::move(coeffs))
    {
        if (c_.empty())
            raise(errc::invalid_argument, "jet needs at least one coefficient");
    }

    static basic_jet variable(const C& center, std::size_t order)
    {
        std::vector<C> c(order + 1, C(0));
        c[0] = center;
        if (order >= 1)
            c[1] = C(1);
        return basic_jet(center, std::move(c));
    }

    static basic_jet constant(const C& center, const C& value, std::size_t order)
    {
        std::vector<C> c(order + 1, C(0));
        c[0] = value;
        return basic_jet(center, std::move(c));
    }

    std::size_t order() const { return c_.size() - 1; }
    std::size_t size() const { return c_.size(); }
    const C& center() const { return center_; }
    const std::vector<C>& coeffs() const { return c_; }
    const C& operator[](std::size_t n) const { return c_[n]; }
    C& operator[](std::size_t n) { return c_[n]; }
    const C& value() const { return c_[0]; }

    // n-th derivative at the center
    C derivative_at_center(std::size_t n) const
    {
        C f(1);
        for (std::size_t i = 2; i <= n; ++i)
            f *= C(real_type(i));
        return f * c_[n];
    }

    basic_jet truncated(std::size_t order) const
    {
        std::vector<C> c(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(order, this->order()) + 1));
        c.resize(order + 1, C(0));
        return basic_jet(center_, std::move(c));
    }

    basic_jet& operator+=(const basic_jet& o)
    {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] += o.c_[i];
        return *this;
    }
    basic_jet& operator-=(const basic_jet& o)
    {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] -= o.c_[i];
        return *this;
    }
    basic_jet& operator+=(const C& v) { c_[0] += v; return *this; }
    basic_jet& operator-=(const C& v) { c_[0] -= v; return *this; }
    basic_jet& operator*=(const C& v)
    {
        for (auto& x : c_)
            x *= v;
        return *this;
    }
    basic_jet& operator/=(const C& v)
    {
        for (auto& x : c_)
            x /= v;
        return *this;
    }
    basic_jet& operator*=(const basic_jet& o) { return *this = *this * o; }
    basic_jet& operator/=(const basic_jet& o) { return *this = *this / o; }

    friend basic_jet operator+(basic_jet a, const basic_jet& b) { return a += b; }
    friend basic_jet operator-(basic_jet a, const basic_jet& b) { return a -= b; }
    friend basic_jet operator+(basic_jet a, const C& v) { return a += v; }
    friend basic_jet operator+(const C& v, basic_jet a) { return a += v; }
    friend basic_jet operator-(basic_jet a, const C& v) { return a -= v; }
    friend basic_jet operator-(const C& v, const basic_jet& a) { return -a + v; }
    friend basic_jet operator*(basic_jet a, const C& v) { return a *= v; }
    friend basic_jet operator*(const C& v, basic_jet a) { return a *= v; }
    friend basic_jet operator/(basic_jet a, const C& v) { return a /= v; }
    friend basic_jet operator-(basic_jet a)
    {
        for (auto& x : a.c_)
            x = -x;
        return a;
    }

    friend basic_jet operator*(const basic_jet& a, const basic_jet& b)
    {
        a.check_same(b);
        const std::size_t n = a.c_.size();
        std::vector<C> c(n, C(0));
        for (std::size_t k = 0; k < n; ++k) {
            C acc(0);
            for (std::size_t i = 0; i <= k; ++i)
                acc += a.c_[i] * b.c_[k - i];
            c[k] = acc;
        }
        return basic_jet(a.center_, std::move(c));
    }

    friend basic_jet operator/(const basic_jet& a, const basic_jet& b)
    {
        a.check_same(b);
        using std::abs;
        if (abs(b.c_[0]) == 0)
            raise(errc::domain, "jet division by a series vanishing at the center");
        const std::size_t n = a.c_.size();
        std::vector<C> c(n, C(0));
        for (std::size_t k = 0; k < n; ++k) {
            C acc = a.c_[k];
            for (std::size_t i = 1; i <= k; ++i)
                acc -= b.c_[i] * c[k - i];
            c[k] = acc / b.c_[0];
        }
        return basic_jet(a.center_, std::move(c));
    }

    friend basic_jet operator/(const C& v, const basic_jet& b)
    {
        return constant(b.center_, v, b.order()) / b;
    }

private:
    void check_same(const basic_jet& o) const
    {
        if (o.c_.size() != c_.size())
            raise(errc::invalid_argument, "jet orders differ");
    }

    C center_{};
    std::vector<C> c_;
};

using jet = basic_jet<cplx>;

namespace detail {
template <class C>
C jet_num(long n)
{
    return C(typename scalar_traits<C>::real_type(n));
}
} // namespace detail

template <class C>
basic_jet<C> exp(const basic_jet<C>& a)
{
    using std::exp;
    const std::size_t n = a.size();
    std::vector<C> b(n, C(0));
    b[0] = exp(a[0]);
    for (std::size_t m = 1; m < n; ++m) {
        C acc(0);
        for (std::size_t k = 1; k <= m; ++k)
            acc += detail::jet_num<C>(static_cast<long>(k)) * a[k] * b[m - k];
        b[m] = acc / detail::jet_num<C>(static_cast<long>(m));
    }
    return basic_jet<C>(a.center(), std::move(b));
}

// Logarithm whose value at the center is `b0` (any logarithm of a[0]).
template <class C>
basic_jet<C> log(const basic_jet<C>& a, const C& b0)
{
    using std::abs;
    if (abs(a[0]) == 0)
        raise(errc::domain, "log of a series vanishing at the center");
    const std::size_t n = a.size();
    std::vector<C> b(n, C(0));
    b[0] = b0;
    for (std::size_t m = 1; m < n; ++m) {
        C acc(0);
        for (std::size_t k = 1; k < m; ++k)
            acc += detail::jet_num<C>(static_cast<long>(k)) * b[k] * a[m - k];
        b[m] = (a[m] - acc / detail::jet_num<C>(static_cast<long>(m))) / a[0];
    }
    return basic_jet<C>(a.center(), std::move(b));
}

template <class C>
basic_jet<C> log(const basic_jet<C>& a)
{
    using std::log;
    return log(a, C(log(unsigned_zero(a[0]))));
}

// a^alpha on the sheet whose value at the center is `b0`.
template <class C>
basic_jet<C> pow(const basic_jet<C>& a, const C& alpha, const C& b0)
{
    using std::abs;
    if (abs(a[0]) == 0)
        raise(errc::domain, "fractional power of a series vanishing at the center");
    const std::size_t n = a.size();
    std::vector<C> b(n, C(0));
    b[0] = b0;
    for (std::size_t m = 1; m < n; ++m) {
        C acc(0);
        for (std::size_t k = 1; k <= m; ++k)
            acc += (alpha * detail::jet_num<C>(static_cast<long>(k)) - detail::jet_num<C>(static_cast<long>(m - k))) * a[k] * b[m - k];
        b[m] = acc / (detail::jet_num<C>(static_cast<long>(m)) * a[0]);
    }
    return basic_jet<C>(a.center(), std::move(b));
}

template <class C>
basic_jet<C> ipow(const basic_jet<C>& a, long n)
{
    if (n < 0)
        return C(1) / ipow(a, -n);
    basic_jet<C> result = basic_jet<C>::constant(a.center(), C(1), a.order());
    basic_jet<C> base = a;
    while (n > 0) {
        if (n & 1)
            result = result * base;
        n >>= 1;
        if (n > 0)
            base = base * base;
    }
    return result;
}

template <class C>
std::pair<basic_jet<C>, basic_jet<C>> sincos(const basic_jet<C>& a)
{
    using std::sin;
    using std::cos;
    const std::size_t n = a.size();
    std::vector<C> s(n, C(0)), c(n, C(0));
    s[0] = sin(a[0]);
    c[0] = cos(a[0]);
    for (std::size_t m = 1; m < n; ++m) {
        C as(0), ac(0);
        for (std::size_t k = 1; k <= m; ++k) {
            const C ka = detail::jet_num<C>(static_cast<long>(k)) * a[k];
            as += ka * c[m - k];
            ac += ka * s[m - k];
        }
        const C inv = C(1) / detail::jet_num<C>(static_cast<long>(m));
        s[m] = as * inv;
        c[m] = -ac * inv;
    }
    return {basic_jet<C>(a.center(), std::move(s)), basic_jet<C>(a.center(), std::move(c))};
}

template <class C>
basic_jet<C> sin(const basic_jet<C>& a) { return sincos(a).first; }

template <class C>
basic_jet<C> cos(const basic_jet<C>& a) { return sincos(a).second; }

template <class C>
basic_jet<C> tan(const basic_jet<C>& a)
{
    auto [s, c] = sincos(a);
    return s / c;
}

template <class C>
basic_jet<C> sqrt(const basic_jet<C>& a, const C& b0)
{
    return pow(a, C(typename scalar_traits<C>::real_type(0.5)), b0);
}

// d/dh, one order shorter
template <class C>
basic_jet<C> differentiate(const basic_jet<C>& a)
{
    if (a.order() == 0)
        return basic_jet<C>::constant(a.center(), C(0), 0);
    std::vector<C> d(a.order(), C(0));
    for (std::size_t n = 0; n < d.size(); ++n)
        d[n] = detail::jet_num<C>(static_cast<long>(n + 1)) * a[n + 1];
    return basic_jet<C>(a.center(), std::move(d));
}

// antiderivative with value c0 at the center, one order longer
template <class C>
basic_jet<C> integrate(const basic_jet<C>& a, const C& c0)
{
    std::vector<C> b(a.size() + 1, C(0));
    b[0] = c0;
    for (std::size_t n = 0; n < a.size(); ++n)
        b[n + 1] = a[n] / detail::jet_num<C>(static_cast<long>(n + 1));
    return basic_jet<C>(a.center(), std::move(b));
}

// Inverse sine on the sheet with value b0 at the center: b' = a'/cos(b).
template <class C>
basic_jet<C> asin(const basic_jet<C>& a, const C& b0)
{
    using std::cos;
    if (a.order() == 0)
        return basic_jet<C>::constant(a.center(), b0, 0);
    const basic_jet<C> da = differentiate(a);
    const basic_jet<C> a_short = a.truncated(a.order() - 1);
    const basic_jet<C> root = sqrt(C(1) - a_short * a_short, C(cos(b0)));
    return integrate(da / root, b0);
}

// Inverse cosine on the sheet with value b0 at the center: b' = -a'/sin(b).
template <class C>
basic_jet<C> acos(const basic_jet<C>& a, const C& b0)
{
    using std::sin;
    if (a.order() == 0)
        return basic_jet<C>::constant(a.center(), b0, 0);
    const basic_jet<C> da = differentiate(a);
    const basic_jet<C> a_short = a.truncated(a.order() - 1);
    const basic_jet<C> root = sqrt(C(1) - a_short * a_short, C(sin(b0)));
    return integrate(-(da / root), b0);
}

// Solves w e^w = a coefficient by coefficient, starting from w0 = w(center).
template <class C>
basic_jet<C> lambert_w(const basic_jet<C>& a, const C& w0)
{
    using std::exp;
    using std::abs;
    const C denom_base = w0 + C(1);
    if (abs(denom_base) == 0)
        raise(errc::domain, "Lambert W series at the branch point w = -1");
    const std::size_t n = a.size();
    std::vector<C> w(n, C(0)), e(n, C(0));
    w[0] = w0;
    e[0] = exp(w0);
    const C denom = e[0] * denom_base;
    for (std::size_t m = 1; m < n; ++m) {
        C e_known(0);
        for (std::size_t k = 1; k < m; ++k)
            e_known += detail::jet_num<C>(static_cast<long>(k)) * w[k] * e[m - k];
        e_known /= detail::jet_num<C>(static_cast<long>(m));
        C cross(0);
        for (std::size_t i = 1; i < m; ++i)
            cross += w[i] * e[m - i];
        w[m] = (a[m] - w0 * e_known - cross) / denom;
        e[m] = w[m] * e[0] + e_known;
    }
    return basic_jet<C>(a.center(), std::move(w));
}

} // namespace lbroots
