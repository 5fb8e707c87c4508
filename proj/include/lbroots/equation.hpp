#pragma once

#include <compare>
#include <string>
#include <vector>

#include "lbroots/errors.hpp"
#include "lbroots/jet.hpp"
#include "lbroots/scalar.hpp"
#include "lbroots/specialfn.hpp"

namespace lbroots {

enum class term_kind { power, exp, log, sin, cos, selfpower, expscaled, linexp };

// One term p(z) of the catalog together with its inverse family.
//   power(r)      z^r (principal), inverse w^(1/r) e^(2 pi i s/r)
//   exp           e^z,             inverse log w + 2 pi i s
//   log           log z,           inverse e^w
//   sin, cos      inverses with two categories q (+/- arcsin, +/- arccos)
//   selfpower     z^z,             inverse exp(W_s(log w + 2 pi i sheet))
//   expscaled(t)  e^(t z),         inverse (log w + 2 pi i s)/t
//   linexp(t)     z e^(t z),       inverse W_s(t w)/t
class term_function {
public:
    static term_function power(cplx r)
    {
        if (r == 0.0)
            raise(errc::invalid_argument, "power term with r = 0 belongs in the constant");
        return term_function(term_kind::power, r);
    }
    static term_function exp() { return term_function(term_kind::exp, 0.0); }
    static term_function log() { return term_function(term_kind::log, 0.0); }
    static term_function sin() { return term_function(term_kind::sin, 0.0); }
    static term_function cos() { return term_function(term_kind::cos, 0.0); }
    static term_function selfpower() { return term_function(term_kind::selfpower, 0.0); }
    static term_function expscaled(cplx tau)
    {
        if (tau == 0.0)
            raise(errc::invalid_argument, "expscaled term with tau = 0 belongs in the constant");
        return term_function(term_kind::expscaled, tau);
    }
    static term_function linexp(cplx tau)
    {
        if (tau == 0.0)
            raise(errc::invalid_argument, "linexp term with tau = 0 is a power term");
        return term_function(term_kind::linexp, tau);
    }

    term_kind kind() const { return kind_; }
    cplx parameter() const { return param_; }
    int categories() const { return kind_ == term_kind::sin || kind_ == term_kind::cos ? 2 : 1; }

    // true when this is z^n for a real integer n of modest size
    bool integer_power(long* n = nullptr) const
    {
        if (kind_ != term_kind::power || param_.imag() != 0.0)
            return false;
        const double r = param_.real();
        if (r != std::floor(r) || std::abs(r) > 64.0)
            return false;
        if (n)
            *n = static_cast<long>(r);
        return true;
    }

    bool has_real_parameter() const { return param_.imag() == 0.0; }

    std::string name() const
    {
        switch (kind_) {
        case term_kind::power: return "power";
        case term_kind::exp: return "exp";
        case term_kind::log: return "log";
        case term_kind::sin: return "sin";
        case term_kind::cos: return "cos";
        case term_kind::selfpower: return "selfpower";
        case term_kind::expscaled: return "expscaled";
        case term_kind::linexp: return "linexp";
        }
        return "?";
    }

    template <class C>
    C value(const C& z) const
    {
        using std::exp;
        using std::log;
        using std::sin;
        using std::cos;
        using std::abs;
        const C p = from_cplx<C>(param_);
        switch (kind_) {
        case term_kind::power: {
            long n;
            if (integer_power(&n))
                return int_pow(z, n);
            if (abs(z) == 0) {
                if (param_.real() > 0.0)
                    return C(0);
                raise(errc::domain, "power term with Re r <= 0 at z = 0");
            }
            return exp(p * log(unsigned_zero(z)));
        }
        case term_kind::exp: return exp(z);
        case term_kind::log:
            if (abs(z) == 0)
                raise(errc::domain, "log term at z = 0");
            return log(unsigned_zero(z));
        case term_kind::sin: return sin(z);
        case term_kind::cos: return cos(z);
        case term_kind::selfpower:
            if (abs(z) == 0)
                raise(errc::domain, "selfpower term at z = 0");
            return exp(z * log(unsigned_zero(z)));
        case term_kind::expscaled: return exp(p * z);
        case term_kind::linexp: return z * exp(p * z);
        }
        return C(0);
    }

    template <class C>
    C derivative(const C& z) const
    {
        using std::exp;
        using std::log;
        using std::sin;
        using std::cos;
        using std::abs;
        const C p = from_cplx<C>(param_);
        switch (kind_) {
        case term_kind::power: {
            long n;
            if (integer_power(&n))
                return n == 0 ? C(0) : C(typename scalar_traits<C>::real_type(n)) * int_pow(z, n - 1);
            if (abs(z) == 0) {
                if (param_.real() > 1.0)
                    return C(0);
                raise(errc::domain, "power term derivative at z = 0");
            }
            return p * exp((p - C(1)) * log(unsigned_zero(z)));
        }
        case term_kind::exp: return exp(z);
        case term_kind::log:
            if (abs(z) == 0)
                raise(errc::domain, "log term at z = 0");
            return C(1) / z;
        case term_kind::sin: return cos(z);
        case term_kind::cos: return -sin(z);
        case term_kind::selfpower: {
            if (abs(z) == 0)
                raise(errc::domain, "selfpower term at z = 0");
            const C lz = log(unsigned_zero(z));
            return exp(z * lz) * (lz + C(1));
        }
        case term_kind::expscaled: return p * exp(p * z);
        case term_kind::linexp: return exp(p * z) * (C(1) + p * z);
        }
        return C(0);
    }

    // One point of the inverse family: p(inverse(w)) == w on the branch.
    template <class C>
    C inverse(const C& w, int q, long s, long sheet = 0) const
    {
        using std::exp;
        check_category(q);
        const C p = from_cplx<C>(param_);
        switch (kind_) {
        case term_kind::power: return root_branch<C>(w, p, s);
        case term_kind::exp: return log_branch<C>(w, s);
        case term_kind::log: return exp(w);
        case term_kind::sin: return arcsin_branch<C>(w, q, s);
        case term_kind::cos: return arccos_branch<C>(w, q, s);
        case term_kind::selfpower: return exp(lambert_w_as<C>(s, log_branch<C>(w, sheet)));
        case term_kind::expscaled: return log_branch<C>(w, s) / p;
        case term_kind::linexp: return lambert_w_as<C>(s, p * w) / p;
        }
        return C(0);
    }

    // Taylor jet of the inverse branch as a function of w.
    template <class C>
    basic_jet<C> inverse_jet(const basic_jet<C>& w, int q, long s, long sheet = 0) const
    {
        using lbroots::exp;
        using lbroots::log;
        check_category(q);
        const C w0 = w[0];
        const C p = from_cplx<C>(param_);
        switch (kind_) {
        case term_kind::power: return pow(w, C(1) / p, root_branch<C>(w0, p, s));
        case term_kind::exp: return log(w, log_branch<C>(w0, s));
        case term_kind::log: return exp(w);
        case term_kind::sin: return asin(w, arcsin_branch<C>(w0, q, s));
        case term_kind::cos: return acos(w, arccos_branch<C>(w0, q, s));
        case term_kind::selfpower: {
            const basic_jet<C> lw = log(w, log_branch<C>(w0, sheet));
            return exp(lambert_w(lw, lambert_w_as<C>(s, lw[0])));
        }
        case term_kind::expscaled: return log(w, log_branch<C>(w0, s)) / p;
        case term_kind::linexp: {
            const basic_jet<C> arg = w * p;
            return lambert_w(arg, lambert_w_as<C>(s, arg[0])) / p;
        }
        }
        return w;
    }

    // Taylor jet of p(z(w)) for a given jet z(w).
    template <class C>
    basic_jet<C> apply(const basic_jet<C>& z) const
    {
        using std::exp;
        using std::log;
        const C p = from_cplx<C>(param_);
        switch (kind_) {
        case term_kind::power: {
            long n;
            if (integer_power(&n))
                return ipow(z, n);
            return lbroots::pow(z, p, C(exp(p * log(unsigned_zero(z[0])))));
        }
        case term_kind::exp: return lbroots::exp(z);
        case term_kind::log: return lbroots::log(z);
        case term_kind::sin: return lbroots::sin(z);
        case term_kind::cos: return lbroots::cos(z);
        case term_kind::selfpower: return lbroots::exp(z * lbroots::log(z));
        case term_kind::expscaled: return lbroots::exp(z * p);
        case term_kind::linexp: return z * lbroots::exp(z * p);
        }
        return z;
    }

private:
    term_function(term_kind k, cplx p) : kind_(k), param_(p) {}

    void check_category(int q) const
    {
        if (q < 1 || q > categories())
            raise(errc::invalid_argument, "category " + std::to_string(q) + " outside 1.." + std::to_string(categories()) + " for " + name());
    }

    template <class C>
    static C int_pow(const C& z, long n)
    {
        using std::abs;
        if (n < 0) {
            if (abs(z) == 0)
                raise(errc::domain, "negative power at z = 0");
            return C(1) / int_pow(z, -n);
        }
        C result(1), base = z;
        while (n > 0) {
            if (n & 1)
                result *= base;
            n >>= 1;
            if (n > 0)
                base *= base;
        }
        return result;
    }

    term_kind kind_;
    cplx param_;
};

struct term {
    cplx coef;
    term_function fn;
};

// sigma(z) = sum_i m_i p_i(z) + t
class equation {
public:
    equation(std::vector<term> terms, cplx constant) : terms_(std::move(terms)), t_(constant)
    {
        if (terms_.empty())
            raise(errc::invalid_argument, "an equation needs at least one term");
        bool any = false;
        for (const auto& tm : terms_) {
            if (!is_finite(tm.coef))
                raise(errc::invalid_argument, "non-finite coefficient");
            any = any || tm.coef != 0.0;
        }
        if (!any)
            raise(errc::invalid_argument, "at least one nonzero m_i is required");
        if (!is_finite(t_))
            raise(errc::invalid_argument, "non-finite constant");
    }

    const std::vector<term>& terms() const { return terms_; }
    const term& at(int k) const { return terms_.at(static_cast<std::size_t>(k - 1)); }
    int size() const { return static_cast<int>(terms_.size()); }
    cplx constant() const { return t_; }

    template <class C = cplx>
    C value(const C& z) const
    {
        C acc = from_cplx<C>(t_);
        for (const auto& tm : terms_)
            if (tm.coef != 0.0)
                acc += from_cplx<C>(tm.coef) * tm.fn.value(z);
        return acc;
    }

    template <class C = cplx>
    C derivative(const C& z) const
    {
        C acc(0);
        for (const auto& tm : terms_)
            if (tm.coef != 0.0)
                acc += from_cplx<C>(tm.coef) * tm.fn.derivative(z);
        return acc;
    }

    // sum of |m_i p_i(z)| + |t|: the size of what cancels in sigma(z)
    double magnitude(cplx z) const
    {
        double acc = std::abs(t_);
        for (const auto& tm : terms_)
            if (tm.coef != 0.0)
                acc += std::abs(tm.coef * tm.fn.value(z));
        return acc;
    }

    double derivative_magnitude(cplx z) const
    {
        double acc = 0.0;
        for (const auto& tm : terms_)
            if (tm.coef != 0.0)
                acc += std::abs(tm.coef * tm.fn.derivative(z));
        return acc;
    }

    // all coefficients, the constant and term parameters real
    bool is_real() const
    {
        if (t_.imag() != 0.0)
            return false;
        for (const auto& tm : terms_)
            if (tm.coef.imag() != 0.0 || !tm.fn.has_real_parameter())
                return false;
        return true;
    }

private:
    std::vector<term> terms_;
    cplx t_;
};

inline cplx eval(const equation& eq, cplx z) { return eq.value(z); }
inline cplx eval_derivative(const equation& eq, cplx z) { return eq.derivative(z); }

struct branch_index {
    int q = 1;
    long s = 0;
};

inline cplx inverse_branch(const term_function& p, cplx w, branch_index b)
{
    return p.inverse(w, b.q, b.s);
}

struct branch_spec {
    int k = 1;
    int q = 1;
    long s = 0;
    long sheet = 0;

    auto operator<=>(const branch_spec&) const = default;
};

inline std::string to_string(const branch_spec& b)
{
    std::string r = "(k=" + std::to_string(b.k) + ", q=" + std::to_string(b.q) + ", s=" + std::to_string(b.s);
    if (b.sheet != 0)
        r += ", sheet=" + std::to_string(b.sheet);
    return r + ")";
}

struct rectangle {
    double re_min, re_max, im_min, im_max;

    bool contains(cplx z) const
    {
        return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
    }
    void validate() const
    {
        if (!(re_min < re_max) || !(im_min < im_max))
            raise(errc::invalid_argument, "rectangle needs re_min < re_max and im_min < im_max");
    }
    rectangle expanded(double d) const { return {re_min - d, re_max + d, im_min - d, im_max + d}; }
};

} // namespace lbroots
