#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace lbroots {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Scalar types usable as jet coefficients. Specialised for double here and
// for the quad type in quad.hpp.
template <class C>
struct scalar_traits;

template <>
struct scalar_traits<cplx> {
    using real_type = double;
    static real_type pi() { return std::numbers::pi; }
    static real_type epsilon() { return std::numeric_limits<double>::epsilon(); }
    static cplx from(cplx z) { return z; }
    static cplx to_cplx(cplx z) { return z; }
};

template <class C>
C from_cplx(cplx z) { return scalar_traits<C>::from(z); }

template <class C>
cplx to_cplx(const C& z) { return scalar_traits<C>::to_cplx(z); }

template <class C>
C from_real(double x) { return scalar_traits<C>::from(cplx(x, 0.0)); }

template <class C>
C pi_as() { return C(scalar_traits<C>::pi()); }

// Adding +0 turns a negative-zero imaginary part into +0, so points on a
// branch cut are always read from the upper side.
template <class C>
C unsigned_zero(const C& z) { return z + C(0); }

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline double scale_of(cplx z) { return std::max(1.0, std::abs(z)); }

} // namespace lbroots
