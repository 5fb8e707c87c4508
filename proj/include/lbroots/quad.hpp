#pragma once

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

#include "lbroots/scalar.hpp"

namespace lbroots {

using quad_real = boost::multiprecision::float128;
using quad_complex = boost::multiprecision::complex128;

template <>
struct scalar_traits<quad_complex> {
    using real_type = quad_real;
    static real_type pi()
    {
        static const quad_real value = boost::multiprecision::acos(quad_real(-1));
        return value;
    }
    static real_type epsilon() { return std::numeric_limits<quad_real>::epsilon(); }
    static quad_complex from(cplx z) { return quad_complex(quad_real(z.real()), quad_real(z.imag())); }
    static cplx to_cplx(const quad_complex& z)
    {
        return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
};

} // namespace lbroots
