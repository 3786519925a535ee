#ifndef ST4_REAL_HPP
#define ST4_REAL_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>

namespace st4 {

// Software quadruple precision (~34 significant decimal digits) used for the
// extended-precision computation mode.
using Quad = boost::multiprecision::cpp_bin_float_quad;

template <typename R>
inline R log_gamma(R x)
{
    return boost::math::lgamma(x);
}

template <typename R>
inline R real_abs(const R& x)
{
    using std::abs;
    return abs(x);
}

template <typename R>
inline R real_sqrt(const R& x)
{
    using std::sqrt;
    return sqrt(x);
}

template <typename R>
inline R real_exp(const R& x)
{
    using std::exp;
    return exp(x);
}

template <typename R>
inline R real_cos(const R& x)
{
    using std::cos;
    return cos(x);
}

template <typename R>
inline R real_sin(const R& x)
{
    using std::sin;
    return sin(x);
}

template <typename R>
inline R real_pi()
{
    return boost::math::constants::pi<R>();
}

template <typename R>
inline R real_eps()
{
    return std::numeric_limits<R>::epsilon();
}

} // namespace st4

#endif
