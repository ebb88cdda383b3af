#ifndef QBL_NUMERIC_HPP
#define QBL_NUMERIC_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#ifndef QBL_DIGITS
#define QBL_DIGITS 50
#endif

namespace qbl {

namespace mp = boost::multiprecision;

// Floating kernel. QBL_DIGITS decimal digits, set at configure time;
// everything downstream (quadrature targets, series cutoffs) is expressed
// relative to eps().
using Real = mp::number<mp::cpp_bin_float<QBL_DIGITS>, mp::et_off>;
using Complex = mp::number<mp::complex_adaptor<mp::cpp_bin_float<QBL_DIGITS>>, mp::et_off>;

constexpr unsigned digits10 = QBL_DIGITS;

inline const Real& eps()
{
    static const Real e = pow(Real(10), -int(digits10) + 2);
    return e;
}

inline Real abs2(const Complex& z)
{
    return z.real() * z.real() + z.imag() * z.imag();
}

inline bool is_finite(const Real& x)
{
    return !isnan(x) && !isinf(x);
}

inline bool is_finite(const Complex& z)
{
    return is_finite(z.real()) && is_finite(z.imag());
}

} // namespace qbl

#endif
