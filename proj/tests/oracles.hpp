#ifndef QBL_TESTS_ORACLES_HPP
#define QBL_TESTS_ORACLES_HPP

// Test-side oracles, deliberately independent of the library's quadrature
// and series code paths.

#include <functional>

#include <qbl/numeric.hpp>
#include <qbl/rational.hpp>

namespace oracles {

using qbl::Complex;
using qbl::Real;

// tanh-sinh quadrature on [a, b]; plain double-exponential rule, nothing
// shared with the library's Gauss-Legendre machinery
inline Complex tanh_sinh(const std::function<Complex(const Real&)>& f, const Real& a, const Real& b,
                         int levels = 9)
{
    const Real pi_half = 2 * atan(Real(1));
    Real h(1);
    for (int l = 0; l < levels; ++l) h /= 2;
    Complex acc(0);
    Real c = (a + b) / 2, r = (b - a) / 2;
    // |t| beyond ~4.3 puts the nodes below eps of the endpoints
    long kmax = static_cast<long>(Real(45) / (10 * h));
    for (long k = -kmax; k <= kmax; ++k) {
        Real t = h * Real(k);
        Real u = pi_half * sinh(t);
        Real x = tanh(u);
        Real w = pi_half * cosh(t) / (cosh(u) * cosh(u));
        acc += f(c + r * x) * Complex(w);
    }
    return acc * Complex(r * h);
}

// zeta(3) by Apery's series 5/2 sum (-1)^(k-1) / (k^3 C(2k,k))
inline Real apery_zeta3(unsigned terms = 60)
{
    qbl::Rational acc = 0, binom = 1; // C(0,0)
    for (unsigned k = 1; k <= terms; ++k) {
        binom = binom * qbl::Rational(2 * k) * qbl::Rational(2 * k - 1) / (qbl::Rational(k) * qbl::Rational(k));
        qbl::Rational term = qbl::Rational(1) / (qbl::Rational(k) * k * k * binom);
        acc += (k % 2 == 1) ? term : -term;
    }
    return qbl::to_real(acc) * 5 / 2;
}

// upper incomplete Gamma(s, z) for Re z > 0 by the shifted-ray integral
// int_0^T e^-(z+t) (z+t)^(s-1) dt, tanh-sinh on geometric panels
inline Complex gamma_upper_quad(const Complex& s, const Complex& z)
{
    auto f = [&](const Real& t) {
        Complex u = z + Complex(t);
        return exp(-u + (s - Complex(1)) * log(u));
    };
    Complex acc(0);
    Real a(0), b(1);
    const Real T = Real(40) + Real(3) * qbl::digits10;
    while (a < T) {
        acc += tanh_sinh(f, a, std::min(b, T));
        a = b;
        b *= 2;
    }
    return acc;
}

// lower incomplete gamma(s, z) for Re s > 0 via t = u^2 to soften the origin;
// the integrand is assembled in log form so the endpoint cannot overflow
inline Complex gamma_lower_quad(const Complex& s, const Real& z)
{
    auto f = [&](const Real& u) {
        if (!(u > 0)) return Complex(0);
        return Complex(2) * exp((Complex(2) * s - Complex(1)) * log(Complex(u)) - Complex(u * u));
    };
    return tanh_sinh(f, Real(0), sqrt(z));
}

} // namespace oracles

#endif
