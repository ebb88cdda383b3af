#ifndef QBL_RATIONAL_HPP
#define QBL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "qbl/numeric.hpp"

namespace qbl {

using BigInt = mp::cpp_int;

// Reduced fraction with positive denominator; cpp_rational maintains both
// invariants on every operation.
using Rational = mp::cpp_rational;

Real to_real(const Rational& q);
Rational rational_from_string(const std::string& s);
std::string to_string(const Rational& q);

// Gaussian rational a + b*i. Coefficient field for the exact kernel: it is
// what polynomial and series coefficients are made of.
struct GaussRat {
    Rational re;
    Rational im;

    GaussRat() = default;
    GaussRat(Rational r) : re(std::move(r)) {}
    GaussRat(long r) : re(r) {}
    GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat conj() const { return {re, -im}; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b);

    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
    GaussRat& operator/=(const GaussRat& b) { return *this = *this / b; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

Complex to_complex(const GaussRat& c);
std::string to_string(const GaussRat& c);

} // namespace qbl

#endif
