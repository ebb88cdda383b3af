#ifndef QBL_POLY_HPP
#define QBL_POLY_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "qbl/rational.hpp"

namespace qbl {

// Univariate polynomial in z over the Gaussian rationals, coefficients by
// ascending degree. Zero polynomial <-> empty coefficient list.
class Poly {
public:
    Poly() = default;
    explicit Poly(GaussRat c0) { c_.push_back(std::move(c0)); normalize(); }
    explicit Poly(std::vector<GaussRat> coeffs) : c_(std::move(coeffs)) { normalize(); }
    Poly(std::initializer_list<GaussRat> coeffs) : c_(coeffs) { normalize(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(GaussRat(1)); }
    // c * z^k
    static Poly monomial(GaussRat c, std::size_t k);

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<GaussRat>& coeffs() const { return c_; }
    GaussRat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : GaussRat(0); }
    const GaussRat& leading() const;

    // smallest k with nonzero coefficient; 0 for the zero polynomial
    std::size_t valuation() const;

    Poly derivative() const;
    // multiply by z^k
    Poly shifted(std::size_t k) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const GaussRat& s, const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Complex eval(const Complex& z) const;
    GaussRat eval(const GaussRat& z) const;

    // strips trailing zeros only; coefficient content is preserved as-is
    void normalize();

    std::string to_string(const std::string& var = "z") const;

private:
    std::vector<GaussRat> c_;
};

// Euclidean division; throws DomainError on zero divisor.
struct PolyDivMod {
    Poly quot;
    Poly rem;
};
PolyDivMod poly_divmod(const Poly& a, const Poly& b);

// Division that must be exact; throws DomainError on nonzero remainder.
Poly poly_exact_div(const Poly& a, const Poly& b);

// Monic gcd via the Euclidean algorithm (remainders re-scaled to monic each
// step to keep coefficients small). gcd(0,0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);
Poly poly_lcm(const Poly& a, const Poly& b);

Poly poly_monic(const Poly& a);

// Rescale so all coefficients are integers (Gaussian integers) with overall
// content 1 and a positive real part of the leading coefficient. Returns the
// applied scalar factor s with result = s * a.
Poly poly_integer_primitive(const Poly& a, GaussRat* factor = nullptr);

} // namespace qbl

#endif
