#include "qbl/poly.hpp"

#include "qbl/errors.hpp"

namespace qbl {

Poly Poly::monomial(GaussRat c, std::size_t k)
{
    std::vector<GaussRat> v(k + 1, GaussRat(0));
    v[k] = std::move(c);
    return Poly(std::move(v));
}

const GaussRat& Poly::leading() const
{
    static const GaussRat z(0);
    return c_.empty() ? z : c_.back();
}

std::size_t Poly::valuation() const
{
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return k;
    return 0;
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1) return Poly();
    std::vector<GaussRat> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = GaussRat(Rational(k)) * c_[k];
    return Poly(std::move(d));
}

Poly Poly::shifted(std::size_t k) const
{
    if (is_zero() || k == 0) return k == 0 ? *this : *this;
    std::vector<GaussRat> v(c_.size() + k, GaussRat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i + k] = c_[i];
    return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b)
{
    std::vector<GaussRat> v(std::max(a.c_.size(), b.c_.size()), GaussRat(0));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) + b.coeff(k);
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b)
{
    std::vector<GaussRat> v(std::max(a.c_.size(), b.c_.size()), GaussRat(0));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) - b.coeff(k);
    return Poly(std::move(v));
}

Poly operator-(const Poly& a)
{
    std::vector<GaussRat> v(a.c_);
    for (auto& c : v) c = -c;
    return Poly(std::move(v));
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<GaussRat> v(a.c_.size() + b.c_.size() - 1, GaussRat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(v));
}

Poly operator*(const GaussRat& s, const Poly& a)
{
    std::vector<GaussRat> v(a.c_);
    for (auto& c : v) c = s * c;
    return Poly(std::move(v));
}

Complex Poly::eval(const Complex& z) const
{
    Complex acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + to_complex(c_[k]);
    return acc;
}

GaussRat Poly::eval(const GaussRat& z) const
{
    GaussRat acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
    return acc;
}

void Poly::normalize()
{
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

std::string Poly::to_string(const std::string& var) const
{
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k].is_zero()) continue;
        GaussRat c = c_[k];
        if (!s.empty()) {
            if (c.is_real() && c.re < 0) {
                s += " - ";
                c = -c;
            } else {
                s += " + ";
            }
        }
        std::string cs = qbl::to_string(c);
        if (!c.is_real()) cs = "(" + cs + ")";
        if (k == 0) {
            s += cs;
        } else {
            if (cs == "1")
                s += var;
            else if (cs == "-1")
                s += "-" + var;
            else
                s += cs + "*" + var;
            if (k > 1) s += "^" + std::to_string(k);
        }
    }
    return s;
}

PolyDivMod poly_divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    Poly r = a;
    std::vector<GaussRat> q;
    int db = b.degree();
    if (r.degree() >= db) q.assign(r.degree() - db + 1, GaussRat(0));
    while (!r.is_zero() && r.degree() >= db) {
        std::size_t k = r.degree() - db;
        GaussRat f = r.leading() / b.leading();
        q[k] = f;
        r = r - (f * b.shifted(k));
    }
    return {Poly(std::move(q)), std::move(r)};
}

Poly poly_exact_div(const Poly& a, const Poly& b)
{
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw DomainError("inexact polynomial division");
    return q;
}

Poly poly_monic(const Poly& a)
{
    if (a.is_zero()) return a;
    return (GaussRat(1) / a.leading()) * a;
}

Poly poly_gcd(const Poly& a, const Poly& b)
{
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = poly_divmod(x, y).rem;
        x = y;
        y = poly_monic(r);
    }
    return poly_monic(x);
}

Poly poly_lcm(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return Poly();
    return poly_monic(poly_exact_div(a * b, poly_gcd(a, b)));
}

Poly poly_integer_primitive(const Poly& a, GaussRat* factor)
{
    if (a.is_zero()) {
        if (factor) *factor = GaussRat(1);
        return a;
    }
    BigInt den = 1;
    for (const auto& c : a.coeffs()) {
        den = lcm(den, denominator(c.re));
        den = lcm(den, denominator(c.im));
    }
    BigInt num = 0;
    for (const auto& c : a.coeffs()) {
        num = gcd(num, BigInt(numerator(c.re) * (den / denominator(c.re))));
        num = gcd(num, BigInt(numerator(c.im) * (den / denominator(c.im))));
    }
    if (num == 0) num = 1;
    GaussRat s{Rational(den, num)};
    // sign convention: positive real part of the leading coefficient,
    // falling back to the imaginary part for purely imaginary leads
    GaussRat lead = s * a.leading();
    if (lead.re < 0 || (lead.re == 0 && lead.im < 0)) s = -s;
    if (factor) *factor = s;
    return s * a;
}

} // namespace qbl
