#include "qbl/rational.hpp"

#include "qbl/errors.hpp"

namespace qbl {

Real to_real(const Rational& q)
{
    return Real(numerator(q)) / Real(denominator(q));
}

Rational rational_from_string(const std::string& s)
{
    auto bad = [&] { return DomainError("cannot parse rational: '" + s + "'"); };
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw bad();
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) {
            // Accept plain decimals like "0.25" for CLI convenience.
            auto dot = t.find('.');
            if (dot == std::string::npos) return Rational(BigInt(t));
            std::string digits = t.substr(0, dot) + t.substr(dot + 1);
            BigInt den = 1;
            for (std::size_t i = dot + 1; i < t.size(); ++i) den *= 10;
            return Rational(BigInt(digits), den);
        }
        BigInt num(t.substr(0, slash));
        BigInt den(t.substr(slash + 1));
        if (den == 0) throw bad();
        return Rational(num, den);
    } catch (const std::exception&) {
        throw bad();
    }
}

std::string to_string(const Rational& q)
{
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

GaussRat operator/(const GaussRat& a, const GaussRat& b)
{
    Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw DomainError("division by zero Gaussian rational");
    GaussRat c = a * b.conj();
    return {c.re / n, c.im / n};
}

Complex to_complex(const GaussRat& c)
{
    return Complex(to_real(c.re), to_real(c.im));
}

std::string to_string(const GaussRat& c)
{
    if (c.im == 0) return to_string(c.re);
    std::string s = to_string(c.re);
    s += (c.im > 0) ? "+" : "-";
    Rational a = abs(c.im);
    if (a != 1) s += to_string(a) + "*";
    s += "i";
    return s;
}

} // namespace qbl
