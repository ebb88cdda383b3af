#ifndef QBL_LOGSERIES_HPP
#define QBL_LOGSERIES_HPP

#include <algorithm>
#include <vector>

#include "qbl/errors.hpp"
#include "qbl/poly.hpp"

namespace qbl {

namespace detail {
inline GaussRat series_coeff_from(const GaussRat& c, GaussRat*) { return c; }
inline Complex series_coeff_from(const GaussRat& c, Complex*) { return to_complex(c); }
inline GaussRat series_coeff_from_int(long v, GaussRat*) { return GaussRat(v); }
inline Complex series_coeff_from_int(long v, Complex*) { return Complex(v); }
inline bool series_coeff_zero(const GaussRat& c) { return c.is_zero(); }
inline bool series_coeff_zero(const Complex& c) { return c.real() == 0 && c.imag() == 0; }
inline Complex series_coeff_to_complex(const GaussRat& c) { return to_complex(c); }
inline const Complex& series_coeff_to_complex(const Complex& c) { return c; }
} // namespace detail

// Truncated log-Laurent series sum_{m<=N, j<=J} c[m][j] z^(sigma+m) log(z)^j.
// Coefficients are either exact Gaussian rationals or working-precision
// complex numbers; the two kinds never mix implicitly (promote() is the
// explicit bridge). ord_valid marks the largest m whose coefficients are
// complete; operations truncate at the trusted order so that residual
// checks can never see partially accumulated tails.
template <class K>
struct LogSeriesT {
    K sigma{};
    unsigned N = 0;
    unsigned J = 0;
    int ord_valid = 0;
    std::vector<K> c; // dense, (N+1)*(J+1), index m*(J+1)+j

    LogSeriesT() : c(1) {}
    LogSeriesT(unsigned n, unsigned j) : N(n), J(j), ord_valid(static_cast<int>(n)), c((n + 1) * (j + 1)) {}

    K& at(unsigned m, unsigned j) { return c[m * (J + 1) + j]; }
    const K& at(unsigned m, unsigned j) const { return c[m * (J + 1) + j]; }
    K coeff(unsigned m, unsigned j) const
    {
        return (m <= N && j <= J) ? c[m * (J + 1) + j] : K{};
    }

    bool is_zero() const
    {
        for (const auto& x : c)
            if (!detail::series_coeff_zero(x)) return false;
        return true;
    }

    // lowest stored order with a nonzero coefficient; N when identically zero
    unsigned valuation() const
    {
        for (unsigned m = 0; m <= N; ++m)
            for (unsigned j = 0; j <= J; ++j)
                if (!detail::series_coeff_zero(at(m, j))) return m;
        return N;
    }

    // drop rows above m = n (and any untrusted tail)
    void truncate(int n)
    {
        n = std::min<int>(n, ord_valid);
        if (n < 0) n = 0;
        unsigned nn = static_cast<unsigned>(n);
        if (nn < N) {
            c.resize((nn + 1) * (J + 1));
            N = nn;
        }
        ord_valid = n;
    }
};

using ExactLogSeries = LogSeriesT<GaussRat>;
using NumLogSeries = LogSeriesT<Complex>;

NumLogSeries promote(const ExactLogSeries& s);

template <class K>
LogSeriesT<K> ls_scale(const K& f, const LogSeriesT<K>& a)
{
    LogSeriesT<K> r = a;
    for (auto& x : r.c) x = f * x;
    return r;
}

template <class K>
LogSeriesT<K> ls_add(const LogSeriesT<K>& a, const LogSeriesT<K>& b)
{
    if (!(a.sigma == b.sigma)) throw DomainError("adding series with different exponent offsets");
    LogSeriesT<K> r(std::max(a.N, b.N), std::max(a.J, b.J));
    r.sigma = a.sigma;
    for (unsigned m = 0; m <= r.N; ++m)
        for (unsigned j = 0; j <= r.J; ++j) r.at(m, j) = a.coeff(m, j) + b.coeff(m, j);
    r.truncate(std::min(a.ord_valid, b.ord_valid));
    return r;
}

template <class K>
LogSeriesT<K> ls_sub(const LogSeriesT<K>& a, const LogSeriesT<K>& b)
{
    return ls_add(a, ls_scale(detail::series_coeff_from_int(-1, static_cast<K*>(nullptr)), b));
}

template <class K>
LogSeriesT<K> ls_mul(const LogSeriesT<K>& a, const LogSeriesT<K>& b)
{
    int ord = std::min<long>(static_cast<long>(a.ord_valid) + b.valuation(),
                             static_cast<long>(b.ord_valid) + a.valuation());
    unsigned n = static_cast<unsigned>(std::max(ord, 0));
    LogSeriesT<K> r(n, a.J + b.J);
    r.sigma = a.sigma + b.sigma;
    for (unsigned m1 = 0; m1 <= a.N && m1 <= n; ++m1)
        for (unsigned j1 = 0; j1 <= a.J; ++j1) {
            const K& x = a.at(m1, j1);
            if (detail::series_coeff_zero(x)) continue;
            for (unsigned m2 = 0; m1 + m2 <= n && m2 <= b.N; ++m2)
                for (unsigned j2 = 0; j2 <= b.J; ++j2) {
                    const K& y = b.at(m2, j2);
                    if (detail::series_coeff_zero(y)) continue;
                    r.at(m1 + m2, j1 + j2) += x * y;
                }
        }
    r.ord_valid = ord;
    return r;
}

// theta = z d/dz:  theta(z^(s+m) log^j z) = (s+m) z^(s+m) log^j z + j z^(s+m) log^(j-1) z
template <class K>
LogSeriesT<K> ls_theta(const LogSeriesT<K>& a)
{
    LogSeriesT<K> r(a.N, a.J);
    r.sigma = a.sigma;
    r.ord_valid = a.ord_valid;
    for (unsigned m = 0; m <= a.N; ++m)
        for (unsigned j = 0; j <= a.J; ++j) {
            K v = (a.sigma + detail::series_coeff_from_int(static_cast<long>(m), static_cast<K*>(nullptr))) *
                  a.at(m, j);
            if (j + 1 <= a.J)
                v += detail::series_coeff_from_int(static_cast<long>(j + 1), static_cast<K*>(nullptr)) *
                     a.at(m, j + 1);
            r.at(m, j) = v;
        }
    return r;
}

// Scalar differential operator sum_i p_i(z) theta^i with polynomial
// coefficients; normalized to coprime (Gaussian-)integer coefficients with a
// positive leading coefficient on the top-order polynomial.
class ThetaOperator {
public:
    explicit ThetaOperator(std::vector<Poly> coeffs);

    std::size_t order() const { return p_.size() - 1; }
    const std::vector<Poly>& coeffs() const { return p_; }
    const Poly& coeff(std::size_t i) const { return p_[i]; }
    int max_degree() const;

    friend bool operator==(const ThetaOperator& a, const ThetaOperator& b) { return a.p_ == b.p_; }

private:
    std::vector<Poly> p_;
    void normalize_int();
};

template <class K>
LogSeriesT<K> poly_mul_series(const Poly& p, const LogSeriesT<K>& a)
{
    LogSeriesT<K> r(a.N, a.J);
    r.sigma = a.sigma;
    r.ord_valid = a.ord_valid;
    for (std::size_t d = 0; d < p.coeffs().size(); ++d) {
        const GaussRat& pc = p.coeffs()[d];
        if (pc.is_zero()) continue;
        K f = detail::series_coeff_from(pc, static_cast<K*>(nullptr));
        for (unsigned m = 0; m + d <= a.N; ++m)
            for (unsigned j = 0; j <= a.J; ++j) r.at(m + d, j) += f * a.at(m, j);
    }
    return r;
}

// L(a) for L = sum_i p_i theta^i. Multiplying by z-polynomials only shifts
// orders upward, so every coefficient at m <= ord_valid(a) is complete; the
// result is truncated there, marking the partially accumulated tail invalid.
template <class K>
LogSeriesT<K> op_apply(const ThetaOperator& L, const LogSeriesT<K>& a)
{
    LogSeriesT<K> acc(a.N, a.J);
    acc.sigma = a.sigma;
    acc.ord_valid = a.ord_valid;
    LogSeriesT<K> th = a;
    for (std::size_t i = 0; i < L.coeffs().size(); ++i) {
        if (i > 0) th = ls_theta(th);
        if (L.coeff(i).is_zero()) continue;
        acc = ls_add(acc, poly_mul_series(L.coeff(i), th));
    }
    acc.truncate(a.ord_valid);
    return acc;
}

struct EvalReport {
    bool truncation_warning = false;
    Real last_term_magnitude{0};
};

Complex ls_eval(const NumLogSeries& s, const Complex& zlog, EvalReport* report = nullptr,
                const Real& warn_tol = eps());
Complex ls_eval(const ExactLogSeries& s, const Complex& zlog, EvalReport* report = nullptr,
                const Real& warn_tol = eps());

} // namespace qbl

#endif
