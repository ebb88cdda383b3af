#include "qbl/logseries.hpp"

namespace qbl {

NumLogSeries promote(const ExactLogSeries& s)
{
    NumLogSeries r(s.N, s.J);
    r.sigma = to_complex(s.sigma);
    r.ord_valid = s.ord_valid;
    for (std::size_t i = 0; i < s.c.size(); ++i) r.c[i] = to_complex(s.c[i]);
    return r;
}

ThetaOperator::ThetaOperator(std::vector<Poly> coeffs) : p_(std::move(coeffs))
{
    while (p_.size() > 1 && p_.back().is_zero()) p_.pop_back();
    if (p_.empty()) p_.push_back(Poly());
    normalize_int();
}

int ThetaOperator::max_degree() const
{
    int d = 0;
    for (const auto& p : p_) d = std::max(d, p.degree());
    return d;
}

void ThetaOperator::normalize_int()
{
    // common integer rescale: all coefficients of all polynomials become
    // coprime (Gaussian) integers
    BigInt den = 1, num = 0;
    for (const auto& p : p_)
        for (const auto& c : p.coeffs()) {
            den = lcm(den, denominator(c.re));
            den = lcm(den, denominator(c.im));
        }
    for (const auto& p : p_)
        for (const auto& c : p.coeffs()) {
            num = gcd(num, BigInt(numerator(c.re) * (den / denominator(c.re))));
            num = gcd(num, BigInt(numerator(c.im) * (den / denominator(c.im))));
        }
    if (num == 0) return; // zero operator
    GaussRat s{Rational(den, num)};
    GaussRat lead = s * p_.back().leading();
    if (lead.re < 0 || (lead.re == 0 && lead.im < 0)) s = -s;
    for (auto& p : p_) p = s * p;
}

namespace {

template <class K>
Complex ls_eval_impl(const LogSeriesT<K>& s, const Complex& zlog, EvalReport* report, const Real& warn_tol)
{
    Complex l = zlog;
    std::vector<Complex> lp(s.J + 1);
    lp[0] = Complex(1);
    for (unsigned j = 1; j <= s.J; ++j) lp[j] = lp[j - 1] * l;
    Complex zsig = exp(detail::series_coeff_to_complex(s.sigma) * l);
    Complex zstep = exp(l);
    Complex zpow = zsig;
    Complex acc(0);
    Real last_row(0);
    for (unsigned m = 0; m <= s.N; ++m) {
        Complex row(0);
        for (unsigned j = 0; j <= s.J; ++j) {
            K cmj = s.at(m, j);
            if (detail::series_coeff_zero(cmj)) continue;
            row += detail::series_coeff_to_complex(cmj) * lp[j];
        }
        row *= zpow;
        acc += row;
        Real mag = abs(row);
        if (mag > 0) last_row = mag; // last nonzero included term
        zpow *= zstep;
    }
    if (report) {
        report->last_term_magnitude = last_row;
        report->truncation_warning = last_row > warn_tol * (Real(1) + abs(acc));
    }
    return acc;
}

} // namespace

Complex ls_eval(const NumLogSeries& s, const Complex& zlog, EvalReport* report, const Real& warn_tol)
{
    return ls_eval_impl(s, zlog, report, warn_tol);
}

Complex ls_eval(const ExactLogSeries& s, const Complex& zlog, EvalReport* report, const Real& warn_tol)
{
    return ls_eval_impl(s, zlog, report, warn_tol);
}

} // namespace qbl
