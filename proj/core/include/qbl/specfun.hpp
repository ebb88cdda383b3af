#ifndef QBL_SPECFUN_HPP
#define QBL_SPECFUN_HPP

#include <vector>

#include "qbl/logseries.hpp"
#include "qbl/numeric.hpp"
#include "qbl/rational.hpp"

namespace qbl::specfun {

// ---- constants ----------------------------------------------------------

const Real& pi();
const Real& euler_gamma(); // Brent-McMillan
const Rational& bernoulli(unsigned n);

// zeta(n) for integer n >= 2, by eta-function (alternating series)
// acceleration; DomainError for n < 2. Values are cached.
Real zeta_int(unsigned n);

// ---- Bell polynomials and the beta sequence ------------------------------

namespace detail {
template <class K>
K from_rational(const Rational& q)
{
    return K(to_real(q));
}
template <>
inline GaussRat from_rational<GaussRat>(const Rational& q)
{
    return GaussRat(q);
}
} // namespace detail

// Complete Bell polynomial B_n(x_1..x_n) via the binomial recursion;
// xs.size() = n, so bell_complete({}) = B_0 = 1.
template <class K>
K bell_complete(const std::vector<K>& xs)
{
    std::size_t n = xs.size();
    std::vector<K> b(n + 1);
    b[0] = K(1);
    for (std::size_t m = 0; m < n; ++m) {
        // B_{m+1} = sum_k C(m,k) B_{m-k} x_{k+1}
        K acc(0);
        Rational cmk = 1;
        for (std::size_t k = 0; k <= m; ++k) {
            if (k > 0) cmk = cmk * Rational(m - k + 1) / Rational(k);
            acc += detail::from_rational<K>(cmk) * b[m - k] * xs[k];
        }
        b[m + 1] = acc;
    }
    return b[n];
}

// beta_n = B_n(0!*gamma, -1!*zeta(2), 2!*zeta(3), ...); cached.
// Coefficientwise these invert Gamma: 1/Gamma(s) = sum_n beta_n s^(n+1)/n!.
Real beta_seq(unsigned n);

// ---- Gamma / polygamma at working precision ------------------------------

// Stirling series with Bernoulli tail and argument raising; valid away from
// the poles (DomainError at nonpositive integers).
Complex log_gamma(const Complex& z);
Complex gamma_fn(const Complex& z);
// entire reciprocal, exact zeros at nonpositive integers
Complex recip_gamma(const Complex& z);
// psi^(k)(z), z not a nonpositive integer
Complex polygamma(unsigned k, const Complex& z);
// psi^(k)(1) = (-1)^(k+1) k! zeta(k+1); psi(1) = -gamma
Real polygamma_at_1(unsigned k);

// ---- reciprocal-Gamma derivatives C^k_z ----------------------------------

// C^k_z = (1/Gamma)^(k)(z). Integer z goes through the exact recurrence
// C^k_z = z C^k_{z+1} + k C^{k-1}_{z+1} seeded at z = 1; other z through the
// Bell/polygamma formula. Entire, no error cases.
Complex recip_gamma_deriv(unsigned k, const Complex& z);
Complex recip_gamma_deriv_int(unsigned k, long z);

// Taylor data of 1/Gamma at 1 + w: coefficients C^p_{1+w}/p!, p = 0..maxp.
std::vector<Complex> recip_gamma_taylor_at(const Rational& one_plus_w, unsigned maxp);

// Gamma^(p)(1), for multipole residues of the Meijer specialization
Complex gamma_deriv_at_1(unsigned p);

// ---- incomplete Gamma at s = 0 -------------------------------------------

struct GammaUpper0Result {
    Complex value;
    bool precision_loss = false;
};

// Gamma(0, z) on the universal cover; input is l = log z. Series for
// |z| <= 8, continued fraction cross-checked against direct quadrature for
// larger |z| (disagreement sets precision_loss).
GammaUpper0Result gamma_upper0_full(const Complex& zlog);
Complex gamma_upper0(const Complex& zlog);

// ---- the E family ---------------------------------------------------------

// E(s, z) = sum_k z^(k+s)/Gamma(1+k+s), z passed as l = log z.
Complex e_point(const Complex& s, const Complex& zlog);

// E_k as a log-series: sum_{m<=N} sum_{j<=k} C(k,j) C^j_{1+m} z^m log(z)^(k-j)
struct EkTable {
    unsigned k = 0;
    NumLogSeries series;
};
EkTable ek_series(unsigned k, unsigned N);

// evaluation backed by a grown-on-demand cached table
Complex ek_eval(unsigned k, const Complex& zlog);

// ---- Meijer specialization T(m, z) and g_m --------------------------------

// T(m,z): residue expansion of the G^{m,0}_{m-1,m} specialization over the
// order-m pole at t = -1 plus the simple poles t = -1+k. ConvergenceError if
// the series part fails its ratio test before the term cap.
Complex t_meijer(unsigned m, const Complex& zlog);

// g_m(z) = log^m z Gamma(0,z) + m z sum_{i<m} (m-1)!/(m-i-1)! log^(m-i-1) z T(3+i, z);
// equals d^m/ds^m Gamma(s,z) at s = 0.
Complex g_m(unsigned m, const Complex& zlog);

// E_j via the beta/g closed form e^z (delta_{0j} - j! sum beta_n g_{j-n-1}/(n!(j-n-1)!));
// cross-check route for ek_series.
Complex ek_closed_form(unsigned j, const Complex& zlog);

} // namespace qbl::specfun

#endif
