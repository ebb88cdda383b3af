#include "qbl/specfun.hpp"

#include <map>
#include <mutex>

#include "qbl/errors.hpp"

namespace qbl::specfun {

namespace {

Real factorial_real(unsigned n)
{
    static std::mutex mu;
    static std::vector<Real> table{Real(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (table.size() <= n) table.push_back(table.back() * Real(static_cast<unsigned>(table.size())));
    return table[n];
}

Rational binom_rational(unsigned n, unsigned k)
{
    if (k > n) return 0;
    Rational r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
    return r;
}

} // namespace

const Real& pi()
{
    static const Real v = Real(4) * atan(Real(1));
    return v;
}

const Real& euler_gamma()
{
    // Brent-McMillan: gamma = A(n)/B(n) - log n + O(e^{-4n}), n = 40
    static const Real v = [] {
        const unsigned n = 40;
        Real A(0), B(0), H(0);
        Real term(1); // (n^k / k!)^2 at k = 0
        Real n2 = Real(n) * Real(n);
        for (unsigned k = 0;; ++k) {
            if (k > 0) {
                term *= n2 / (Real(k) * Real(k));
                H += Real(1) / Real(k);
            }
            A += term * H;
            B += term;
            if (k > 2 * n && term < B * eps() * eps()) break;
            if (k > 4000) break;
        }
        return A / B - log(Real(n));
    }();
    return v;
}

const Rational& bernoulli(unsigned n)
{
    static std::mutex mu;
    static std::vector<Rational> table{Rational(1), Rational(-1, 2)};
    std::lock_guard<std::mutex> lock(mu);
    while (table.size() <= n) {
        unsigned m = static_cast<unsigned>(table.size());
        if (m % 2 == 1) {
            table.push_back(0);
            continue;
        }
        Rational acc = 0;
        for (unsigned k = 0; k < m; ++k) acc += binom_rational(m + 1, k) * table[k];
        table.push_back(-acc / Rational(m + 1));
    }
    return table[n];
}

Real zeta_int(unsigned n)
{
    if (n < 2) throw DomainError("zeta_int requires n >= 2");
    static std::mutex mu;
    static std::map<unsigned, Real> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // Borwein's eta acceleration: error < 3/(3+sqrt(8))^M / |1-2^(1-s)|
    const unsigned M = 8 + static_cast<unsigned>(digits10 * 1.4);
    std::vector<Rational> d(M + 1);
    {
        Rational t = 1; // proportional to (M+i-1)! 4^i / ((M-i)! (2i)!)
        Rational acc = 0;
        for (unsigned i = 0; i <= M; ++i) {
            if (i > 0) {
                t *= Rational(4) * Rational(M + i - 1) * Rational(M - i + 1);
                t /= Rational(2 * i) * Rational(2 * i - 1);
            }
            acc += t;
            d[i] = acc;
        }
    }
    Real sum(0);
    for (unsigned k = 0; k < M; ++k) {
        Real t = to_real(d[k] - d[M]) / pow(Real(k + 1), static_cast<int>(n));
        sum += (k % 2 == 0) ? t : -t;
    }
    Real v = -sum / (to_real(d[M]) * (Real(1) - pow(Real(2), 1 - static_cast<int>(n))));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(n, v);
    return v;
}

Real beta_seq(unsigned n)
{
    static std::mutex mu;
    static std::vector<Real> cache;
    // Bell arguments 0!*gamma, -1!*zeta(2), 2!*zeta(3), ... computed before
    // taking the cache lock (zeta/gamma have locks of their own)
    std::vector<Real> xs;
    for (unsigned j = 1; j <= n; ++j) {
        Real f(1);
        for (unsigned i = 2; i < j; ++i) f *= i;
        Real x = (j == 1) ? euler_gamma() : f * zeta_int(j);
        xs.push_back((j % 2 == 1) ? x : -x);
    }
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= n) {
        std::vector<Real> sub(xs.begin(), xs.begin() + cache.size());
        cache.push_back(bell_complete(sub));
    }
    return cache[n];
}

// ---- Stirling kernel -------------------------------------------------------

namespace {

bool is_integer_value(const Complex& z, long& out)
{
    if (z.imag() != 0) return false;
    Real r = round(z.real());
    if (r != z.real()) return false;
    if (abs(r) > Real(1000000)) return false;
    out = static_cast<long>(r);
    return true;
}

// Stirling series for log Gamma, |w| large, Re w > 0
Complex log_gamma_stirling(const Complex& w)
{
    static const Real half_log_2pi = log(Real(2) * pi()) / 2;
    Complex acc = (w - Complex(Real(1) / 2)) * log(w) - w + Complex(half_log_2pi);
    Complex w2 = w * w;
    Complex wp = w;
    for (unsigned k = 1; k <= 200; ++k) {
        Real b = to_real(bernoulli(2 * k));
        Complex term = Complex(b / (Real(2 * k) * Real(2 * k - 1))) / wp;
        acc += term;
        if (abs(term) < eps() * (Real(1) + abs(acc)) / 100) break;
        wp *= w2;
    }
    return acc;
}

const Real& raise_radius()
{
    // 2 pi |w| >= digits*ln(10) plus margin: the smallest Bernoulli term of
    // the Stirling tail then reaches eps
    static const Real r = Real(digits10) * Real(2303) / Real(1000) / (2 * pi()) + 3;
    return r;
}

} // namespace

Complex log_gamma(const Complex& z)
{
    long n;
    if (is_integer_value(z, n) && n <= 0) throw DomainError("log_gamma at a nonpositive integer");
    if (z.real() < Real(1) / 2) {
        // reflection; the imaginary part of the result is branch-adjusted only
        // through exp() downstream, which is all the library needs
        Complex s = sin(pi() * z);
        return log(Complex(pi())) - log(s) - log_gamma(Complex(1) - z);
    }
    Complex w = z;
    Complex prod(1);
    while (abs(w) < raise_radius()) {
        prod *= w;
        w += Complex(1);
    }
    // single log of the raising product; branch offsets cancel under the
    // exp() that every caller applies
    Complex shift = (prod == Complex(1)) ? Complex(0) : log(prod);
    return log_gamma_stirling(w) - shift;
}

Complex gamma_fn(const Complex& z)
{
    return exp(log_gamma(z));
}

Complex recip_gamma(const Complex& z)
{
    long n;
    if (is_integer_value(z, n)) {
        if (n <= 0) return Complex(0);
        return Complex(Real(1) / factorial_real(static_cast<unsigned>(n - 1)));
    }
    if (z.real() < Real(1) / 2) {
        // 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi, entire-safe
        return sin(pi() * z) * gamma_fn(Complex(1) - z) / pi();
    }
    return exp(-log_gamma(z));
}

Real polygamma_at_1(unsigned k)
{
    if (k == 0) return -euler_gamma();
    Real v = factorial_real(k) * zeta_int(k + 1);
    return (k % 2 == 1) ? v : -v;
}

Complex polygamma(unsigned k, const Complex& z)
{
    long n;
    if (is_integer_value(z, n) && n <= 0) throw DomainError("polygamma at a nonpositive integer");
    Complex w = z;
    Complex corr(0);
    Real kf = factorial_real(k);
    while (abs(w) < raise_radius() || w.real() < 1) {
        // psi^(k)(w) = psi^(k)(w+1) - (-1)^k k! / w^(k+1)
        Complex t = Complex(kf) / pow(w, static_cast<int>(k + 1));
        corr += (k % 2 == 0) ? -t : t;
        w += Complex(1);
    }
    Complex acc;
    if (k == 0) {
        acc = log(w) - Complex(Real(1) / 2) / w;
        Complex w2 = w * w;
        Complex wp = w2;
        for (unsigned j = 1; j <= 200; ++j) {
            Complex term = Complex(to_real(bernoulli(2 * j)) / Real(2 * j)) / wp;
            acc -= term;
            if (abs(term) < eps() * (Real(1) + abs(acc)) / 100) break;
            wp *= w2;
        }
    } else {
        // d^k of the asymptotic expansion of psi
        Real sgn = (k % 2 == 1) ? Real(1) : Real(-1);
        Complex wk = pow(w, static_cast<int>(k));
        acc = Complex(factorial_real(k - 1)) / wk + Complex(kf / 2) / (wk * w);
        Complex w2 = w * w;
        Complex wp = wk * w2;
        for (unsigned j = 1; j <= 200; ++j) {
            Real coeff = to_real(bernoulli(2 * j)) * factorial_real(2 * j + k - 1) / factorial_real(2 * j);
            Complex term = Complex(coeff) / wp;
            acc += term;
            if (abs(term) < eps() * (Real(1) + abs(acc)) / 100) break;
            wp *= w2;
        }
        acc = sgn * acc;
    }
    return acc + corr;
}

// ---- C^k tables -------------------------------------------------------------

namespace {

// table[z - zmin][k] = C^k_z for integer z, built from the seed column
// C^k_1 = beta_k by the two-sided recurrence
class CkTable {
public:
    Real get(unsigned k, long z)
    {
        std::lock_guard<std::mutex> lock(mu_);
        ensure(k, z);
        return rows_.at(z)[k];
    }

private:
    std::mutex mu_;
    unsigned kmax_ = 0;
    std::map<long, std::vector<Real>> rows_;

    void ensure(unsigned k, long z)
    {
        if (rows_.empty() || k > kmax_) {
            kmax_ = std::max(kmax_, k);
            std::map<long, std::vector<Real>> fresh;
            std::vector<Real> seed(kmax_ + 1);
            for (unsigned p = 0; p <= kmax_; ++p) seed[p] = beta_seq(p);
            long lo = rows_.empty() ? 1 : rows_.begin()->first;
            long hi = rows_.empty() ? 1 : rows_.rbegin()->first;
            rows_.clear();
            rows_.emplace(1, std::move(seed));
            extend(lo, hi);
        }
        extend(std::min(z, rows_.begin()->first), std::max(z, rows_.rbegin()->first));
    }

    void extend(long lo, long hi)
    {
        while (rows_.rbegin()->first < hi) {
            long z = rows_.rbegin()->first;
            const auto& cur = rows_.at(z);
            std::vector<Real> nxt(kmax_ + 1);
            // C^k_{z+1} = (C^k_z - k C^{k-1}_{z+1}) / z, ascending k
            for (unsigned p = 0; p <= kmax_; ++p) {
                Real v = cur[p];
                if (p > 0) v -= Real(p) * nxt[p - 1];
                nxt[p] = v / Real(z);
            }
            rows_.emplace(z + 1, std::move(nxt));
        }
        while (rows_.begin()->first > lo) {
            long z = rows_.begin()->first;
            const auto& cur = rows_.at(z);
            std::vector<Real> nxt(kmax_ + 1);
            // C^k_{z-1} = (z-1) C^k_z + k C^{k-1}_z
            for (unsigned p = 0; p <= kmax_; ++p) {
                Real v = Real(z - 1) * cur[p];
                if (p > 0) v += Real(p) * cur[p - 1];
                nxt[p] = v;
            }
            rows_.emplace(z - 1, std::move(nxt));
        }
    }
};

CkTable& ck_table()
{
    static CkTable t;
    return t;
}

} // namespace

Complex recip_gamma_deriv_int(unsigned k, long z)
{
    return Complex(ck_table().get(k, z));
}

Complex recip_gamma_deriv(unsigned k, const Complex& z)
{
    long n;
    if (is_integer_value(z, n)) return recip_gamma_deriv_int(k, n);
    if (k == 0) return recip_gamma(z);
    std::vector<Complex> xs(k);
    for (unsigned j = 0; j < k; ++j) xs[j] = -polygamma(j, z);
    return recip_gamma(z) * bell_complete(xs);
}

std::vector<Complex> recip_gamma_taylor_at(const Rational& one_plus_w, unsigned maxp)
{
    std::vector<Complex> out(maxp + 1);
    if (denominator(one_plus_w) == 1) {
        long z = static_cast<long>(numerator(one_plus_w));
        for (unsigned p = 0; p <= maxp; ++p)
            out[p] = recip_gamma_deriv_int(p, z) / Complex(factorial_real(p));
    } else {
        Complex z = Complex(to_real(one_plus_w));
        for (unsigned p = 0; p <= maxp; ++p)
            out[p] = recip_gamma_deriv(p, z) / Complex(factorial_real(p));
    }
    return out;
}

Complex gamma_deriv_at_1(unsigned p)
{
    static std::mutex mu;
    static std::vector<Real> cache;
    std::vector<Real> xs(p);
    for (unsigned j = 0; j < p; ++j) xs[j] = polygamma_at_1(j);
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= p) {
        std::vector<Real> sub(xs.begin(), xs.begin() + cache.size());
        cache.push_back(bell_complete(sub));
    }
    return Complex(cache[p]);
}

// ---- Gamma(0, z) ------------------------------------------------------------

namespace {

Complex gamma_upper0_series(const Complex& zlog)
{
    Complex z = exp(zlog);
    Complex acc = -Complex(euler_gamma()) - zlog;
    Complex term(1);
    for (unsigned j = 1; j <= 400; ++j) {
        term *= -z / Complex(static_cast<long>(j)); // (-z)^j / j!
        Complex t = -term / Complex(static_cast<long>(j));
        acc += t;
        if (abs(t) < eps() * (Real(1) + abs(acc))) break;
    }
    return acc;
}

// modified Lentz on Gamma(0,z) = e^-z / (z+1 - 1/(z+3 - 4/(z+5 - ...)))
Complex gamma_upper0_cf(const Complex& z)
{
    const Real tiny = pow(Real(10), -2 * static_cast<int>(digits10));
    Complex b = z + Complex(1);
    Complex f = b, C = b, D(0);
    for (unsigned n = 1; n <= 5000; ++n) {
        Complex a = -Complex(static_cast<long>(n)) * Complex(static_cast<long>(n));
        b = z + Complex(static_cast<long>(2 * n + 1));
        D = b + a * D;
        if (abs(D) == 0) D = Complex(tiny);
        C = b + a / C;
        if (abs(C) == 0) C = Complex(tiny);
        D = Complex(1) / D;
        Complex delta = C * D;
        f *= delta;
        if (abs(delta - Complex(1)) < eps()) break;
    }
    return exp(-z) / f;
}

// direct quadrature of int_0^inf e^-(z+t)/(z+t) dt on geometric panels
Complex gamma_upper0_quad(const Complex& z);

} // namespace

GammaUpper0Result gamma_upper0_full(const Complex& zlog)
{
    Complex z = exp(zlog);
    if (abs(z) <= 8) return {gamma_upper0_series(zlog), false};
    Complex cf = gamma_upper0_cf(z);
    Complex q = gamma_upper0_quad(z);
    bool loss = abs(cf - q) > pow(Real(10), -static_cast<int>(digits10) + 12) * (Real(1) + abs(cf));
    // winding correction onto the universal cover
    Real w = round((zlog.imag() - arg(z)) / (2 * pi()));
    Complex v = cf - Complex(Real(0), 2 * pi() * w);
    return {v, loss};
}

Complex gamma_upper0(const Complex& zlog)
{
    return gamma_upper0_full(zlog).value;
}

// ---- E(s, z) and E_k ---------------------------------------------------------

Complex e_point(const Complex& s, const Complex& zlog)
{
    Complex z = exp(zlog);
    Complex rg = recip_gamma(Complex(1) + s);
    Complex zpow = exp(s * zlog);
    Complex acc(0);
    unsigned small_streak = 0;
    for (unsigned k = 0; k <= 2000; ++k) {
        Complex term = zpow * rg;
        acc += term;
        if (abs(term) < eps() * (Real(1) + abs(acc))) {
            if (++small_streak >= 3 && Real(k) > abs(z)) break;
        } else {
            small_streak = 0;
        }
        Complex denom = Complex(1) + s + Complex(static_cast<long>(k));
        if (abs(denom) < Real(1) / 4)
            rg = recip_gamma(Complex(2) + s + Complex(static_cast<long>(k)));
        else
            rg /= denom;
        zpow *= z;
    }
    return acc;
}

EkTable ek_series(unsigned k, unsigned N)
{
    if (N < 1) throw DomainError("ek_series needs N >= 1");
    NumLogSeries s(N, k);
    for (unsigned m = 0; m <= N; ++m)
        for (unsigned t = 0; t <= k; ++t) {
            Rational b = binom_rational(k, t);
            s.at(m, t) = Complex(to_real(b)) * recip_gamma_deriv_int(k - t, static_cast<long>(m) + 1);
        }
    EkTable tab;
    tab.k = k;
    tab.series = std::move(s);
    return tab;
}

Complex ek_eval(unsigned k, const Complex& zlog)
{
    static std::mutex mu;
    static std::map<unsigned, EkTable> cache;
    const EkTable* tab;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(k);
        if (it == cache.end()) it = cache.emplace(k, ek_series(k, 4 * digits10)).first;
        tab = &it->second;
    }
    return ls_eval(tab->series, zlog);
}

// ---- T(m, z), g_m, closed-form E_j -------------------------------------------

Complex t_meijer(unsigned m, const Complex& zlog)
{
    if (m < 1) throw DomainError("t_meijer requires m >= 1");
    Complex z = exp(zlog);
    // order-m pole at t = -1: residue of (-1)^m Gamma(1-u) z^(u-1) / u^m
    Complex multipole(0);
    for (unsigned p = 0; p < m; ++p) {
        Complex t = gamma_deriv_at_1(p) * pow(zlog, static_cast<int>(m - 1 - p)) /
                    Complex(factorial_real(p) * factorial_real(m - 1 - p));
        multipole += (p % 2 == 0) ? t : -t;
    }
    Real sgn = (m % 2 == 0) ? Real(-1) : Real(1); // (-1)^(m+1)
    multipole *= sgn * exp(-zlog);
    // simple poles at t = k-1, k >= 1
    Complex series(0);
    Complex zp(1); // z^(k-1)
    bool converged = false;
    for (unsigned k = 1; k <= 400; ++k) {
        Real kf = factorial_real(k);
        Complex term = zp / Complex(kf);
        if (m > 1) term /= pow(Complex(-static_cast<long>(k)), static_cast<int>(m - 1));
        if (k % 2 == 1) term = -term;
        series += term;
        if (abs(term) < eps() * (Real(1) + abs(series)) && Real(k) > abs(z)) {
            converged = true;
            break;
        }
        zp *= z;
    }
    if (!converged) throw ConvergenceError("t_meijer residue series did not settle before the term cap");
    return multipole + series;
}

Complex g_m(unsigned m, const Complex& zlog)
{
    Complex acc = pow(zlog, static_cast<int>(m)) * gamma_upper0(zlog);
    if (m == 0) return acc;
    Complex z = exp(zlog);
    Complex sum(0);
    for (unsigned i = 0; i < m; ++i) {
        Real f = factorial_real(m - 1) / factorial_real(m - i - 1);
        sum += Complex(f) * pow(zlog, static_cast<int>(m - i - 1)) * t_meijer(3 + i, zlog);
    }
    return acc + Complex(static_cast<long>(m)) * z * sum;
}

Complex ek_closed_form(unsigned j, const Complex& zlog)
{
    Complex z = exp(zlog);
    if (j == 0) return exp(z);
    Complex sum(0);
    for (unsigned n = 0; n < j; ++n) {
        sum += Complex(beta_seq(n) / (factorial_real(n) * factorial_real(j - n - 1))) *
               g_m(j - n - 1, zlog);
    }
    return exp(z) * (-Complex(factorial_real(j)) * sum);
}

namespace {

// 16-point Gauss-Legendre nodes on [0,1] would do, but the shifted 20-point
// rule keeps the quadrature fallback comfortably inside the cross-check
// tolerance. Nodes generated by Newton iteration on demand.
struct GL {
    std::vector<Real> x, w; // on [-1, 1]
    explicit GL(unsigned n)
    {
        x.resize(n);
        w.resize(n);
        for (unsigned i = 0; i < n; ++i) {
            // initial guess: Chebyshev
            Real t = cos(pi() * (Real(i) + Real(3) / 4) / (Real(n) + Real(1) / 2));
            for (int it = 0; it < 100; ++it) {
                // Legendre P_n and P_n' by recurrence
                Real p0(1), p1 = t;
                for (unsigned k = 2; k <= n; ++k) {
                    Real p2 = ((2 * Real(k) - 1) * t * p1 - (Real(k) - 1) * p0) / Real(k);
                    p0 = p1;
                    p1 = p2;
                }
                Real dp = Real(n) * (t * p1 - p0) / (t * t - 1);
                Real dt = p1 / dp;
                t -= dt;
                if (abs(dt) < eps() / 100) break;
            }
            Real p0(1), p1 = t;
            for (unsigned k = 2; k <= n; ++k) {
                Real p2 = ((2 * Real(k) - 1) * t * p1 - (Real(k) - 1) * p0) / Real(k);
                p0 = p1;
                p1 = p2;
            }
            Real dp = Real(n) * (t * p1 - p0) / (t * t - 1);
            x[i] = t;
            w[i] = 2 / ((1 - t * t) * dp * dp);
        }
    }
};

Complex gamma_upper0_quad(const Complex& z)
{
    static const GL gl(32);
    // int_0^T e^-(z+t)/(z+t) dt with geometric panels, T past the precision horizon
    Real T = Real(static_cast<int>(digits10) * 3 + 20);
    std::vector<Real> edges{Real(0), Real(1)};
    while (edges.back() < T) edges.push_back(edges.back() * 2);
    edges.back() = T;
    Complex acc(0);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        Real a = edges[p], b = edges[p + 1];
        Real c = (a + b) / 2, h = (b - a) / 2;
        Complex panel(0);
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            Real t = c + h * gl.x[i];
            Complex u = z + Complex(t);
            panel += Complex(gl.w[i]) * exp(-u) / u;
        }
        acc += Complex(h) * panel;
    }
    return acc;
}

} // namespace

} // namespace qbl::specfun
