#include "qbl/qde.hpp"

#include <sstream>

#include "qbl/cohalg.hpp"
#include "qbl/specfun.hpp"

namespace qbl::qde {

namespace {

RatFun rf(long v) { return RatFun(v); }
RatFun rf(const Rational& v) { return RatFun(GaussRat(v)); }

Rational factorial_rat(unsigned n)
{
    Rational f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

QdeData qde_blowup_data(const Rational& q1, const Rational& q2)
{
    QdeData d;
    d.model = "blowup-p2";
    d.q = {q1, q2};
    d.complex_dim = 2;
    d.U = RatFunMatrix(4, 4);
    d.U.at(0, 0) = rf(0);
    d.U.at(0, 1) = rf(2 * q1);
    d.U.at(0, 2) = rf(0);
    d.U.at(0, 3) = rf(3 * q1 * q1 * q2);
    d.U.at(1, 0) = rf(2);
    d.U.at(1, 1) = rf(q1 * q2);
    d.U.at(1, 2) = rf(q1 * q2);
    d.U.at(1, 3) = rf(0);
    d.U.at(2, 0) = rf(-1);
    d.U.at(2, 1) = rf(-2 * q1 * q2);
    d.U.at(2, 2) = rf(-2 * q1 * q2);
    d.U.at(2, 3) = rf(2 * q1);
    d.U.at(3, 0) = rf(0);
    d.U.at(3, 1) = rf(5);
    d.U.at(3, 2) = rf(2);
    d.U.at(3, 3) = rf(0);
    d.mu = RatFunMatrix(4, 4);
    d.mu.at(0, 0) = rf(-1);
    d.mu.at(3, 3) = rf(1);
    return d;
}

QdeData qde_p1_data()
{
    QdeData d;
    d.model = "p1";
    d.complex_dim = 1;
    d.U = RatFunMatrix(2, 2);
    d.U.at(0, 1) = rf(2);
    d.U.at(1, 0) = rf(2);
    d.mu = RatFunMatrix(2, 2);
    d.mu.at(0, 0) = rf(Rational(-1, 2));
    d.mu.at(1, 1) = rf(Rational(1, 2));
    return d;
}

CyclicFrame cyclic_frame(const QdeData& d)
{
    std::size_t n = d.rank();
    RatFun invz(Poly::one(), Poly::monomial(GaussRat(1), 1));
    // A(z) = U - mu/z, the z-part of the extended deformed connection
    RatFunMatrix A = d.U - (invz * d.mu);

    CyclicFrame f;
    f.E = RatFunMatrix(n, n);
    std::vector<RatFun> e(n);
    e[0] = RatFun(1); // unit field coordinates
    for (std::size_t i = 0; i < n; ++i) f.E.at(i, 0) = e[i];
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<RatFun> nx(n);
        for (std::size_t i = 0; i < n; ++i) {
            RatFun acc = e[i].derivative();
            for (std::size_t j = 0; j < n; ++j) acc = acc + A.at(i, j) * e[j];
            nx[i] = acc;
        }
        e = std::move(nx);
        for (std::size_t i = 0; i < n; ++i) f.E.at(i, k) = e[i];
    }
    try {
        f.Lambda = ratfun_mat_inverse(f.E);
    } catch (const SingularMatrix&) {
        throw SingularMatrix("cyclic frame is degenerate at this point");
    }
    f.det_lambda = ratfun_det(f.Lambda);
    return f;
}

namespace {

bool is_unit_row_pattern(const RatFunMatrix& C, std::size_t j)
{
    for (std::size_t k = 0; k < C.cols(); ++k) {
        const RatFun& v = C.at(j, k);
        if (k == j + 1) {
            if (!(v == rf(1))) return false;
        } else if (!v.is_zero()) {
            return false;
        }
    }
    return true;
}

bool is_unit_col_pattern(const RatFunMatrix& C, std::size_t j)
{
    for (std::size_t k = 0; k < C.rows(); ++k) {
        const RatFun& v = C.at(k, j);
        if (k == j + 1) {
            if (!(v == rf(1))) return false;
        } else if (!v.is_zero()) {
            return false;
        }
    }
    return true;
}

std::string dump_matrix(const RatFunMatrix& C)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < C.rows(); ++i) {
        os << "  [";
        for (std::size_t j = 0; j < C.cols(); ++j) {
            if (j) os << ",  ";
            os << C.at(i, j).to_string();
        }
        os << "]\n";
    }
    return os.str();
}

// theta-coefficients of theta(theta-1)...(theta-j+1)
std::vector<Rational> falling_factorial_coeffs(unsigned j)
{
    std::vector<Rational> f{1};
    for (unsigned i = 0; i < j; ++i) {
        std::vector<Rational> g(f.size() + 1, 0);
        for (std::size_t t = 0; t < f.size(); ++t) {
            g[t + 1] += f[t];
            g[t] -= Rational(i) * f[t];
        }
        f = std::move(g);
    }
    return f;
}

Rational binom_rat(unsigned n, unsigned k)
{
    Rational r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
    return r;
}

} // namespace

MasterODE derive_master_ode(const QdeData& d)
{
    std::size_t n = d.rank();
    CyclicFrame f = cyclic_frame(d);
    RatFun invz(Poly::one(), Poly::monomial(GaussRat(1), 1));

    // companion matrix of (qde.3), built from the spec formula
    RatFunMatrix Et = f.E.transpose(); // (Lambda^-1)^T
    RatFunMatrix Lt = f.Lambda.transpose();
    RatFunMatrix C = Et * d.U.transpose() * Lt - invz * (Et * d.mu * Lt) + Et.derivative() * Lt;

    std::string convention;
    std::vector<RatFun> cj(n);
    bool rows_ok = true, cols_ok = true;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (!is_unit_row_pattern(C, j)) rows_ok = false;
        if (!is_unit_col_pattern(C, j)) cols_ok = false;
    }
    if (rows_ok) {
        convention = "unit superdiagonal by rows; coefficients in the last row";
        for (std::size_t j = 0; j < n; ++j) cj[j] = C.at(n - 1, j);
    } else if (cols_ok) {
        convention = "unit superdiagonal by columns; coefficients in the last column";
        for (std::size_t j = 0; j < n; ++j) cj[j] = C.at(j, n - 1);
    } else {
        throw NotCompanion("companion-shape validation failed; computed matrix:\n" + dump_matrix(C));
    }

    // scalar equation  w^(n) = sum_j c_j(z) w^(j)  for w = varpi_0, as a
    // theta-polynomial with rational-function coefficients via
    // D^j = z^-j theta(theta-1)...(theta-j+1)
    std::vector<RatFun> a(n + 1);
    a[n] = rf(1);
    for (std::size_t j = 0; j < n; ++j) a[j] = -cj[j];

    std::vector<RatFun> theta_op(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        if (a[j].is_zero()) continue;
        RatFun zj(Poly::one(), Poly::monomial(GaussRat(1), j));
        auto ff = falling_factorial_coeffs(static_cast<unsigned>(j));
        RatFun pref = a[j] * zj;
        for (std::size_t i = 0; i < ff.size(); ++i) {
            if (ff[i] == 0) continue;
            theta_op[i] = theta_op[i] + rf(ff[i]) * pref;
        }
    }

    // master-function normalization w = z^(dim/2) Phi: conjugation sends
    // theta -> theta + dim/2 and leaves the coefficients alone
    Rational m(d.complex_dim, 2);
    std::vector<RatFun> shifted(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        if (theta_op[i].is_zero()) continue;
        Rational mp = 1; // m^(i-t)
        for (std::size_t t = i + 1; t-- > 0;) {
            Rational w = binom_rat(static_cast<unsigned>(i), static_cast<unsigned>(t)) * mp;
            shifted[t] = shifted[t] + rf(w) * theta_op[i];
            mp *= m;
        }
    }

    // clear denominators to polynomial coefficients
    Poly den = Poly::one();
    for (const auto& r : shifted) den = poly_lcm(den, r.den());
    std::vector<Poly> polys(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        polys[i] = shifted[i].num() * poly_exact_div(den, shifted[i].den());

    MasterODE ode{ThetaOperator(std::move(polys)), Poly(), OdeProvenance::derived, convention};
    const Poly& lead = ode.op.coeffs().back();
    std::size_t val = lead.valuation();
    std::vector<GaussRat> ap(lead.coeffs().begin() + static_cast<long>(val), lead.coeffs().end());
    ode.apparent_singularities = Poly(std::move(ap));
    return ode;
}

MasterODE printed_blowup_ode()
{
    auto P = [](std::initializer_list<long> cs) {
        std::vector<GaussRat> v;
        for (long c : cs) v.emplace_back(c);
        return Poly(std::move(v));
    };
    std::vector<Poly> p(5);
    p[4] = P({-24, 283});
    p[3] = P({24, -590, 283});
    p[2] = P({3, 192, -2264});
    p[1] = P({0, 0, 416, -1400, -10188});
    p[0] = P({0, 0, 192, 1476, -9924, -3113});
    MasterODE ode{ThetaOperator(std::move(p)), Poly(), OdeProvenance::printed,
                  "printed form, not rederived"};
    const Poly& lead = ode.op.coeffs().back();
    std::size_t val = lead.valuation();
    std::vector<GaussRat> ap(lead.coeffs().begin() + static_cast<long>(val), lead.coeffs().end());
    ode.apparent_singularities = Poly(std::move(ap));
    return ode;
}

OdeComparison compare_master_odes(const MasterODE& a, const MasterODE& b)
{
    OdeComparison cmp;
    cmp.lhs = a.op.coeffs();
    cmp.rhs = b.op.coeffs();
    std::size_t n = std::max(cmp.lhs.size(), cmp.rhs.size());
    cmp.lhs.resize(n);
    cmp.rhs.resize(n);
    cmp.difference.resize(n);
    cmp.equal = true;
    for (std::size_t i = 0; i < n; ++i) {
        cmp.difference[i] = cmp.lhs[i] - cmp.rhs[i];
        if (!cmp.difference[i].is_zero()) cmp.equal = false;
    }
    return cmp;
}

ExactLogSeries p1_basis(const GaussRat& a0, const GaussRat& b0, unsigned N)
{
    if (N < 1) throw DomainError("p1_basis needs N >= 1");
    bool with_log = !b0.is_zero();
    ExactLogSeries s(2 * N + 1, with_log ? 1 : 0);
    Rational hk = 0, kfact2 = 1;
    for (unsigned k = 0; k <= N; ++k) {
        if (k > 0) {
            hk += Rational(1, k);
            kfact2 *= Rational(k) * Rational(k);
        }
        GaussRat ak = a0 - b0 * GaussRat(hk);
        GaussRat inv(Rational(1) / kfact2);
        s.at(2 * k, 0) = ak * inv;
        if (with_log) s.at(2 * k, 1) = b0 * inv;
    }
    return s;
}

// ---- Borel basis of the blow-up master equation ------------------------------

namespace {

Complex ck_int(unsigned p, long w) { return specfun::recip_gamma_deriv_int(p, w); }

// sum_{k,h} [(a_k + (b_k/2) log z) C^p_{1+h-k} - (b_k/2) C^{p+1}_{1+h-k}] z^(k+2h) / ((k!)^2 h!)
NumLogSeries double_sum(long a0, long b0, unsigned p, unsigned N)
{
    NumLogSeries s(N, 1);
    Rational hk = 0, kf2 = 1;
    for (unsigned k = 0; k <= N; ++k) {
        if (k > 0) {
            hk += Rational(1, k);
            kf2 *= Rational(k) * Rational(k);
        }
        Rational ak = Rational(a0) - Rational(b0) * hk;
        Rational bk2 = Rational(b0, 2);
        Rational hf = 1;
        for (unsigned h = 0; k + 2 * h <= N; ++h) {
            if (h > 0) hf *= h;
            long w = 1 + static_cast<long>(h) - static_cast<long>(k);
            Complex cp = ck_int(p, w), cp1 = ck_int(p + 1, w);
            Complex f(to_real(Rational(1) / (kf2 * hf)));
            s.at(k + 2 * h, 0) += (Complex(to_real(ak)) * cp - Complex(to_real(bk2)) * cp1) * f;
            s.at(k + 2 * h, 1) += Complex(to_real(bk2)) * cp * f;
        }
    }
    return s;
}

// same with the extra sum over j >= 1: sign (-1)^j, weight 1/(j j!), shifted
// C arguments 1 + j + h - k and z-order k + 2(j+h)
NumLogSeries triple_sum_log(long a0, long b0, unsigned p, unsigned N)
{
    NumLogSeries s(N, 1);
    Rational hk = 0, kf2 = 1;
    for (unsigned k = 0; k <= N; ++k) {
        if (k > 0) {
            hk += Rational(1, k);
            kf2 *= Rational(k) * Rational(k);
        }
        Rational ak = Rational(a0) - Rational(b0) * hk;
        Rational bk2 = Rational(b0, 2);
        Rational jf = 1;
        for (unsigned j = 1; k + 2 * j <= N; ++j) {
            jf *= j;
            Rational hf = 1;
            for (unsigned h = 0; k + 2 * (j + h) <= N; ++h) {
                if (h > 0) hf *= h;
                long w = 1 + static_cast<long>(j + h) - static_cast<long>(k);
                Complex cp = ck_int(p, w), cp1 = ck_int(p + 1, w);
                Rational base = Rational(1) / (Rational(j) * jf * hf * kf2);
                if (j % 2 == 1) base = -base;
                Complex f(to_real(base));
                s.at(k + 2 * (j + h), 0) += (Complex(to_real(ak)) * cp - Complex(to_real(bk2)) * cp1) * f;
                s.at(k + 2 * (j + h), 1) += Complex(to_real(bk2)) * cp * f;
            }
        }
    }
    return s;
}

// dilogarithm-type tail: sign (-1)^(1+l), weight 1/(l^2 l!), C^0/C^1
NumLogSeries triple_sum_dilog(long a0, long b0, unsigned N)
{
    NumLogSeries s(N, 1);
    Rational hk = 0, kf2 = 1;
    for (unsigned k = 0; k <= N; ++k) {
        if (k > 0) {
            hk += Rational(1, k);
            kf2 *= Rational(k) * Rational(k);
        }
        Rational ak = Rational(a0) - Rational(b0) * hk;
        Rational bk2 = Rational(b0, 2);
        Rational lf = 1;
        for (unsigned l = 1; k + 2 * l <= N; ++l) {
            lf *= l;
            Rational hf = 1;
            for (unsigned h = 0; k + 2 * (l + h) <= N; ++h) {
                if (h > 0) hf *= h;
                long w = 1 + static_cast<long>(l + h) - static_cast<long>(k);
                Complex c0 = ck_int(0, w), c1 = ck_int(1, w);
                Rational base = Rational(1) / (Rational(l) * Rational(l) * lf * hf * kf2);
                if (l % 2 == 0) base = -base;
                Complex f(to_real(base));
                s.at(k + 2 * (l + h), 0) += (Complex(to_real(ak)) * c0 - Complex(to_real(bk2)) * c1) * f;
                s.at(k + 2 * (l + h), 1) += Complex(to_real(bk2)) * c0 * f;
            }
        }
    }
    return s;
}

NumLogSeries const_log_series(const Complex& c0, const Complex& c1, const Complex& c2, unsigned N,
                              unsigned J)
{
    NumLogSeries s(N, J);
    s.at(0, 0) = c0;
    if (J >= 1) s.at(0, 1) = c1;
    if (J >= 2) s.at(0, 2) = c2;
    return s;
}

// drop trailing all-zero log columns
template <class K>
LogSeriesT<K> ls_trimmed(const LogSeriesT<K>& s)
{
    unsigned jused = 0;
    for (unsigned m = 0; m <= s.N; ++m)
        for (unsigned j = 0; j <= s.J; ++j)
            if (!detail::series_coeff_zero(s.at(m, j))) jused = std::max(jused, j);
    if (jused == s.J) return s;
    LogSeriesT<K> r(s.N, jused);
    r.sigma = s.sigma;
    r.ord_valid = s.ord_valid;
    for (unsigned m = 0; m <= s.N; ++m)
        for (unsigned j = 0; j <= jused; ++j) r.at(m, j) = s.at(m, j);
    return r;
}

ExactLogSeries exact_b_u1_e0(unsigned N)
{
    ExactLogSeries s(N, 0);
    Rational kf2 = 1;
    for (unsigned k = 0; k <= N; ++k) {
        if (k > 0) kf2 *= Rational(k) * Rational(k);
        Rational hf = 1;
        for (unsigned h = 0; k + 2 * h <= N; ++h) {
            if (h > 0) hf *= h;
            if (h < k) continue; // C^0_{1+h-k} vanishes at nonpositive arguments
            Rational c = Rational(1) / (kf2 * hf * factorial_rat(h - k));
            s.at(k + 2 * h, 0) += GaussRat(c);
        }
    }
    return s;
}

} // namespace

MasterBasis blowup_borel_basis(unsigned N)
{
    if (N < 4) throw DomainError("blowup_borel_basis needs N >= 4");
    const Real g = specfun::euler_gamma();
    const Real pi2_6 = specfun::zeta_int(2);

    MasterBasis basis;
    basis.kind = "blowup-borel";
    basis.labels = {"B[ups1,E0]", "B[ups2,E0]", "B[ups1,E1]", "4*B[ups2,E1]+B[ups1,E2]"};

    NumLogSeries s0_u1 = double_sum(1, 0, 0, N);
    NumLogSeries s0_u2 = double_sum(0, 1, 0, N);

    // B[U1, E0], B[U2, E0]
    basis.members.push_back(ls_trimmed(s0_u1));
    basis.members.push_back(ls_trimmed(s0_u2));

    auto lin = [&](const Complex& c0, const Complex& c1) {
        return const_log_series(c0, c1, Complex(0), N, 1);
    };

    // B[U, E1] = (g + 2 log z) S0 + S1 + T0
    auto b_e1 = [&](long a0, long b0, const NumLogSeries& s0) {
        NumLogSeries r = ls_mul(lin(Complex(g), Complex(2)), s0);
        r = ls_add(r, double_sum(a0, b0, 1, N));
        r = ls_add(r, triple_sum_log(a0, b0, 0, N));
        return r;
    };
    NumLogSeries b_u1_e1 = b_e1(1, 0, s0_u1);
    NumLogSeries b_u2_e1 = b_e1(0, 1, s0_u2);
    basis.members.push_back(ls_trimmed(b_u1_e1));

    // B[U1, E2] = (g^2 - pi^2/6 + 4g log z + 4 log^2 z) S0 + (2g + 4 log z) S1
    //             + S2 + (2g + 4 log z) T0 + 2 T1 + 2 Tdilog
    NumLogSeries quad = const_log_series(Complex(g * g - pi2_6), Complex(4 * g), Complex(4), N, 2);
    NumLogSeries b_u1_e2 = ls_mul(quad, s0_u1);
    NumLogSeries lin2 = lin(Complex(2 * g), Complex(4));
    b_u1_e2 = ls_add(b_u1_e2, ls_mul(lin2, double_sum(1, 0, 1, N)));
    b_u1_e2 = ls_add(b_u1_e2, double_sum(1, 0, 2, N));
    b_u1_e2 = ls_add(b_u1_e2, ls_mul(lin2, triple_sum_log(1, 0, 0, N)));
    b_u1_e2 = ls_add(b_u1_e2, ls_scale(Complex(2), triple_sum_log(1, 0, 1, N)));
    b_u1_e2 = ls_add(b_u1_e2, ls_scale(Complex(2), triple_sum_dilog(1, 0, N)));

    basis.members.push_back(ls_trimmed(ls_add(ls_scale(Complex(4), b_u2_e1), b_u1_e2)));

    basis.exact_members.emplace(0, exact_b_u1_e0(N));
    return basis;
}

ResidualReport<GaussRat> verify_solution(const MasterODE& ode, const ExactLogSeries& s)
{
    ResidualReport<GaussRat> rep;
    rep.residual = op_apply(ode.op, s);
    rep.trusted_order = rep.residual.ord_valid;
    rep.pass = rep.residual.is_zero();
    Real mx(0);
    for (const auto& c : rep.residual.c) mx = std::max(mx, abs(to_complex(c)));
    rep.max_magnitude = mx;
    return rep;
}

ResidualReport<Complex> verify_solution(const MasterODE& ode, const NumLogSeries& s, const Real& tol)
{
    ResidualReport<Complex> rep;
    rep.residual = op_apply(ode.op, s);
    rep.trusted_order = rep.residual.ord_valid;
    Real mx(0);
    for (const auto& c : rep.residual.c) mx = std::max(mx, abs(c));
    rep.max_magnitude = mx;
    rep.pass = mx <= tol;
    return rep;
}

std::vector<ExactLogSeries> i_function_blowup(unsigned N)
{
    if (N < 1) throw DomainError("i_function_blowup needs N >= 1");
    AlgebraPtr alg = alg_blowup_p2();
    AlgElement one = AlgElement::unit(alg);
    AlgElement xi = AlgElement::basis(alg, blowup_xi_index);
    AlgElement rho = AlgElement::basis(alg, blowup_rho_index);
    AlgElement c1 = rho + GaussRat(2) * xi; // z^(c1) carries the log z powers

    std::vector<ExactLogSeries> out(alg->dim(), ExactLogSeries(N, 2));

    for (unsigned d = 0; d <= N; ++d) {
        Rational hd = 0, df2 = 1;
        for (unsigned i = 1; i <= d; ++i) {
            hd += Rational(1, i);
            df2 *= Rational(i) * Rational(i);
        }
        AlgElement jd = GaussRat(Rational(1) / df2) * (one - GaussRat(2 * hd) * rho);
        for (unsigned nu = 0; d + 2 * nu <= N; ++nu) {
            // 1 / prod_{m=1}^nu (xi + m)
            AlgElement denom1 = one;
            for (unsigned m = 1; m <= nu; ++m) denom1 = denom1 * (xi + GaussRat(long(m)) * one);
            AlgElement t1 = nilpotent_unit_inverse(denom1);
            // Gamma-ratio telescoping for the O(-1)-factor, truncated product
            // branch when nu < d
            long W = static_cast<long>(nu) - static_cast<long>(d);
            AlgElement t2 = one;
            if (W >= 0) {
                AlgElement denom2 = one;
                for (long m = 1; m <= W; ++m)
                    denom2 = denom2 * (xi - rho + GaussRat(m) * one);
                t2 = nilpotent_unit_inverse(denom2);
            } else {
                for (long m = W + 1; m <= 0; ++m) t2 = t2 * (xi - rho + GaussRat(m) * one);
            }
            AlgElement coeff = jd * t1 * t2;
            unsigned order = d + 2 * nu;
            // z^(d+2nu) exp(c1 log z) coeff
            AlgElement term = coeff;
            Rational jfact = 1;
            for (unsigned j = 0; j <= 2; ++j) {
                if (j > 0) {
                    term = term * c1;
                    jfact *= j;
                    if (term.is_zero()) break;
                }
                GaussRat inv_jf{Rational(1) / jfact};
                for (std::size_t b = 0; b < alg->dim(); ++b)
                    out[b].at(order, j) += inv_jf * term[b];
            }
        }
    }
    return out;
}

Complex mb_master_pn(unsigned n, unsigned j, const Complex& zlog, const Real& tol,
                     const contour::ParabolicContour& pc)
{
    if (n < 1) throw DimensionError("mb_master_pn needs n >= 1");
    if (j >= n) throw DimensionError("mb_master_pn needs 0 <= j <= n-1");
    Real phase_mult = (n % 2 == 0) ? Real(2 * j) : Real(2 * j + 1);
    Complex iphase = Complex(Real(0), specfun::pi() * phase_mult);
    Complex nn(static_cast<long>(n));
    auto f = [&](const Complex& s) {
        return exp(nn * specfun::log_gamma(s) - nn * s * zlog + iphase * s);
    };
    return contour::mellin_barnes_integral(f, pc, tol);
}

namespace {

// Hankel-grid evaluation of w -> (1/2 pi i) oint E_k(z^2/lambda) e^l l^(-1-w) dl
// for several kernel orders k over one shared node set. The grid is built on
// log-uniform ray panels and angle-uniform circle panels so that
// exp(-w log lambda) factorizes into 2 x 32 per-w offset exponentials times
// iterated panel steps; each extra outer node then costs multiplications, not
// exponentials.
struct InnerGrid {
    std::vector<unsigned> ks;
    // node sections in evaluation order: incoming ray, circle, outgoing ray
    unsigned rpanels = 0, cpanels = 0;
    Real phi{0};                  // ray angle pi - eps
    Real u0{0}, du{0};            // ray log-radius panel starts
    std::vector<Real> uoff;       // GL offsets inside a ray panel (length 32)
    Real th0{0}, dth{0};          // circle angle panels
    std::vector<Real> thoff;
    std::vector<std::vector<Complex>> coeff; // [k-slot][node], weights folded in

    std::size_t nodes() const { return (2 * rpanels + cpanels) * uoff.size(); }

    std::vector<Complex> eval_all(const Complex& w) const
    {
        std::size_t g = uoff.size();
        std::vector<Complex> acc(ks.size(), Complex(0));
        std::vector<Complex> bray(g), bcirc(g);
        for (std::size_t j = 0; j < g; ++j) {
            bray[j] = exp(-w * uoff[j]);
            bcirc[j] = exp(-w * Complex(Real(0), thoff[j]));
        }
        Complex step_r = exp(-w * du);
        Complex step_c = exp(-w * Complex(Real(0), dth));
        Complex phase_in = exp(Complex(Real(0), phi) * w);   // lambda = e^(u - i phi)
        Complex phase_out = exp(Complex(Real(0), -phi) * w); // lambda = e^(u + i phi)
        Complex base_u = exp(-w * u0);

        std::size_t idx = 0;
        auto sweep = [&](const Complex& phase, const std::vector<Complex>& off, unsigned npan,
                         const Complex& step, Complex start) {
            Complex a = phase * start;
            for (unsigned p = 0; p < npan; ++p) {
                for (std::size_t j = 0; j < g; ++j) {
                    Complex f = a * off[j];
                    for (std::size_t t = 0; t < ks.size(); ++t) acc[t] += coeff[t][idx] * f;
                    ++idx;
                }
                a *= step;
            }
        };
        sweep(phase_in, bray, rpanels, step_r, base_u);
        sweep(exp(-w * Complex(Real(0), th0)), bcirc, cpanels, step_c, Complex(1));
        sweep(phase_out, bray, rpanels, step_r, base_u);
        return acc;
    }

    Complex eval_one(std::size_t slot, const Complex& w) const { return eval_all(w)[slot]; }
};

InnerGrid make_inner_grid(const std::vector<unsigned>& ks, const Complex& zlog,
                          const contour::HankelContour& hc, unsigned level)
{
    Real e = hc.effective_eps();
    Real R = hc.effective_R();
    unsigned np = hc.panels << level;

    InnerGrid g;
    g.ks = ks;
    g.rpanels = np;
    g.cpanels = np;
    g.phi = specfun::pi() - e;
    g.u0 = log(hc.r);
    g.du = (log(R) - log(hc.r)) / np;
    g.th0 = -g.phi;
    g.dth = 2 * g.phi / np;

    const contour::GaussRule& gl = contour::gauss_rule();
    const unsigned NG = static_cast<unsigned>(gl.x.size());
    // GL nodes mapped to [0, du] and [0, dth]; half-length factor folded into
    // the weights
    std::vector<Real> glx(NG), glw(NG);
    for (unsigned j = 0; j < NG; ++j) {
        glx[j] = (gl.x[j] + 1) / 2;
        glw[j] = gl.w[j] / 2;
    }
    g.uoff.resize(NG);
    g.thoff.resize(NG);
    for (unsigned j = 0; j < NG; ++j) {
        g.uoff[j] = glx[j] * g.du;
        g.thoff[j] = glx[j] * g.dth;
    }

    g.coeff.assign(ks.size(), {});
    const Complex two_pi_i = Complex(Real(0), 2 * specfun::pi());
    Complex zl2 = Complex(2) * zlog;
    auto push_node = [&](const Complex& lam, const Complex& dlam_weight) {
        Complex base = dlam_weight * exp(lam) / (lam * two_pi_i);
        Complex ll = log(lam);
        for (std::size_t t = 0; t < ks.size(); ++t)
            g.coeff[t].push_back(base * specfun::ek_eval(ks[t], zl2 - ll));
    };
    // incoming ray, u descending from log R to log r: lambda = exp(u - i phi),
    // dlambda = lambda du, orientation gives the minus sign
    Complex dir_in = exp(Complex(Real(0), -g.phi));
    Complex dir_out = exp(Complex(Real(0), g.phi));
    for (unsigned p = 0; p < np; ++p)
        for (unsigned j = 0; j < NG; ++j) {
            Real u = g.u0 + p * g.du + g.uoff[j];
            Complex lam = exp(Complex(u)) * dir_in;
            push_node(lam, Complex(-glw[j] * g.du) * lam);
        }
    for (unsigned p = 0; p < np; ++p)
        for (unsigned j = 0; j < NG; ++j) {
            Real th = g.th0 + p * g.dth + g.thoff[j];
            Complex lam = Complex(hc.r) * exp(Complex(Real(0), th));
            push_node(lam, Complex(Real(0), glw[j] * g.dth) * lam);
        }
    for (unsigned p = 0; p < np; ++p)
        for (unsigned j = 0; j < NG; ++j) {
            Real u = g.u0 + p * g.du + g.uoff[j];
            Complex lam = exp(Complex(u)) * dir_out;
            push_node(lam, Complex(glw[j] * g.du) * lam);
        }
    return g;
}

InnerGrid calibrated_inner_grid(const std::vector<unsigned>& ks, const Complex& zlog,
                                const contour::HankelContour& hc0, const Real& tol_inner)
{
    // tolerance-matched ray truncation: the kernel grid does not need the
    // generic 1e-22 default; the outer Gamma-factors crush the far-tail
    // contributions of strongly negative Re w
    contour::HankelContour hc = hc0;
    if (hc.R <= 0) hc.R = (-log(tol_inner) + log(Real(100000))) / cos(hc.effective_eps());
    unsigned level = 0;
    InnerGrid g = make_inner_grid(ks, zlog, hc, level);
    for (; level < 5; ++level) {
        InnerGrid finer = make_inner_grid(ks, zlog, hc, level + 1);
        Real diff(0);
        for (const Complex& w : {Complex(Real(1) / 2), Complex(Real(-3), Real(3))})
            for (std::size_t t = 0; t < ks.size(); ++t)
                diff = std::max(diff, abs(g.eval_one(t, w) - finer.eval_one(t, w)));
        g = std::move(finer);
        if (diff <= tol_inner) break;
    }
    return g;
}

void check_h_args(const std::vector<unsigned>& n_list, const std::vector<unsigned>& d_list,
                  const std::vector<unsigned>& j_list, unsigned k)
{
    std::size_t h = n_list.size();
    if (h < 1 || h > 2 || d_list.size() != h || j_list.size() != h)
        throw DimensionError("thm_mt22_H supports h in {1,2} with matching n, d, j lists");
    unsigned nsum = 0;
    for (std::size_t i = 0; i < h; ++i) {
        if (d_list[i] == 0 || d_list[i] >= n_list[i])
            throw DimensionError("thm_mt22_H needs 0 < d_i < n_i");
        if (j_list[i] >= n_list[i]) throw DimensionError("thm_mt22_H needs 0 <= j_i <= n_i - 1");
        nsum += n_list[i];
    }
    if (1 + static_cast<long>(nsum) - static_cast<long>(h) < static_cast<long>(k))
        throw DimensionError("thm_mt22_H kernel order k out of range");
}

} // namespace

std::vector<Complex> thm_mt22_H_batch(unsigned n,
                                      unsigned d,
                                      const std::vector<HItem>& items,
                                      const Complex& zlog,
                                      const Real& tol,
                                      const contour::ParabolicContour& pc,
                                      const contour::HankelContour& hc)
{
    if (items.empty()) return {};
    std::vector<unsigned> ks;
    for (const auto& it : items) {
        check_h_args({n}, {d}, {it.j}, it.k);
        if (std::find(ks.begin(), ks.end(), it.k) == ks.end()) ks.push_back(it.k);
    }
    InnerGrid grid = calibrated_inner_grid(ks, zlog, hc, tol / 20);

    Complex nn(static_cast<long>(n)), dn(static_cast<long>(d));
    std::vector<Complex> iphase(items.size());
    std::vector<std::size_t> kslot(items.size());
    for (std::size_t t = 0; t < items.size(); ++t) {
        Real mult = (n % 2 == 0) ? Real(2 * items[t].j) : Real(2 * items[t].j + 1);
        iphase[t] = Complex(Real(0), specfun::pi() * mult);
        kslot[t] = static_cast<std::size_t>(
            std::find(ks.begin(), ks.end(), items[t].k) - ks.begin());
    }

    contour::ParabolicContour c = pc;
    bool auto_T = c.T <= 0;
    if (auto_T) c.T = 8;
    // endpoint tail guard, grown jointly over the items
    for (unsigned grow = 0;; ++grow) {
        Complex sp(-c.rho1 * c.T * c.T + c.rho2, c.T);
        Complex sm(-c.rho1 * c.T * c.T + c.rho2, -c.T);
        Real speed = sqrt(1 + 4 * c.rho1 * c.rho1 * c.T * c.T);
        Real mag(0);
        for (const Complex& s : {sp, sm}) {
            auto inner = grid.eval_all(dn * s);
            Complex lg = nn * specfun::log_gamma(s) + (dn - nn) * s * zlog;
            for (std::size_t t = 0; t < items.size(); ++t)
                mag = std::max(mag, abs(exp(lg + iphase[t] * s) * inner[kslot[t]]) * speed);
        }
        if (mag <= tol) break;
        if (!auto_T || grow >= 8) throw TailTooFat("parabola endpoint integrand exceeds tolerance at T");
        c.T = c.T * 3 / 2;
        c.panels = c.panels + c.panels / 2;
    }

    const Complex two_pi_i = Complex(Real(0), 2 * specfun::pi());
    auto level_sum = [&](unsigned level) {
        auto nodes = contour::parabola_nodes(c, level);
        std::vector<Complex> acc(items.size(), Complex(0));
        for (const auto& nd : nodes) {
            const Complex& s = nd.lambda;
            auto inner = grid.eval_all(dn * s);
            Complex lg = nn * specfun::log_gamma(s) + (dn - nn) * s * zlog;
            for (std::size_t t = 0; t < items.size(); ++t)
                acc[t] += nd.weight * exp(lg + iphase[t] * s) * inner[kslot[t]];
        }
        for (auto& a : acc) a /= two_pi_i;
        return acc;
    };
    std::vector<Complex> prev = level_sum(0);
    for (unsigned level = 1; level <= 6; ++level) {
        std::vector<Complex> cur = level_sum(level);
        Real diff(0);
        for (std::size_t t = 0; t < items.size(); ++t) diff = std::max(diff, abs(cur[t] - prev[t]));
        if (diff <= tol) return cur;
        prev = std::move(cur);
    }
    throw NoConvergence("thm_mt22_H outer quadrature refinement stalled");
}

Complex thm_mt22_H(const std::vector<unsigned>& n_list,
                   const std::vector<unsigned>& d_list,
                   const std::vector<unsigned>& j_list,
                   unsigned k,
                   const Complex& zlog,
                   const Real& tol,
                   const contour::ParabolicContour& pc,
                   const contour::HankelContour& hc)
{
    check_h_args(n_list, d_list, j_list, k);
    std::size_t h = n_list.size();
    if (h == 1) return thm_mt22_H_batch(n_list[0], d_list[0], {{j_list[0], k}}, zlog, tol, pc, hc)[0];

    InnerGrid grid = calibrated_inner_grid({k}, zlog, hc, tol / 20);
    std::vector<Complex> iphase(h), nn(h), dn(h);
    for (std::size_t i = 0; i < h; ++i) {
        Real mult = (n_list[i] % 2 == 0) ? Real(2 * j_list[i]) : Real(2 * j_list[i] + 1);
        iphase[i] = Complex(Real(0), specfun::pi() * mult);
        nn[i] = Complex(static_cast<long>(n_list[i]));
        dn[i] = Complex(static_cast<long>(d_list[i]));
    }
    auto f1 = [&](const Complex& s1) {
        auto f2 = [&](const Complex& s2) {
            Complex fac = exp(nn[1] * specfun::log_gamma(s2) + iphase[1] * s2 + (dn[1] - nn[1]) * s2 * zlog);
            return fac * grid.eval_one(0, dn[0] * s1 + dn[1] * s2);
        };
        Complex inner = contour::mellin_barnes_integral(f2, pc, tol / 10);
        return exp(nn[0] * specfun::log_gamma(s1) + iphase[0] * s1 + (dn[0] - nn[0]) * s1 * zlog) * inner;
    };
    return contour::mellin_barnes_integral(f1, pc, tol);
}

} // namespace qbl::qde
