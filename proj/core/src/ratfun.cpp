#include "qbl/ratfun.hpp"

#include "qbl/errors.hpp"

namespace qbl {

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    reduce();
}

void RatFun::reduce()
{
    if (num_.is_zero()) {
        den_ = Poly::one();
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = poly_exact_div(num_, g);
        den_ = poly_exact_div(den_, g);
    }
    GaussRat lead = den_.leading();
    if (!(lead == GaussRat(1))) {
        GaussRat inv = GaussRat(1) / lead;
        num_ = inv * num_;
        den_ = inv * den_;
    }
}

RatFun RatFun::derivative() const
{
    return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Complex RatFun::eval(const Complex& z) const
{
    return num_.eval(z) / den_.eval(z);
}

RatFun operator+(const RatFun& a, const RatFun& b)
{
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b)
{
    return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a)
{
    RatFun r = a;
    r.num_ = -r.num_;
    return r;
}

RatFun operator*(const RatFun& a, const RatFun& b)
{
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b)
{
    if (b.is_zero()) throw DomainError("division by zero rational function");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFun::to_string(const std::string& var) const
{
    if (num_.is_zero()) return "0";
    // rescale so the denominator displays with coprime integer coefficients
    GaussRat f(1);
    Poly den_int = poly_integer_primitive(den_, &f);
    Poly num_scaled = f * num_;
    if (den_int == Poly::one()) return num_scaled.to_string(var);
    std::string ns = num_scaled.to_string(var);
    std::string ds = den_int.to_string(var);
    if (num_scaled.degree() > 0) ns = "(" + ns + ")";
    return ns + " / (" + ds + ")";
}

RatFunMatrix RatFunMatrix::identity(std::size_t n)
{
    RatFunMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RatFun(1);
    return m;
}

RatFunMatrix RatFunMatrix::transpose() const
{
    RatFunMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RatFunMatrix RatFunMatrix::derivative() const
{
    RatFunMatrix d(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) d.at(i, j) = at(i, j).derivative();
    return d;
}

RatFunMatrix operator+(const RatFunMatrix& a, const RatFunMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix addition shape mismatch");
    RatFunMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
    return c;
}

RatFunMatrix operator-(const RatFunMatrix& a, const RatFunMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix subtraction shape mismatch");
    RatFunMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
    return c;
}

RatFunMatrix operator*(const RatFunMatrix& a, const RatFunMatrix& b)
{
    if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
    RatFunMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            RatFun acc;
            for (std::size_t k = 0; k < a.cols(); ++k) acc = acc + a.at(i, k) * b.at(k, j);
            c.at(i, j) = acc;
        }
    return c;
}

RatFunMatrix operator*(const RatFun& s, const RatFunMatrix& a)
{
    RatFunMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = s * a.at(i, j);
    return c;
}

namespace {

// Clear denominators row by row: returns P with P[i][j] = d_i * M[i][j]
// polynomial, plus the row factors d_i.
void clear_rows(const RatFunMatrix& m, std::vector<std::vector<Poly>>& p, std::vector<Poly>& rowf)
{
    std::size_t n = m.rows();
    p.assign(n, std::vector<Poly>(m.cols()));
    rowf.assign(n, Poly::one());
    for (std::size_t i = 0; i < n; ++i) {
        Poly d = Poly::one();
        for (std::size_t j = 0; j < m.cols(); ++j) d = poly_lcm(d, m.at(i, j).den());
        rowf[i] = d;
        for (std::size_t j = 0; j < m.cols(); ++j)
            p[i][j] = m.at(i, j).num() * poly_exact_div(d, m.at(i, j).den());
    }
}

} // namespace

RatFun ratfun_det(const RatFunMatrix& m)
{
    if (m.rows() != m.cols()) throw DimensionError("determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return RatFun(1);
    std::vector<std::vector<Poly>> p;
    std::vector<Poly> rowf;
    clear_rows(m, p, rowf);

    int sign = 1;
    Poly prev = Poly::one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (p[k][k].is_zero()) {
            std::size_t s = k + 1;
            while (s < n && p[s][k].is_zero()) ++s;
            if (s == n) return RatFun(0);
            std::swap(p[k], p[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                p[i][j] = poly_exact_div(p[k][k] * p[i][j] - p[i][k] * p[k][j], prev);
            p[i][k] = Poly();
        }
        prev = p[k][k];
    }
    Poly det_p = p[n - 1][n - 1];
    if (sign < 0) det_p = -det_p;
    Poly denom = Poly::one();
    for (const auto& d : rowf) denom = denom * d;
    return RatFun(det_p, denom);
}

namespace {

// Fraction-free Gauss-Jordan on [P | I]; all divisions exact by the
// Bareiss one-step identity.
std::vector<std::vector<RatFun>> poly_mat_inverse_cleared(std::vector<std::vector<Poly>> a, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        a[i].resize(2 * n);
        a[i][n + i] = Poly::one();
    }
    Poly prev = Poly::one();
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t s = k + 1;
            while (s < n && a[s][k].is_zero()) ++s;
            if (s == n) throw SingularMatrix();
            std::swap(a[k], a[s]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            for (std::size_t j = 0; j < 2 * n; ++j) {
                if (j == k) continue;
                a[i][j] = poly_exact_div(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
            }
            a[i][k] = Poly();
        }
        prev = a[k][k];
    }
    std::vector<std::vector<RatFun>> inv(n, std::vector<RatFun>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = RatFun(a[i][n + j], a[i][i]);
    return inv;
}

} // namespace

RatFunMatrix ratfun_mat_inverse(const RatFunMatrix& m)
{
    if (m.rows() != m.cols()) throw DimensionError("inverse of non-square matrix");
    std::size_t n = m.rows();
    std::vector<std::vector<Poly>> p;
    std::vector<Poly> rowf;
    clear_rows(m, p, rowf);
    auto inv = poly_mat_inverse_cleared(std::move(p), n);
    // P = diag(rowf) * M, hence M^-1 = P^-1 * diag(rowf)
    RatFunMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.at(i, j) = inv[i][j] * RatFun(rowf[j]);
    return r;
}

std::vector<RatFun> ratfun_mat_solve(const RatFunMatrix& m, const std::vector<RatFun>& b)
{
    if (m.rows() != b.size()) throw DimensionError("solve shape mismatch");
    RatFunMatrix inv = ratfun_mat_inverse(m);
    std::vector<RatFun> x(m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) {
        RatFun acc;
        for (std::size_t k = 0; k < b.size(); ++k) acc = acc + inv.at(i, k) * b[k];
        x[i] = acc;
    }
    return x;
}

} // namespace qbl
