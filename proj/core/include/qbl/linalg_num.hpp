#ifndef QBL_LINALG_NUM_HPP
#define QBL_LINALG_NUM_HPP

#include <vector>

#include "qbl/errors.hpp"
#include "qbl/numeric.hpp"

namespace qbl {

// Dense column-major complex matrix, just big enough for the span fits.
struct CMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Complex> a;

    CMat() = default;
    CMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    Complex& at(std::size_t i, std::size_t j) { return a[j * rows + i]; }
    const Complex& at(std::size_t i, std::size_t j) const { return a[j * rows + i]; }
};

struct LsqResult {
    std::vector<Complex> x;
    Real residual_norm{0};
    Real condition_estimate{0}; // ratio of extreme R-diagonal magnitudes
};

// Least squares min |A x - b| via modified Gram-Schmidt QR. Throws
// SingularMatrix when a column collapses (rank deficiency).
inline LsqResult lsq_solve(CMat A, std::vector<Complex> b)
{
    std::size_t m = A.rows, n = A.cols;
    if (b.size() != m || m < n) throw DimensionError("lsq_solve shape mismatch");
    std::vector<std::vector<Complex>> q(n, std::vector<Complex>(m));
    CMat R(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) q[j][i] = A.at(i, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex dot(0);
                for (std::size_t i = 0; i < m; ++i) dot += conj(q[k][i]) * q[j][i];
                R.at(k, j) += dot;
                for (std::size_t i = 0; i < m; ++i) q[j][i] -= dot * q[k][i];
            }
        }
        Real nrm(0);
        for (std::size_t i = 0; i < m; ++i) nrm += abs2(q[j][i]);
        nrm = sqrt(nrm);
        if (nrm < eps()) throw SingularMatrix("rank-deficient least-squares system");
        R.at(j, j) = Complex(nrm);
        for (std::size_t i = 0; i < m; ++i) q[j][i] /= Complex(nrm);
    }
    // x = R^-1 Q^H b
    std::vector<Complex> qb(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex dot(0);
        for (std::size_t i = 0; i < m; ++i) dot += conj(q[k][i]) * b[i];
        qb[k] = dot;
    }
    std::vector<Complex> x(n);
    for (std::size_t k = n; k-- > 0;) {
        Complex acc = qb[k];
        for (std::size_t j = k + 1; j < n; ++j) acc -= R.at(k, j) * x[j];
        x[k] = acc / R.at(k, k);
    }
    LsqResult out;
    out.x = x;
    Real rmax(0), rmin(0);
    for (std::size_t k = 0; k < n; ++k) {
        Real d = abs(R.at(k, k));
        rmax = std::max(rmax, d);
        rmin = (k == 0) ? d : std::min(rmin, d);
    }
    out.condition_estimate = rmin > 0 ? rmax / rmin : Real(0);
    Real rn(0);
    for (std::size_t i = 0; i < m; ++i) {
        Complex r = -b[i];
        for (std::size_t j = 0; j < n; ++j) r += A.at(i, j) * out.x[j];
        rn += abs2(r);
    }
    out.residual_norm = sqrt(rn);
    return out;
}

} // namespace qbl

#endif
