#ifndef QBL_QDE_HPP
#define QBL_QDE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbl/contour.hpp"
#include "qbl/logseries.hpp"
#include "qbl/ratfun.hpp"

namespace qbl::qde {

// dsigma/dz = (U + mu/z) sigma at a fixed small-quantum point; U constant in
// z with entries polynomial in the chosen q, mu the diagonal grading.
struct QdeData {
    std::string model;
    RatFunMatrix U;
    RatFunMatrix mu;
    std::vector<Rational> q;
    unsigned complex_dim = 0;

    std::size_t rank() const { return U.rows(); }
};

QdeData qde_blowup_data(const Rational& q1, const Rational& q2);

// U = [[0,2],[2,0]], mu = diag(-1/2, 1/2): small quantum cohomology of P^1
// (s o s = q, c1 = 2s) at q = 1. The worked example only ever meets P^1
// through its master equation, so this datum is kept as a built-in.
QdeData qde_p1_data();

struct CyclicFrame {
    RatFunMatrix E;      // columns e_k = (d/dz + U - mu/z)^k e
    RatFunMatrix Lambda; // E^{-1}
    RatFun det_lambda;
};
CyclicFrame cyclic_frame(const QdeData& d);

enum class OdeProvenance { derived, printed };

struct MasterODE {
    ThetaOperator op;
    Poly apparent_singularities; // leading coefficient with z^k factors stripped
    OdeProvenance provenance = OdeProvenance::derived;
    std::string companion_convention; // which superdiagonal the companion system showed
};

// Cyclic reduction: builds the companion matrix
// C = (Lambda^-1)^T U^T Lambda^T - (1/z)(Lambda^-1)^T mu Lambda^T + d(Lambda^-1)^T/dz Lambda^T
// exactly, validates its companion shape, reads off the scalar equation for
// the first covector component, applies the z^(dim/2) master-function
// normalization and returns the theta-form operator with coprime integer
// polynomial coefficients. Throws NotCompanion with a diagnostic dump when
// the shape validation fails.
MasterODE derive_master_ode(const QdeData& d);

// the order-4 operator as printed for the blow-up example; comparison
// target only, never the verification oracle
MasterODE printed_blowup_ode();

struct OdeComparison {
    bool equal = false;
    std::vector<Poly> lhs, rhs, difference;
};
OdeComparison compare_master_odes(const MasterODE& a, const MasterODE& b);

// P^1 master functions: sum_k (a_k + b_k log z) z^(2k)/(k!)^2 with
// a_k = a0 - b0 H_k, b_k = b0; trusted through order 2N+1.
ExactLogSeries p1_basis(const GaussRat& a0, const GaussRat& b0, unsigned N);

struct MasterBasis {
    std::vector<NumLogSeries> members;
    std::vector<std::string> labels;
    std::string kind;
    std::map<std::size_t, ExactLogSeries> exact_members; // gamma-free members
};

// The four Borel basis solutions of the blow-up master equation,
// B[U1,E0], B[U2,E0], B[U1,E1], 4B[U2,E1] + B[U1,E2], through z-order N.
MasterBasis blowup_borel_basis(unsigned N);

template <class K>
struct ResidualReport {
    LogSeriesT<K> residual;
    int trusted_order = 0;
    Real max_magnitude{0};
    bool pass = false;
};

ResidualReport<GaussRat> verify_solution(const MasterODE& ode, const ExactLogSeries& s);
ResidualReport<Complex> verify_solution(const MasterODE& ode, const NumLogSeries& s,
                                        const Real& tol = pow(Real(10), -10));

// Elezi-Brown route: components of I_P(c1(P) log z) for P = P(O + O(-1))
// over P^1 at the origin of the small quantum locus, exact coefficients.
std::vector<ExactLogSeries> i_function_blowup(unsigned N);

// Mellin-Barnes master functions of P^(n-1):
// g^j(z) = (1/2 pi i) int Gamma(s)^n z^(-n s) phi_j(s) ds on the parabola.
Complex mb_master_pn(unsigned n, unsigned j, const Complex& zlog, const Real& tol,
                     const contour::ParabolicContour& pc = {});

// H integrals of the product-of-projective-spaces theorem; h = n_list.size()
// <= 2, 0 < d_i < n_i, 0 <= k <= 1 - h + sum n_i, iterated Mellin-Barnes
// around a cached Hankel grid.
Complex thm_mt22_H(const std::vector<unsigned>& n_list,
                   const std::vector<unsigned>& d_list,
                   const std::vector<unsigned>& j_list,
                   unsigned k,
                   const Complex& zlog,
                   const Real& tol,
                   const contour::ParabolicContour& pc = {},
                   const contour::HankelContour& hc = {});

// batched h = 1 evaluation at one z: the inner Hankel grid and the
// per-outer-node exponential pass are shared across all (j, k) items
struct HItem {
    unsigned j = 0;
    unsigned k = 0;
};
std::vector<Complex> thm_mt22_H_batch(unsigned n,
                                      unsigned d,
                                      const std::vector<HItem>& items,
                                      const Complex& zlog,
                                      const Real& tol,
                                      const contour::ParabolicContour& pc = {},
                                      const contour::HankelContour& hc = {});

} // namespace qbl::qde

#endif
