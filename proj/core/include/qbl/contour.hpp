#ifndef QBL_CONTOUR_HPP
#define QBL_CONTOUR_HPP

#include <functional>
#include <vector>

#include "qbl/numeric.hpp"

namespace qbl::contour {

// Hankel loop: in from -infinity below the cut along arg = -(pi - eps_angle),
// once around the circle |lambda| = r, back out along arg = +(pi - eps_angle).
// R = 0 lets the default kick in: exp(-R cos(eps_angle)) = 1e-22, past which
// the e^lambda weight swamps every in-scope integrand.
struct HankelContour {
    Real r{1};
    Real eps_angle{0};
    Real R{0};
    unsigned panels = 8;

    Real effective_eps() const;
    Real effective_R() const;
    // auto-R widened when tol asks for tails below the 1e-22 default
    HankelContour resolved_for(const Real& tol) const;
};

// Re s = -rho1 (Im s)^2 + rho2 parametrized by s(t) = -rho1 t^2 + rho2 + i t,
// t in [-T, T]; encircles the poles of Gamma-factors to its left. T = 0
// starts at 8 and grows until the endpoint tail clears the tolerance; an
// explicit T is honored as-is (the tail check may then throw).
struct ParabolicContour {
    Real rho1{Real(1) / 4};
    Real rho2{Real(1) / 2};
    Real T{0};
    unsigned panels = 16;
};

using Integrand = std::function<Complex(const Complex&)>;

struct ContourNode {
    Complex lambda;
    Complex weight; // Gauss-Legendre weight times dlambda/dt
};

// Quadrature grid for one refinement level (panel count scales by 2^level).
std::vector<ContourNode> hankel_nodes(const HankelContour& c, unsigned level);
std::vector<ContourNode> parabola_nodes(const ParabolicContour& c, unsigned level);

// the 32-point Gauss-Legendre rule on [-1, 1] behind the composite panels
struct GaussRule {
    std::vector<Real> x;
    std::vector<Real> w;
};
const GaussRule& gauss_rule();

// (1/2 pi i) \oint f(lambda) e^lambda dlambda / lambda over the Hankel loop.
// Composite Gauss-Legendre, 32 nodes per panel, refined by panel halving
// until two levels agree within tol. Throws NoConvergence / TailTooFat.
Complex hankel_integral(const Integrand& f, const HankelContour& c, const Real& tol);

// (1/2 pi i) \int f(s) ds along the parabola.
Complex mellin_barnes_integral(const Integrand& f, const ParabolicContour& c, const Real& tol);

} // namespace qbl::contour

#endif
