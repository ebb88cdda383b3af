#include "qbl/contour.hpp"

#include <mutex>

#include "qbl/errors.hpp"
#include "qbl/specfun.hpp"

namespace qbl::contour {

namespace {

constexpr unsigned kNodesPerPanel = 32;
constexpr unsigned kMaxLevels = 6;

using GLRule = GaussRule;

const GLRule& gl32()
{
    static std::mutex mu;
    static GLRule rule;
    std::lock_guard<std::mutex> lock(mu);
    if (!rule.x.empty()) return rule;
    const unsigned n = kNodesPerPanel;
    rule.x.resize(n);
    rule.w.resize(n);
    for (unsigned i = 0; i < n; ++i) {
        Real t = cos(specfun::pi() * (Real(i) + Real(3) / 4) / (Real(n) + Real(1) / 2));
        Real p0(1), p1(0), dp(0);
        for (int it = 0; it < 100; ++it) {
            p0 = 1;
            p1 = t;
            for (unsigned k = 2; k <= n; ++k) {
                Real p2 = ((2 * Real(k) - 1) * t * p1 - (Real(k) - 1) * p0) / Real(k);
                p0 = p1;
                p1 = p2;
            }
            dp = Real(n) * (t * p1 - p0) / (t * t - 1);
            Real dt = p1 / dp;
            t -= dt;
            if (abs(dt) < eps() / 100) break;
        }
        p0 = 1;
        p1 = t;
        for (unsigned k = 2; k <= n; ++k) {
            Real p2 = ((2 * Real(k) - 1) * t * p1 - (Real(k) - 1) * p0) / Real(k);
            p0 = p1;
            p1 = p2;
        }
        dp = Real(n) * (t * p1 - p0) / (t * t - 1);
        rule.x[i] = t;
        rule.w[i] = 2 / ((1 - t * t) * dp * dp);
    }
    return rule;
}

// append GL nodes of map t in [a,b] -> lambda(t), weight includes lambda'(t)
template <class Map, class Deriv>
void add_panel(std::vector<ContourNode>& out, const Real& a, const Real& b, Map lam, Deriv dlam)
{
    const GLRule& gl = gl32();
    Real c = (a + b) / 2, h = (b - a) / 2;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        Real t = c + h * gl.x[i];
        out.push_back({lam(t), Complex(gl.w[i] * h) * dlam(t)});
    }
}

} // namespace

const GaussRule& gauss_rule()
{
    return gl32();
}

Real HankelContour::effective_eps() const
{
    return eps_angle > 0 ? eps_angle : specfun::pi() / 6;
}

Real HankelContour::effective_R() const
{
    if (R > 0) return R;
    // exp(-R cos eps) = 1e-22
    return Real(22) * log(Real(10)) / cos(effective_eps());
}

HankelContour HankelContour::resolved_for(const Real& tol) const
{
    HankelContour c = *this;
    if (c.R <= 0) {
        Real target = Real(22) * log(Real(10));
        if (tol > 0) target = std::max(target, -log(tol) + log(Real(10000)));
        c.R = target / cos(effective_eps());
    }
    return c;
}

std::vector<ContourNode> hankel_nodes(const HankelContour& c, unsigned level)
{
    Real e = c.effective_eps();
    Real Reff = c.effective_R();
    if (!(c.r > 0) || !(Reff > c.r) || !(e > 0) || !(e < specfun::pi() / 2))
        throw DomainError("invalid Hankel contour parameters");
    unsigned np = c.panels << level;
    Real phi = specfun::pi() - e;
    std::vector<ContourNode> nodes;
    nodes.reserve(3 * np * kNodesPerPanel);

    // geometric edges for the rays
    std::vector<Real> edges(np + 1);
    Real g = pow(Reff / c.r, Real(1) / Real(np));
    edges[0] = c.r;
    for (unsigned i = 1; i <= np; ++i) edges[i] = edges[i - 1] * g;
    edges[np] = Reff;

    // incoming ray: t from R down to r at angle -phi
    Complex dir_in = exp(Complex(Real(0), -phi));
    for (unsigned i = np; i-- > 0;)
        add_panel(
            nodes, -edges[i + 1], -edges[i], [&](const Real& t) { return Complex(-t) * dir_in; },
            [&](const Real&) { return -dir_in; });
    // circle of radius r, theta from -phi to +phi
    for (unsigned i = 0; i < np; ++i) {
        Real a = -phi + 2 * phi * Real(i) / Real(np);
        Real b = -phi + 2 * phi * Real(i + 1) / Real(np);
        add_panel(
            nodes, a, b, [&](const Real& th) { return Complex(c.r) * exp(Complex(Real(0), th)); },
            [&](const Real& th) { return Complex(Real(0), c.r) * exp(Complex(Real(0), th)); });
    }
    // outgoing ray: t from r to R at angle +phi
    Complex dir_out = exp(Complex(Real(0), phi));
    for (unsigned i = 0; i < np; ++i)
        add_panel(
            nodes, edges[i], edges[i + 1], [&](const Real& t) { return Complex(t) * dir_out; },
            [&](const Real&) { return dir_out; });
    return nodes;
}

std::vector<ContourNode> parabola_nodes(const ParabolicContour& c0, unsigned level)
{
    ParabolicContour c = c0;
    if (c.T <= 0) c.T = 8;
    if (!(c.rho2 > 0) || !(c.rho1 >= 0)) throw DomainError("invalid parabolic contour parameters");
    unsigned np = c.panels << level;
    std::vector<ContourNode> nodes;
    nodes.reserve(np * kNodesPerPanel);
    for (unsigned i = 0; i < np; ++i) {
        Real a = -c.T + 2 * c.T * Real(i) / Real(np);
        Real b = -c.T + 2 * c.T * Real(i + 1) / Real(np);
        add_panel(
            nodes, a, b,
            [&](const Real& t) { return Complex(-c.rho1 * t * t + c.rho2, t); },
            [&](const Real& t) { return Complex(-2 * c.rho1 * t, Real(1)); });
    }
    return nodes;
}

namespace {

Complex sum_hankel(const Integrand& f, const std::vector<ContourNode>& nodes)
{
    Complex acc(0);
    for (const auto& n : nodes) acc += f(n.lambda) * exp(n.lambda) / n.lambda * n.weight;
    static const Complex two_pi_i = Complex(Real(0), 2 * specfun::pi());
    return acc / two_pi_i;
}

Complex sum_plain(const Integrand& f, const std::vector<ContourNode>& nodes)
{
    Complex acc(0);
    for (const auto& n : nodes) acc += f(n.lambda) * n.weight;
    static const Complex two_pi_i = Complex(Real(0), 2 * specfun::pi());
    return acc / two_pi_i;
}

} // namespace

Complex hankel_integral(const Integrand& f, const HankelContour& c0, const Real& tol)
{
    HankelContour c = c0.resolved_for(tol);
    Real e = c.effective_eps();
    Real Reff = c.effective_R();
    Complex prev = sum_hankel(f, hankel_nodes(c, 0));
    for (unsigned level = 1; level <= kMaxLevels; ++level) {
        Complex cur = sum_hankel(f, hankel_nodes(c, level));
        if (abs(cur - prev) <= tol) {
            // ray-tail estimate at the truncation radius
            Complex endm = Complex(Reff) * exp(Complex(Real(0), -(specfun::pi() - e)));
            Complex endp = Complex(Reff) * exp(Complex(Real(0), specfun::pi() - e));
            Real mag = (abs(f(endm)) + abs(f(endp))) * exp(-Reff * cos(e)) / (Reff * cos(e));
            if (mag > tol) throw TailTooFat("Hankel ray tail estimate exceeds tolerance at R");
            return cur;
        }
        prev = cur;
    }
    throw NoConvergence("Hankel quadrature refinement stalled");
}

Complex mellin_barnes_integral(const Integrand& f, const ParabolicContour& c0, const Real& tol)
{
    ParabolicContour c = c0;
    bool auto_T = c.T <= 0;
    if (auto_T) c.T = 8;
    for (unsigned grow = 0;; ++grow) {
        Complex sp(-c.rho1 * c.T * c.T + c.rho2, c.T);
        Complex sm(-c.rho1 * c.T * c.T + c.rho2, -c.T);
        Real speed = sqrt(1 + 4 * c.rho1 * c.rho1 * c.T * c.T);
        Real mag = (abs(f(sp)) + abs(f(sm))) * speed;
        if (mag > tol) {
            if (!auto_T || grow >= 8) throw TailTooFat("parabola endpoint integrand exceeds tolerance at T");
            c.T = c.T * 3 / 2;
            c.panels = c.panels + c.panels / 2;
            continue;
        }
        break;
    }
    Complex prev = sum_plain(f, parabola_nodes(c, 0));
    for (unsigned level = 1; level <= kMaxLevels; ++level) {
        Complex cur = sum_plain(f, parabola_nodes(c, level));
        if (abs(cur - prev) <= tol) return cur;
        prev = cur;
    }
    throw NoConvergence("Mellin-Barnes quadrature refinement stalled");
}

} // namespace qbl::contour
