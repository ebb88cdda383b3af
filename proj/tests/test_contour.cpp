#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qbl/contour.hpp>
#include <qbl/specfun.hpp>

using namespace qbl;
namespace sf = qbl::specfun;

namespace {
Real tol10(int e) { return pow(Real(10), e); }
} // namespace

TEST_CASE("Hankel loop reproduces the reciprocal Gamma function")
{
    contour::HankelContour hc;
    const Real qtol = tol10(-11);
    Real rpi = sqrt(sf::pi());
    struct Case {
        double z;
        Real expect;
    };
    for (const auto& [zv, expect] : std::initializer_list<Case>{{-1.5, 3 / (4 * rpi)},
                                                                {-0.5, -1 / (2 * rpi)},
                                                                {0.5, 1 / rpi},
                                                                {1.0, Real(1)},
                                                                {2.5, 4 / (3 * rpi)},
                                                                {4.0, Real(1) / 6},
                                                                {0.0, Real(0)},
                                                                {-1.0, Real(0)}}) {
        Complex z(zv);
        auto f = [&](const Complex& lam) { return exp((Complex(1) - z) * log(lam)); };
        CHECK(abs(contour::hankel_integral(f, hc, qtol) - Complex(expect)) < tol10(-8));
    }
}

TEST_CASE("the e^lambda / lambda weight alone has residue one")
{
    contour::HankelContour hc;
    auto one = [](const Complex&) { return Complex(1); };
    CHECK(abs(contour::hankel_integral(one, hc, tol10(-12)) - Complex(1)) < tol10(-12));
}

TEST_CASE("first log-moment gives the Euler constant")
{
    contour::HankelContour hc;
    auto f = [](const Complex& lam) { return -log(lam); };
    CHECK(abs(contour::hankel_integral(f, hc, tol10(-11)) - Complex(sf::euler_gamma())) < tol10(-8));
}

TEST_CASE("contour independence under perturbation")
{
    const Real qtol = tol10(-10);
    for (double zv : {-0.5, 1.0, 2.5}) {
        Complex z(zv);
        auto f = [&](const Complex& lam) { return exp((Complex(1) - z) * log(lam)); };
        contour::HankelContour base;
        Complex ref = contour::hankel_integral(f, base, qtol);
        contour::HankelContour pert;
        pert.r = Real(13) / 10;
        pert.eps_angle = sf::pi() / 5;
        pert.R = base.resolved_for(qtol).R * 3 / 2;
        pert.panels = 16;
        CHECK(abs(contour::hankel_integral(f, pert, qtol) - ref) <= 3 * qtol);
    }
}

TEST_CASE("invalid Hankel parameters are rejected")
{
    contour::HankelContour hc;
    hc.eps_angle = 2; // >= pi/2
    CHECK_THROWS_AS(contour::hankel_nodes(hc, 0), DomainError);
    contour::HankelContour hc2;
    hc2.R = Real(1) / 2; // below the circle radius
    CHECK_THROWS_AS(contour::hankel_nodes(hc2, 0), DomainError);
}

TEST_CASE("Mellin-Barnes parabola against the residue sum")
{
    contour::ParabolicContour pc;
    auto f = [](const Complex& s) { return exp(sf::log_gamma(s)); }; // Gamma(s), z = 1
    // sum of residues (-1)^k / k! = 1/e
    Complex got = contour::mellin_barnes_integral(f, pc, tol10(-12));
    CHECK(abs(got - exp(Complex(-1))) < tol10(-12));
}

TEST_CASE("doubling the parameter truncation is inert once the tail cleared")
{
    auto f = [](const Complex& s) { return exp(sf::log_gamma(s)); };
    contour::ParabolicContour a, b;
    a.T = 10;
    b.T = 20;
    b.panels = 32;
    Complex va = contour::mellin_barnes_integral(f, a, tol10(-10));
    Complex vb = contour::mellin_barnes_integral(f, b, tol10(-10));
    CHECK(abs(va - vb) < tol10(-10));
}

TEST_CASE("a pinned-too-short parabola reports its fat tail")
{
    auto f = [](const Complex& s) { return exp(sf::log_gamma(s)); };
    contour::ParabolicContour pc;
    pc.T = 2; // explicit T disables the auto-growth
    CHECK_THROWS_AS(contour::mellin_barnes_integral(f, pc, tol10(-20)), TailTooFat);
}

TEST_CASE("quadrature node weights integrate a holomorphic residue exactly")
{
    // (1/2 pi i) int lambda^3 e^lambda dlambda / lambda over the loop: the
    // residue at 0 of lambda^2 e^lambda vanishes... use lambda^-3: residue
    // picks the 1/2! term
    contour::HankelContour hc;
    auto f = [](const Complex& lam) { return Complex(1) / (lam * lam); };
    CHECK(abs(contour::hankel_integral(f, hc, tol10(-12)) - Complex(Real(1) / 2)) < tol10(-12));
}
