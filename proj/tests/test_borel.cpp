#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qbl/borel.hpp>
#include <qbl/qde.hpp>
#include <qbl/specfun.hpp>

using namespace qbl;
namespace bo = qbl::borel;
namespace sf = qbl::specfun;

namespace {

Real tol10(int e) { return pow(Real(10), e); }

bo::RibKey key1(const AlgebraPtr& alg, unsigned n)
{
    bo::RibKey k;
    k.n = {n};
    k.nil.assign(alg->dim(), Rational(0));
    return k;
}

} // namespace

TEST_CASE("ribenboim product: unit monomial and nil exponent addition")
{
    auto A = alg_projective(2);
    bo::RibSeries f(A, {Rational(1)}, Rational(6));
    f.add_term(key1(A, 2), GaussRat(3) * AlgElement::unit(A));
    bo::RibSeries z0(A, {Rational(1)}, Rational(6));
    z0.add_term(key1(A, 0), AlgElement::unit(A));
    auto p = bo::ribenboim_mul(z0, f);
    CHECK(p.terms == f.terms);

    // Z^sigma * Z^sigma = Z^(2 sigma)
    bo::RibSeries g(A, {Rational(1)}, Rational(6));
    auto k = key1(A, 0);
    k.nil[1] = 1;
    g.add_term(k, AlgElement::unit(A));
    auto gg = bo::ribenboim_mul(g, g);
    REQUIRE(gg.terms.size() == 1);
    CHECK(gg.terms.begin()->first.nil[1] == Rational(2));
}

TEST_CASE("ribenboim product against a hand convolution")
{
    // (sum_k J_k Z^(2k + 2 sigma))^2 through k <= 2, J_k = (1 - 2 H_k sigma)/(k!)^2
    auto A = alg_projective(2);
    auto J = bo::jp1_series(A, 1, 4); // terms d = 0, 1, 2
    auto sq = bo::ribenboim_mul(J, J);
    // expected coefficient of Z^(2 + 4 sigma): 2 * J_0 * J_1 with the algebra product
    auto sigma = AlgElement::basis(A, 1);
    auto J0 = AlgElement::unit(A);
    auto J1 = AlgElement::unit(A) - GaussRat(2) * sigma;
    auto expect = GaussRat(2) * (J0 * J1);
    auto k = key1(A, 1);
    k.n = {1};
    k.nil[1] = 4;
    REQUIRE(sq.terms.count(k) == 1);
    CHECK(sq.terms.at(k) == expect);
    // truncation did its job: the square keeps min(trunc)
    CHECK(sq.trunc == Rational(4));
}

TEST_CASE("kappa refinement unifies mixed lattices")
{
    auto A = alg_projective(1);
    bo::RibSeries a(A, {Rational(2)}, Rational(8)); // exponents 2n
    a.add_term(key1(A, 1), AlgElement::unit(A));    // Z^2
    bo::RibSeries b(A, {Rational(3)}, Rational(9)); // exponents 3n
    b.add_term(key1(A, 1), AlgElement::unit(A));    // Z^3
    auto p = bo::ribenboim_mul(a, b);
    REQUIRE(p.terms.size() == 1);
    CHECK(p.kappa[0] == Rational(1));
    CHECK(p.terms.begin()->first.n[0] == 5);
}

TEST_CASE("formal transform of the exponential series")
{
    auto A = alg_projective(1);
    auto e = bo::rib_promote(bo::exp_series(A, 12));
    bo::BorelWeights w{{Rational(1)}, {Rational(1)}};
    auto t = bo::borel_formal({e}, w);
    // coefficients 1/(k! Gamma(1+k))
    Rational kf = 1;
    for (unsigned k = 0; k <= 12; ++k) {
        if (k > 0) kf *= k;
        auto it = t.terms.find(key1(A, k));
        REQUIRE(it != t.terms.end());
        CHECK(abs(it->second[0] - to_complex(GaussRat(Rational(1) / (kf * kf)))) < eps() * 10);
    }
    // Z^0 alone maps to Z^0 / Gamma(1) = Z^0
    bo::RibSeriesC z0(A, {Rational(1)}, Rational(4));
    z0.add_term(key1(A, 0), AlgElementC::unit(A));
    auto tz = bo::borel_formal({z0}, w);
    REQUIRE(tz.terms.size() == 1);
    CHECK(abs(tz.terms.begin()->second[0] - Complex(1)) == Real(0));
}

TEST_CASE("formal transform is multilinear in each slot")
{
    auto A = alg_projective(2);
    auto J = bo::rib_promote(bo::jp1_series(A, 1, 8));
    auto E = bo::e_series(A, AlgElement::basis(A, 1), 8).series;
    bo::BorelWeights w{{Rational(-4), Rational(1, 2)}, {Rational(-1, 2), Rational(1)}};
    // scale slot 0 by 3: the transform scales by 3
    bo::RibSeriesC J3 = J;
    for (auto& [k, c] : J3.terms) c = Complex(3) * c;
    auto t1 = bo::borel_formal({J3, E}, w);
    auto t3 = bo::borel_formal({J, E}, w);
    for (const auto& [k, c] : t1.terms) {
        auto it = t3.terms.find(k);
        REQUIRE(it != t3.terms.end());
        for (std::size_t i = 0; i < A->dim(); ++i)
            CHECK(abs(c[i] - Complex(3) * it->second[i]) < eps() * 100);
    }
}

TEST_CASE("analytification of a nilpotent monomial")
{
    auto A = alg_projective(2);
    bo::RibSeries f(A, {Rational(1)}, Rational(4));
    auto k = key1(A, 2);
    k.nil[1] = 1;
    f.add_term(k, AlgElement::unit(A)); // Z^(2 + sigma)
    auto comps = bo::analytify(f);
    // z^2 (1 + sigma log z): unit component z^2, sigma component z^2 log z
    CHECK(comps[0].coeff(2, 0) == GaussRat(1));
    CHECK(comps[1].coeff(2, 1) == GaussRat(1));
    CHECK(comps[1].coeff(2, 0) == GaussRat(0));
}

TEST_CASE("analytified J-series components are the P^1 master functions")
{
    auto A = alg_projective(2);
    auto comps = bo::analytify(bo::jp1_series(A, 1, 16));
    auto u1 = qde::p1_basis(GaussRat(1), GaussRat(0), 8);
    auto u2 = qde::p1_basis(GaussRat(0), GaussRat(1), 8);
    for (unsigned m = 0; m <= 16; ++m) {
        CHECK(comps[0].coeff(m, 0) == u1.coeff(m, 0));
        for (unsigned j = 0; j <= 1; ++j)
            CHECK(comps[1].coeff(m, j) == GaussRat(2) * u2.coeff(m, j));
    }
}

TEST_CASE("E-series coefficients and analytification")
{
    auto A = alg_blowup_p2();
    auto xi = AlgElement::basis(A, blowup_xi_index);
    auto es = bo::e_series(A, xi, 10);
    // coefficient of Z^(k+xi) equals the nilpotent evaluation of 1/Gamma(1+k+x)
    for (unsigned k = 0; k <= 10; ++k) {
        auto key = key1(A, k);
        key.nil[blowup_xi_index] = 1;
        auto it = es.series.terms.find(key);
        REQUIRE(it != es.series.terms.end());
        auto taylor = sf::recip_gamma_taylor_at(Rational(k + 1), 4);
        auto expect = nilpotent_series_eval(taylor, promote(xi));
        for (std::size_t i = 0; i < A->dim(); ++i) CHECK(abs(it->second[i] - expect[i]) == Real(0));
    }
    // analytified components package E_k xi^k / k!
    auto comps = bo::analytify(es.series);
    for (unsigned k : {0u, 1u}) {
        auto ek = sf::ek_series(k, 10);
        std::size_t dir = (k == 0) ? 0 : blowup_xi_index;
        Real scale = (k == 0) ? Real(1) : Real(1);
        for (unsigned m = 0; m <= 10; ++m)
            for (unsigned j = 0; j <= k; ++j)
                CHECK(abs(comps[dir].coeff(m, j) * Complex(scale) - ek.series.coeff(m, j)) < eps() * 100);
    }
    // xi^2 = T3 with 1/2! : component 3 carries E_2 / 2
    auto e2 = sf::ek_series(2, 10);
    for (unsigned m = 0; m <= 10; ++m)
        for (unsigned j = 0; j <= 2; ++j)
            CHECK(abs(Complex(2) * bo::analytify(es.series)[3].coeff(m, j) - e2.series.coeff(m, j)) <
                  eps() * 100);
    CHECK_THROWS_AS(bo::e_series(A, AlgElement::unit(A), 4), NotNilpotent);
}

TEST_CASE("point-algebra E-series is the doubly-divided exponential")
{
    auto A = alg_projective(1);
    auto es = bo::e_series(A, AlgElement(A), 8); // xi = 0 in the point algebra
    Rational kf = 1;
    for (unsigned k = 0; k <= 8; ++k) {
        if (k > 0) kf *= k;
        auto it = es.series.terms.find(key1(A, k));
        REQUIRE(it != es.series.terms.end());
        CHECK(abs(it->second[0] - to_complex(GaussRat(Rational(1) / kf))) < eps());
    }
}

TEST_CASE("numeric transform: residue normalization and the termwise identity")
{
    contour::HankelContour hc;
    bo::BorelWeights w{{Rational(1)}, {Rational(1)}};
    auto one = [](const Complex&) { return Complex(1); };
    CHECK(abs(bo::borel_numeric({one}, w, Complex(0), hc, tol10(-12)) - Complex(1)) < tol10(-12));

    // B[e^w](z) = sum z^k/(k!)^2 at z = 1/4
    auto expw = [](const Complex& l) { return exp(exp(l)); };
    Complex zl = log(Complex(Real(1) / 4));
    Real direct(0), term(1);
    for (unsigned k = 0; k <= 30; ++k) {
        if (k > 0) term *= Real(1) / 4 / (Real(k) * Real(k));
        direct += term;
    }
    CHECK(abs(bo::borel_numeric({expw}, w, zl, hc, tol10(-11)) - Complex(direct)) < tol10(-9));
}

TEST_CASE("weights are validated")
{
    bo::BorelWeights bad{{Rational(1), Rational(0)}, {Rational(1), Rational(1)}};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bo::BorelWeights mismatch{{Rational(1)}, {Rational(1), Rational(1)}};
    CHECK_THROWS_AS(mismatch.validate(), DimensionError);
}

TEST_CASE("algebra mismatch is rejected")
{
    auto A = alg_projective(2);
    auto B = alg_projective(2); // distinct instance
    bo::RibSeries f(A, {Rational(1)}, Rational(4));
    f.add_term(key1(A, 0), AlgElement::unit(A));
    bo::RibSeries g(B, {Rational(1)}, Rational(4));
    g.add_term(key1(B, 0), AlgElement::unit(B));
    CHECK_THROWS_AS(bo::ribenboim_mul(f, g), AlgebraMismatch);
}

TEST_CASE("BLAF bridge on the blow-up data at one point")
{
    const unsigned N = 16;
    auto A = alg_blowup_p2();
    auto jser = bo::rib_promote(bo::jp1_series(A, blowup_rho_index, N));
    auto es = bo::e_series(A, AlgElement::basis(A, blowup_xi_index), N);
    bo::BorelWeights w{{Rational(-4), Rational(1, 2)}, {Rational(-1, 2), Rational(1)}};
    auto comps = bo::analytify(bo::borel_formal({jser, es.series}, w));

    auto u1 = promote(qde::p1_basis(GaussRat(1), GaussRat(0), 40));
    contour::HankelContour hc;
    Complex zl = log(Complex(Real(1) / 5));
    Complex numeric = bo::borel_numeric(
        {[&](const Complex& l) { return ls_eval(u1, l); },
         [](const Complex& l) { return sf::ek_eval(0, l); }},
        w, zl, hc, tol10(-9));
    CHECK(abs(numeric - ls_eval(comps[0], zl)) < tol10(-6));
}
