#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qbl/logseries.hpp>
#include <qbl/qde.hpp>
#include <qbl/serialize.hpp>
#include <qbl/specfun.hpp>

using namespace qbl;
namespace sf = qbl::specfun;

namespace {

Real tol10(int e) { return pow(Real(10), e); }

ExactLogSeries poly_series(std::initializer_list<long> coeffs, unsigned N)
{
    ExactLogSeries s(N, 0);
    unsigned m = 0;
    for (long c : coeffs) s.at(m++, 0) = GaussRat(c);
    return s;
}

struct Rng {
    unsigned long long st = 0xd1b54a32d192ed03ull;
    long next()
    {
        st = st * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<long>((st >> 33) % 9) - 4;
    }
    ExactLogSeries series(unsigned N, unsigned J)
    {
        ExactLogSeries s(N, J);
        for (unsigned m = 0; m <= N; ++m)
            for (unsigned j = 0; j <= J; ++j) s.at(m, j) = GaussRat(Rational(next(), 1 + (next() & 1)));
        return s;
    }
};

} // namespace

TEST_CASE("series product basics")
{
    auto a = poly_series({1, 1}, 4);  // 1 + z
    auto b = poly_series({1, -1}, 4); // 1 - z
    auto ab = ls_mul(a, b);
    CHECK(ab.coeff(0, 0) == GaussRat(1));
    CHECK(ab.coeff(1, 0) == GaussRat(0));
    CHECK(ab.coeff(2, 0) == GaussRat(-1));
    CHECK(ab.ord_valid == 4);

    ExactLogSeries logz(2, 1);
    logz.at(0, 1) = GaussRat(1);
    auto sq = ls_mul(logz, logz);
    CHECK(sq.J == 2);
    CHECK(sq.coeff(0, 2) == GaussRat(1));
    CHECK(sq.coeff(0, 1) == GaussRat(0));
}

TEST_CASE("theta acts as z d/dz on the log grid")
{
    auto one = poly_series({1}, 3);
    CHECK(ls_theta(one).is_zero());

    ExactLogSeries s(3, 1); // z^2 log z
    s.at(2, 1) = GaussRat(1);
    auto t = ls_theta(s);
    CHECK(t.coeff(2, 1) == GaussRat(2));
    CHECK(t.coeff(2, 0) == GaussRat(1));
}

TEST_CASE("theta^2 of the Bessel-type series returns 4 z^2 times it")
{
    auto u = qde::p1_basis(GaussRat(1), GaussRat(0), 10);
    auto t2 = ls_theta(ls_theta(u));
    // 4 z^2 u
    auto z2 = poly_series({0, 0, 4}, 2 * 10 + 1);
    auto rhs = ls_mul(z2, u);
    for (int m = 0; m <= rhs.ord_valid; ++m) CHECK(t2.coeff(m, 0) == rhs.coeff(m, 0));
}

TEST_CASE("theta satisfies the Leibniz rule exactly")
{
    Rng rng;
    for (int it = 0; it < 5; ++it) {
        auto a = rng.series(5, 1);
        auto b = rng.series(5, 1);
        auto lhs = ls_theta(ls_mul(a, b));
        auto rhs = ls_add(ls_mul(ls_theta(a), b), ls_mul(a, ls_theta(b)));
        for (int m = 0; m <= std::min(lhs.ord_valid, rhs.ord_valid); ++m)
            for (unsigned j = 0; j <= std::max(lhs.J, rhs.J); ++j)
                CHECK(lhs.coeff(m, j) == rhs.coeff(m, j));
    }
}

TEST_CASE("operator application")
{
    // zero operator annihilates everything
    ThetaOperator zero(std::vector<Poly>{Poly()});
    Rng rng;
    CHECK(op_apply(zero, rng.series(4, 1)).is_zero());

    // theta kills constants
    ThetaOperator th(std::vector<Poly>{Poly(), Poly::one()});
    CHECK(op_apply(th, poly_series({3}, 4)).is_zero());

    // theta^2 - 4z^2 annihilates both P^1 master functions
    ThetaOperator L(std::vector<Poly>{Poly{GaussRat(0), GaussRat(0), GaussRat(-4)}, Poly(), Poly::one()});
    CHECK(op_apply(L, qde::p1_basis(GaussRat(1), GaussRat(0), 12)).is_zero());
    CHECK(op_apply(L, qde::p1_basis(GaussRat(0), GaussRat(1), 12)).is_zero());

    // trusted order survives the application untouched
    auto r = op_apply(L, qde::p1_basis(GaussRat(0), GaussRat(1), 12));
    CHECK(r.ord_valid == 25);
}

TEST_CASE("operator normalization to coprime integer coefficients")
{
    ThetaOperator L(std::vector<Poly>{Poly{GaussRat(Rational(1, 2))}, Poly{GaussRat(Rational(3, 2))}});
    CHECK(L.coeff(0) == Poly{GaussRat(1)});
    CHECK(L.coeff(1) == Poly{GaussRat(3)});
    // sign convention: positive leading coefficient of the top polynomial
    ThetaOperator M(std::vector<Poly>{Poly{GaussRat(2)}, Poly{GaussRat(-4)}});
    CHECK(M.coeff(1) == Poly{GaussRat(2)});
    CHECK(M.coeff(0) == Poly{GaussRat(-1)});
}

TEST_CASE("evaluation at a point")
{
    auto a = poly_series({1, 1}, 4);
    CHECK(abs(ls_eval(a, Complex(0)) - Complex(2)) == Real(0));

    // Ups1 at z = 0.3 against the direct modified-Bessel-type sum
    auto u = promote(qde::p1_basis(GaussRat(1), GaussRat(0), 30));
    Complex zl = log(Complex(Real(3) / 10));
    Real direct(0), term(1), z2(Real(9) / 100);
    for (unsigned k = 0; k <= 40; ++k) {
        if (k > 0) term *= z2 / (Real(k) * Real(k));
        direct += term;
    }
    CHECK(abs(ls_eval(u, zl) - Complex(direct)) < tol10(-12));

    // E_1 series evaluation matches -e^z Gamma(0,z)
    auto e1 = sf::ek_series(1, 60);
    Complex zl2 = log(Complex(Real(1) / 2));
    CHECK(abs(ls_eval(e1.series, zl2) + exp(exp(zl2)) * sf::gamma_upper0(zl2)) < tol10(-10));
}

TEST_CASE("evaluation is multiplicative up to truncation")
{
    Rng rng;
    auto a = rng.series(6, 1);
    auto b = rng.series(6, 1);
    auto ab = ls_mul(a, b);
    Complex zl = log(Complex(Real(1) / 100));
    Complex lhs = ls_eval(ab, zl);
    Complex rhs = ls_eval(a, zl) * ls_eval(b, zl);
    // both sides complete through z^6; the mismatch is the discarded tail,
    // bounded by the coefficient mass above order 6
    CHECK(abs(lhs - rhs) < tol10(-9));
}

TEST_CASE("truncation warning fires when the tail is fat")
{
    auto u = promote(qde::p1_basis(GaussRat(1), GaussRat(0), 3));
    EvalReport rep;
    ls_eval(u, log(Complex(Real(9))), &rep, tol10(-10));
    CHECK(rep.truncation_warning);
    ls_eval(u, log(Complex(Real(1) / 100)), &rep, tol10(-10));
    CHECK(!rep.truncation_warning);
}

TEST_CASE("theta respects a fractional exponent offset")
{
    ExactLogSeries s(2, 0);
    s.sigma = GaussRat(Rational(1, 2));
    s.at(0, 0) = GaussRat(1); // z^(1/2)
    s.at(1, 0) = GaussRat(3); // 3 z^(3/2)
    auto t = ls_theta(s);
    CHECK(t.coeff(0, 0) == GaussRat(Rational(1, 2)));
    CHECK(t.coeff(1, 0) == GaussRat(Rational(9, 2)));
    Complex v = ls_eval(t, log(Complex(Real(4))));
    // (1/2) * 2 + (9/2) * 8
    CHECK(abs(v - Complex(37)) < tol10(-45));
}

TEST_CASE("series serialization carries the truncation markers")
{
    auto u = qde::p1_basis(GaussRat(0), GaussRat(1), 2);
    std::string j = serialize::logseries_json(u);
    CHECK(j.find("\"kind\": \"exact\"") != std::string::npos);
    CHECK(j.find("\"ord_valid\": 5") != std::string::npos);
    CHECK(j.find("\"m\": 2") != std::string::npos);
    std::string csv = serialize::logseries_csv(promote(u));
    CHECK(csv.rfind("m,j,re,im", 0) == 0);
    CHECK(csv.find("2,1,") != std::string::npos); // b_1 log z entry at z^2
}

TEST_CASE("promotion carries every coefficient")
{
    Rng rng;
    auto a = rng.series(4, 2);
    auto p = promote(a);
    for (unsigned m = 0; m <= 4; ++m)
        for (unsigned j = 0; j <= 2; ++j) CHECK(abs(p.at(m, j) - to_complex(a.at(m, j))) == Real(0));
    CHECK(p.ord_valid == a.ord_valid);
}
