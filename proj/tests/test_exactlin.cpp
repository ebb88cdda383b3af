#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qbl/errors.hpp>
#include <qbl/ratfun.hpp>

using namespace qbl;

namespace {

// deterministic small-rational generator
struct Rng {
    unsigned long long s = 0x9e3779b97f4a7c15ull;
    unsigned next(unsigned m)
    {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<unsigned>((s >> 33) % m);
    }
    GaussRat coeff()
    {
        long n = static_cast<long>(next(9)) - 4;
        return GaussRat(Rational(n, 1 + next(3)));
    }
    RatFunMatrix matrix(std::size_t n)
    {
        RatFunMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Poly num{coeff(), coeff()};
                Poly den{GaussRat(1), coeff()};
                m.at(i, j) = RatFun(num, den);
            }
        return m;
    }
};

} // namespace

TEST_CASE("polynomial normalization strips trailing zeros only")
{
    CHECK(Poly({GaussRat(0), GaussRat(0)}).is_zero());
    Poly p({GaussRat(24), GaussRat(-283)});
    CHECK(p.coeffs().size() == 2);
    CHECK(p.coeff(0) == GaussRat(24));
    CHECK(p.coeff(1) == GaussRat(-283));
    // content is preserved as-is; gcd-reduction is the separate explicit call
    Poly q({GaussRat(2), GaussRat(4), GaussRat(2)});
    CHECK(q.coeff(0) == GaussRat(2));
    CHECK(q.coeff(2) == GaussRat(2));
    GaussRat f;
    Poly qint = poly_integer_primitive(q, &f);
    CHECK(qint.coeff(0) == GaussRat(1));
    CHECK(f == GaussRat(Rational(1, 2)));
}

TEST_CASE("polynomial division, gcd and lcm")
{
    Poly a({GaussRat(-1), GaussRat(0), GaussRat(1)}); // z^2 - 1
    Poly b({GaussRat(1), GaussRat(1)});               // z + 1
    CHECK(poly_exact_div(a, b) == Poly({GaussRat(-1), GaussRat(1)}));
    CHECK(poly_gcd(a, b) == poly_monic(b));
    CHECK_THROWS_AS(poly_exact_div(b, a), DomainError);
    CHECK(poly_lcm(a, b) == poly_monic(a));
}

TEST_CASE("gaussian rational arithmetic")
{
    GaussRat i{Rational(0), Rational(1)};
    CHECK(i * i == GaussRat(-1));
    GaussRat z{Rational(1, 2), Rational(3)};
    CHECK(z / z == GaussRat(1));
    CHECK_THROWS_AS(z / GaussRat(0), DomainError);
}

TEST_CASE("rational function normal form")
{
    // den monic and coprime with num
    RatFun f(Poly{GaussRat(0), GaussRat(2)}, Poly{GaussRat(0), GaussRat(0), GaussRat(4)});
    CHECK(f == RatFun(Poly{GaussRat(Rational(1, 2))}, Poly{GaussRat(0), GaussRat(1)}));
    // normalization is idempotent by construction: re-normalizing the parts
    RatFun g(f.num(), f.den());
    CHECK(f == g);
}

TEST_CASE("matrix inverse: identity and diagonal")
{
    auto id = RatFunMatrix::identity(4);
    CHECK(ratfun_mat_inverse(id) == id);

    RatFunMatrix d(2, 2);
    d.at(0, 0) = RatFun::z();
    d.at(1, 1) = RatFun(Poly::one(), Poly::monomial(GaussRat(1), 1)); // 1/z
    auto dinv = ratfun_mat_inverse(d);
    CHECK(dinv.at(0, 0) == d.at(1, 1));
    CHECK(dinv.at(1, 1) == d.at(0, 0));
    CHECK(dinv.at(0, 1).is_zero());
}

TEST_CASE("matrix inverse: exact two-sided identity on random matrices")
{
    Rng rng;
    for (int it = 0; it < 5; ++it) {
        auto m = rng.matrix(3);
        RatFunMatrix inv;
        try {
            inv = ratfun_mat_inverse(m);
        } catch (const SingularMatrix&) {
            continue; // random singular draw
        }
        CHECK(m * inv == RatFunMatrix::identity(3));
        CHECK(inv * m == RatFunMatrix::identity(3));
    }
}

TEST_CASE("singular matrix is detected exactly")
{
    RatFunMatrix m(2, 2);
    m.at(0, 0) = RatFun(1);
    m.at(0, 1) = RatFun::z();
    m.at(1, 0) = RatFun(2);
    m.at(1, 1) = RatFun(Poly{GaussRat(0), GaussRat(2)}); // second row = 2 * first
    CHECK(ratfun_det(m).is_zero());
    CHECK_THROWS_AS(ratfun_mat_inverse(m), SingularMatrix);
}

TEST_CASE("determinant is multiplicative")
{
    Rng rng;
    for (int it = 0; it < 5; ++it) {
        auto a = rng.matrix(3);
        auto b = rng.matrix(3);
        CHECK(ratfun_det(a * b) == ratfun_det(a) * ratfun_det(b));
    }
}

TEST_CASE("determinant of the identity and serialization form")
{
    CHECK(ratfun_det(RatFunMatrix::identity(4)) == RatFun(1));
    RatFun f(Poly{GaussRat(0), GaussRat(1)}, Poly{GaussRat(24), GaussRat(-283)});
    CHECK(f.to_string() == "(-z) / (283*z - 24)");
}
