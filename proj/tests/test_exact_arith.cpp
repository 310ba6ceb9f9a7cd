#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopcas/laurent.hpp"
#include "loopcas/rational.hpp"
#include "test_support.hpp"

using namespace loopcas;

TEST_CASE("rational canonical form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(-4, -2) == Rational(2));
    CHECK(Rational(0, 7) == Rational());
    CHECK(Rational(0).to_string() == "0");
    CHECK(Rational(-3, 2).to_string() == "-3/2");
    CHECK(Rational(7, 1).to_string() == "7");
}

TEST_CASE("rational arithmetic and order") {
    Rational a(1, 2), b(1, 3);
    CHECK(a + b == Rational(5, 6));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 6));
    CHECK(a / b == Rational(3, 2));
    CHECK(a > b);
    CHECK(Rational(-1, 2) < Rational(1, 3));
    CHECK_THROWS_AS(a / Rational(0), std::domain_error);
    CHECK_THROWS_AS(Rational(0).inverse(), std::domain_error);
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK(Rational(5).pow(0) == Rational(1));
}

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-6/4") == Rational(-3, 2));
    CHECK(Rational::parse(" 12 ") == Rational(12));
    CHECK(!Rational::parse("1/0").has_value());
    CHECK(!Rational::parse("a").has_value());
    CHECK(!Rational::parse("1.5").has_value());
    CHECK(!Rational::parse("").has_value());
}

TEST_CASE("rational arbitrary precision") {
    Rational big = Rational(10).pow(40) + Rational(1);
    CHECK(big.to_string() == "10000000000000000000000000000000000000001");
    CHECK((big - Rational(10).pow(40)) == Rational(1));
}

TEST_CASE("laurent products") {
    LaurentPoly t = LaurentPoly::t();
    LaurentPoly tinv = LaurentPoly::t(-1);
    CHECK(t * tinv == LaurentPoly::one());

    LaurentPoly p = LaurentPoly::monomial(3, Rational(2)) + LaurentPoly::monomial(-1, Rational(1, 2));
    CHECK(p * LaurentPoly::one() == p);

    LaurentPoly lin1 = t - LaurentPoly::constant(Rational(1));
    LaurentPoly lin2 = t - LaurentPoly::constant(Rational(2));
    LaurentPoly expect = LaurentPoly::monomial(2) + LaurentPoly::monomial(1, Rational(-3)) +
                         LaurentPoly::constant(Rational(2));
    CHECK(lin1 * lin2 == expect);
}

TEST_CASE("laurent evaluation") {
    LaurentPoly q = LaurentPoly::monomial(2) + LaurentPoly::monomial(1, Rational(-3)) +
                    LaurentPoly::constant(Rational(2));
    CHECK(q.eval(Rational(1)) == Rational(0));
    CHECK(q.eval(Rational(2)) == Rational(0));
    CHECK(LaurentPoly::one().eval(Rational(7, 3)) == Rational(1));
    CHECK(LaurentPoly::t(-1).eval(Rational(2)) == Rational(1, 2));
    CHECK_THROWS_AS(LaurentPoly::t(-1).eval(Rational(0)), std::domain_error);
    // nonnegative exponents evaluate fine at zero
    CHECK(q.eval(Rational(0)) == Rational(2));
}

TEST_CASE("laurent text form") {
    LaurentPoly p = LaurentPoly::monomial(-1, Rational(2)) + LaurentPoly::one() + LaurentPoly::monomial(3, Rational(-1));
    CHECK(p.to_string() == "2*t^-1 + 1 - t^3");
    CHECK(LaurentPoly::zero().to_string() == "0");
    CHECK(LaurentPoly::t().to_string() == "t");
    CHECK(LaurentPoly::monomial(1, Rational(-1, 2)).to_string() == "-1/2*t");
}

TEST_CASE("laurent ring axioms on random triples") {
    test::Rng rng(0x1001);
    auto random_poly = [&] {
        LaurentPoly p;
        int terms = static_cast<int>(rng.range(0, 4));
        for (int i = 0; i < terms; ++i)
            p += LaurentPoly::monomial(rng.range(-3, 3), rng.rational());
        return p;
    };
    for (int iter = 0; iter < 200; ++iter) {
        LaurentPoly a = random_poly(), b = random_poly(), c = random_poly();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    test::Rng rng(0x1002);
    for (int iter = 0; iter < 100; ++iter) {
        LaurentPoly p, q;
        for (int i = 0; i < 3; ++i) {
            p += LaurentPoly::monomial(rng.range(-2, 3), rng.rational());
            q += LaurentPoly::monomial(rng.range(-2, 3), rng.rational());
        }
        Rational c = rng.nonzero_rational();
        CHECK((p * q).eval(c) == p.eval(c) * q.eval(c));
        CHECK((p + q).eval(c) == p.eval(c) + q.eval(c));
    }
}

TEST_CASE("lagrange basis at d=(1,2)") {
    auto basis = lagrange_basis({Rational(1), Rational(2)});
    REQUIRE(basis.size() == 2);
    // p1 = -t + 2, p2 = t - 1
    CHECK(basis[0] == LaurentPoly::monomial(1, Rational(-1)) + LaurentPoly::constant(Rational(2)));
    CHECK(basis[1] == LaurentPoly::t() - LaurentPoly::one());
}

TEST_CASE("lagrange identities over random points") {
    test::Rng rng(0x1003);
    for (int iter = 0; iter < 50; ++iter) {
        int n = static_cast<int>(rng.range(1, 5));
        std::vector<Rational> d;
        while (static_cast<int>(d.size()) < n) {
            Rational x = rng.nonzero_rational(9, 5);
            bool dup = false;
            for (const auto& y : d) dup = dup || (x == y);
            if (!dup) d.push_back(x);
        }
        auto basis = lagrange_basis(d);
        LaurentPoly sum;
        for (int i = 0; i < n; ++i) {
            sum += basis[static_cast<std::size_t>(i)];
            for (int j = 0; j < n; ++j)
                CHECK(basis[static_cast<std::size_t>(i)].eval(d[static_cast<std::size_t>(j)]) ==
                      Rational(i == j ? 1 : 0));
        }
        CHECK(sum == LaurentPoly::one());
    }
}

TEST_CASE("lagrange input errors") {
    CHECK_THROWS_AS(lagrange_basis({Rational(0), Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(lagrange_basis({Rational(2), Rational(2)}), std::invalid_argument);
    CHECK_THROWS_AS(lagrange_basis({}), std::invalid_argument);
}

TEST_CASE("vanishing polynomial kills its points") {
    std::vector<Rational> d{Rational(1), Rational(2), Rational(-1, 2)};
    LaurentPoly p = vanishing_poly(d);
    for (const auto& x : d) CHECK(p.eval(x) == Rational(0));
    CHECK(p.eval(Rational(3)) != Rational(0));
}
