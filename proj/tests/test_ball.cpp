#include <repdiff/ball.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "test_util.hpp"

using repdiff::Ball;
using repdiff::BigInt;
using repdiff::Cmp;
using repdiff::Rational;
using testutil::dec;
using testutil::pow10;
using testutil::span;

TEST_CASE("exact and rational constructors enclose their value", "[ball]") {
    CHECK(Ball::exact(2L).contains(Rational(2)));
    CHECK(Ball::exact(2L).is_exact());
    CHECK(Ball::exact(BigInt("123456789123456789123456789")).is_exact());

    Ball third = Ball::from_rational(Rational(1, 3));
    CHECK(third.contains(Rational(1, 3)));
    CHECK_FALSE(third.is_exact());
    CHECK(third.upper_rational() - third.lower_rational() < Rational(1, pow10(600)));

    // dyadic rationals are representable, hence exact
    CHECK(Ball::from_rational(Rational(5, 2)).is_exact());
}

TEST_CASE("field operations enclose the exact rational image", "[ball]") {
    const std::vector<Rational> grid = {Rational(-22, 7), Rational(-3),      Rational(-1, 2),
                                        Rational(0),      Rational(1, 7),    Rational(2, 3),
                                        Rational(3),      Rational(355, 113)};
    const Rational slack(1, pow10(400));
    for (const Rational& x : grid) {
        for (const Rational& y : grid) {
            Ball bx = Ball::from_rational(x);
            Ball by = Ball::from_rational(y);
            Ball s = bx + by;
            CHECK(s.contains(Rational(x + y)));
            CHECK(s.upper_rational() - s.lower_rational() < slack);
            CHECK((bx - by).contains(Rational(x - y)));
            CHECK((bx * by).contains(Rational(x * y)));
            CHECK((-bx).contains(Rational(-x)));
            CHECK(abs(bx).contains(Rational(abs(x))));
            if (y != 0) {
                Ball q = bx / by;
                CHECK(q.contains(Rational(x / y)));
                CHECK(q.upper_rational() - q.lower_rational() < slack);
            }
        }
    }
}

TEST_CASE("division by zero distinguishes definite from undecided", "[ball]") {
    bool undecided = false, definite = false;
    try {
        Ball q = Ball::exact(1L) / Ball::exact(0L);
        (void)q;
    } catch (const repdiff::undecidable_error&) {
        undecided = true;
    } catch (const std::domain_error&) {
        definite = true;
    }
    CHECK(definite);
    CHECK_FALSE(undecided);

    CHECK_THROWS_AS(Ball::exact(1L) / span(Rational(-1), Rational(1)),
                    repdiff::undecidable_error);
}

TEST_CASE("sqrt: monotone endpoint enclosure", "[ball]") {
    for (const Rational& x : {Rational(0), Rational(2), Rational(4), Rational(7, 5),
                              Rational(BigInt(pow10(20)))}) {
        Ball s = sqrt(Ball::from_rational(x));
        Rational lo = s.lower_rational(), hi = s.upper_rational();
        CHECK(lo * lo <= x);
        CHECK(hi * hi >= x);
        CHECK(lo >= 0);
    }
    CHECK_THROWS_AS(sqrt(Ball::exact(-2L)), std::domain_error);
    CHECK_THROWS_AS(sqrt(span(Rational(-1), Rational(2))), repdiff::undecidable_error);
}

TEST_CASE("log matches a 110-digit reference for log(1 + sqrt 2)", "[ball]") {
    const std::string digits =
        "881373587019543025232609324979792309028160328261635410753295608653377184222026087833706891"
        "91025604285673981619";
    Rational t(BigInt(digits), pow10(digits.size()));
    Rational ulp(1, pow10(digits.size()));
    Ball v = log(Ball::exact(1L) + sqrt(Ball::exact(2L)));
    CHECK(v.lower_rational() > t - ulp);
    CHECK(v.upper_rational() < t + ulp);

    CHECK(log(Ball::exact(1L)).is_exact());
    CHECK(log(Ball::exact(1L)).certified_sign() == 0);
    CHECK(log(exp(Ball::exact(1L))).contains(Rational(1)));

    CHECK_THROWS_AS(log(Ball::exact(-1L)), std::domain_error);
    bool undecided = false;
    try {
        Ball v2 = log(span(Rational(-1), Rational(1)));
        (void)v2;
    } catch (const repdiff::undecidable_error&) {
        undecided = true;
    }
    CHECK(undecided);
}

TEST_CASE("integer powers", "[ball]") {
    CHECK(pow_int(Ball::exact(3L), 5).contains(Rational(243)));
    CHECK(pow_int(Ball::from_rational(Rational(-3, 2)), 3).contains(Rational(-27, 8)));
    CHECK(pow_int(Ball::exact(2L), -3).contains(Rational(1, 8)));
    CHECK(pow_int(span(Rational(0), Rational(3)), 0).is_exact());
    CHECK(pow_int(span(Rational(0), Rational(3)), 0).contains(Rational(1)));

    // sign-mixed base goes through ball products and stays an enclosure
    Ball mixed = pow_int(span(Rational(-1), Rational(2)), 2);
    CHECK(mixed.contains(Rational(0)));
    CHECK(mixed.contains(Rational(4)));

    CHECK_THROWS_AS(pow_int(span(Rational(-1), Rational(2)), -2), repdiff::undecidable_error);
}

TEST_CASE("nearest integer distance", "[ball]") {
    Ball at3 = repdiff::nearest_int_distance(Ball::exact(3L));
    CHECK(at3.is_exact());
    CHECK(at3.upper_rational() == 0);

    Ball athalf = repdiff::nearest_int_distance(Ball::from_rational(Rational(5, 2)));
    CHECK(athalf.contains(Rational(1, 2)));
    CHECK(athalf.upper_rational() <= Rational(1, 2));

    Rational d(49271, 10000000);
    Ball near7 = repdiff::nearest_int_distance(Ball::from_rational(Rational(7) + d));
    CHECK(near7.contains(d));
    CHECK(near7.upper_rational() - near7.lower_rational() < Rational(1, pow10(300)));

    Rational dd = Rational(1, 2) - Rational(1, pow10(30));
    CHECK(repdiff::nearest_int_distance(Ball::from_rational(Rational(5, 2) - Rational(1, pow10(30))))
              .contains(dd));

    Ball neg = repdiff::nearest_int_distance(Ball::from_rational(Rational(-22, 7)));
    CHECK(neg.contains(Rational(1, 7)));

    // wide input degrades to the trivial enclosure, never an error
    Ball wide = repdiff::nearest_int_distance(span(Rational(0), Rational(10)));
    CHECK(wide.lower_rational() == 0);
    CHECK(wide.upper_rational() == Rational(1, 2));
}

TEST_CASE("three-valued comparison", "[ball]") {
    CHECK(compare(Ball::exact(1L), Ball::exact(2L)) == Cmp::less);
    CHECK(compare(Ball::exact(2L), Ball::exact(1L)) == Cmp::greater);
    CHECK(compare(span(Rational(0), Rational(2)), Ball::exact(1L)) == Cmp::undecidable);
    // no "equal" verdict: coincident enclosures stay undecidable
    CHECK(compare(Ball::exact(1L), Ball::exact(1L)) == Cmp::undecidable);
}

TEST_CASE("certified integer decisions", "[ball]") {
    CHECK(Ball::from_rational(Rational(7, 2)).certified_floor() == BigInt(3));
    CHECK(Ball::from_rational(Rational(-7, 2)).certified_floor() == BigInt(-4));
    CHECK(Ball::exact(5L).certified_floor() == BigInt(5));
    CHECK_FALSE(span(dec("2.9999"), dec("3.0001")).certified_floor().has_value());

    CHECK(Ball::from_rational(Rational(7, 3)).ceil_upper() == 3);
    CHECK(Ball::from_rational(Rational(7, 3)).floor_lower() == 2);
    CHECK(Ball::exact(5L).ceil_upper() == 5);
    CHECK(Ball::exact(5L).floor_lower() == 5);

    CHECK(Ball::exact(5L).certainly_le(BigInt(5)));
    CHECK(Ball::exact(5L).certainly_ge(BigInt(5)));
    CHECK(Ball::from_rational(Rational(1, 3)).certainly_le(BigInt(1)));
    CHECK_FALSE(Ball::from_rational(Rational(1, 3)).certainly_ge(BigInt(1)));

    CHECK(Ball::exact(3L).certified_sign() == 1);
    CHECK(Ball::exact(-3L).certified_sign() == -1);
    CHECK(Ball::exact(0L).certified_sign() == 0);
    CHECK_FALSE(span(Rational(-1), Rational(1)).certified_sign().has_value());
}

TEST_CASE("refinement transports enclosures inward", "[ball]") {
    auto expr = [](mpfr_prec_t p) {
        return log(sqrt(Ball::exact(2L, p)) + Ball::exact(1L, p)) *
               Ball::from_rational(Rational(3, 7), p);
    };
    Ball coarse = expr(512);
    Ball fine = expr(1024);
    CHECK(coarse.contains(fine));
    CHECK(fine.upper_rational() - fine.lower_rational() <
          coarse.upper_rational() - coarse.lower_rational());
}

TEST_CASE("adaptive refinement", "[ball]") {
    // 1 + 10^-40 is indistinguishable from 1 at 64 and 128 bits; the retry
    // loop must settle the floor without exhausting its doubling budget.
    Rational v = Rational(1) + Rational(1, pow10(40));
    BigInt f = repdiff::refine(
        [&](mpfr_prec_t p) {
            auto fl = Ball::from_rational(v, p).certified_floor();
            if (!fl) throw repdiff::undecidable_error("floor undecided");
            return *fl;
        },
        64);
    CHECK(f == 1);

    CHECK_THROWS_AS(repdiff::refine(
                        [](mpfr_prec_t) -> int {
                            throw repdiff::undecidable_error("never decidable");
                        },
                        64),
                    repdiff::precision_exhausted_error);
}

TEST_CASE("endpoint constructor rejects inverted intervals", "[ball]") {
    repdiff::detail::Raw lo(64), hi(64);
    mpfr_set_si(lo, 2, MPFR_RNDN);
    mpfr_set_si(hi, 1, MPFR_RNDN);
    CHECK_THROWS_AS(Ball::from_endpoints(lo, hi, 64), std::logic_error);
}
