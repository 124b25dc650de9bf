#include <doctest.h>

#include "renorm/errors.hpp"
#include "renorm/series.hpp"

using namespace renorm;

namespace {

Series trunc(std::map<int, SymPoly> c, int lo, int hi) {
    return Series::truncated(std::move(c), lo, hi);
}

SymPoly pi2c(const Rat& q) { return SymPoly::monomial(Mono{1, 0, 0, 0}, q); }

}  // namespace

TEST_SUITE("series") {
    TEST_CASE("sympoly arithmetic and tau cap") {
        SymPoly::set_tau_cap(4);
        SymPoly p = SymPoly::pi2() * Rat(1, 6) + SymPoly::log_scale();
        CHECK(p.to_string() == "L + pi^2/6");
        CHECK((p - p).is_zero());
        CHECK(SymPoly(Rat(2)) * SymPoly(Rat(3, 2)) == SymPoly(Rat(3)));

        SymPoly t = SymPoly::tau();
        SymPoly t4 = t * t * t * t;
        CHECK(t4.degree_tau() == 4);
        CHECK((t4 * t).is_zero());  // beyond the cap
        CHECK(SymPoly::monomial(Mono{0, 0, 5, 0}, 1).is_zero());

        CHECK(t4.derivative_tau() == SymPoly::tau(3) * Rat(4));
        CHECK(t.subst_tau(Rat(1, 2)) == SymPoly(Rat(1, 2)));
        CHECK(SymPoly::u(2).set_u_zero().is_zero());
        CHECK(SymPoly(Rat(7)).set_u_zero() == SymPoly(Rat(7)));
    }

    TEST_CASE("monomial inversion and window shift") {
        Series z = Series::monomial(1, SymPoly(Rat(1)));
        Series zinv = invert(z);
        CHECK(zinv.exact());
        CHECK(zinv.coeff(-1) == SymPoly(Rat(1)));
        CHECK(equal_on_common_window(z * zinv, Series::constant(Rat(1))));
    }

    TEST_CASE("hand multiplication with window clipping") {
        // (1/z + pi^2 z / 6)(1 - L z) = 1/z - L + (pi^2/6) z - (pi^2 L/6) z^2
        Series a = trunc({{-1, SymPoly(Rat(1))}, {1, pi2c(Rat(1, 6))}}, -1, 2);
        Series b = trunc({{0, SymPoly(Rat(1))}, {1, -SymPoly::log_scale()}}, 0, 2);
        Series p = a * b;
        CHECK(p.lo() == -1);
        CHECK(p.hi() == 1);  // min(-1+2, 0+2)
        CHECK(p.coeff(-1) == SymPoly(Rat(1)));
        CHECK(p.coeff(0) == -SymPoly::log_scale());
        CHECK(p.coeff(1) == pi2c(Rat(1, 6)));
        CHECK_THROWS_AS(p.coeff(2), PrecisionError);
    }

    TEST_CASE("additive unit and window intersection") {
        Series a = trunc({{-1, SymPoly(Rat(2))}}, -1, 3);
        CHECK(equal_on_common_window(a + Series::zero(), a));
        CHECK((a + Series::zero()).hi() == 3);
        Series b = trunc({{0, SymPoly(Rat(5))}}, 0, 1);
        CHECK((a + b).hi() == 1);
        CHECK((a + b).lo() == -1);
    }

    TEST_CASE("geometric inversion") {
        // 1 - z, exact: needs a truncation order.
        Series one_minus_z = Series::constant(Rat(1)) - Series::monomial(1, SymPoly(Rat(1)));
        CHECK_THROWS_AS(invert(one_minus_z), PrecisionError);
        Series inv = invert(one_minus_z, 5);
        for (int k = 0; k <= 5; ++k) CHECK(inv.coeff(k) == SymPoly(Rat(1)));
        CHECK(equal_on_common_window(inv * one_minus_z, Series::constant(Rat(1))));
    }

    TEST_CASE("inversion rejects symbolic leading terms") {
        Series bad = Series::monomial(0, SymPoly::log_scale());
        CHECK_THROWS_AS(invert(bad), DomainError);
        CHECK_THROWS_AS(invert(Series::zero()), DomainError);
        try {
            invert(bad);
        } catch (const DomainError& e) {
            CHECK(std::string(e.what()).find("L") != std::string::npos);
        }
    }

    TEST_CASE("exponentials") {
        CHECK(equal_on_common_window(exp_series(Series::zero()), Series::constant(Rat(1))));

        Series arg = trunc({{1, -SymPoly::log_scale()}}, 1, 6);
        Series e1 = exp_series(arg);
        Series e2 = exp_z_linear(-SymPoly::log_scale(), 6);
        CHECK(equal_on_common_window(e1, e2));
        CHECK(e1.hi() >= 6);

        Series tz = Series::monomial(1, SymPoly::tau());
        Series prod = exp_series(tz) * exp_series(-tz);
        CHECK(equal_on_common_window(prod, Series::constant(Rat(1))));

        CHECK_THROWS_AS(exp_series(Series::monomial(-1, SymPoly(Rat(1)))), DomainError);
        CHECK_THROWS_AS(exp_series(Series::monomial(1, SymPoly(Rat(1)))), DomainError);
    }

    TEST_CASE("minimal subtraction") {
        Series a = trunc({{-2, SymPoly(Rat(2))}, {0, SymPoly(Rat(5))}, {1, SymPoly(Rat(1))}},
                         -2, 4);
        Series p = pole_part(a);
        CHECK(p.exact());
        CHECK(p.coeff(-2) == SymPoly(Rat(2)));
        CHECK(p.coeff(0).is_zero());
        CHECK(pole_part(trunc({{0, SymPoly(Rat(3))}}, 0, 2)).is_exact_zero());
        CHECK(equal_on_common_window(pole_part(a) + holomorphic_part(a), a));

        // Window must certify all negative coefficients.
        CHECK_THROWS_AS(pole_part(trunc({{-3, SymPoly(Rat(1))}}, -3, -2)), PrecisionError);
    }

    TEST_CASE("frozen instance of the Rota-Baxter relation") {
        // a = 1/z + z, b = 3/z - 2: both sides equal 3/z^2.
        Series a = trunc({{-1, SymPoly(Rat(1))}, {1, SymPoly(Rat(1))}}, -1, 4);
        Series b = trunc({{-1, SymPoly(Rat(3))}, {0, SymPoly(Rat(-2))}}, -1, 4);
        Series lhs = pole_part(pole_part(a) * b + a * pole_part(b) - a * b);
        Series rhs = pole_part(a) * pole_part(b);
        Series expect = Series::monomial(-2, SymPoly(Rat(3)));
        CHECK(equal_on_common_window(lhs, expect));
        CHECK(equal_on_common_window(rhs, expect));
    }

    TEST_CASE("residue and evaluation") {
        Series a = trunc({{-1, SymPoly(Rat(1))}, {0, SymPoly(Rat(3))}}, -1, 2);
        CHECK(residue(a) == SymPoly(Rat(1)));
        CHECK(residue(Series::monomial(2, SymPoly(Rat(1)))).is_zero());
        CHECK_THROWS_AS(residue(trunc({{-3, SymPoly(Rat(1))}}, -3, -2)), PrecisionError);

        Series h = trunc({{0, SymPoly(Rat(7))}, {1, SymPoly(Rat(2))}}, 0, 2);
        CHECK(eval_at_zero(h) == SymPoly(Rat(7)));
        CHECK_THROWS_AS(eval_at_zero(Series::monomial(-1, SymPoly(Rat(1)))), DomainError);
    }

    TEST_CASE("u substitution") {
        Series a = Series::constant(Rat(3)) +
                   Series::monomial(-1, SymPoly::u(1)) +
                   Series::monomial(0, SymPoly::u(2) * SymPoly::log_scale());
        Series b = set_u_zero(a);
        CHECK(equal_on_common_window(b, Series::constant(Rat(3))));
    }

    TEST_CASE("beta-function building block series") {
        Series b1 = bn_series(1, 6);
        CHECK(b1.lo() == -1);
        CHECK(b1.coeff(-1) == SymPoly(Rat(1)));
        CHECK(b1.coeff(0).is_zero());
        CHECK(b1.coeff(1) == pi2c(Rat(1, 6)));
        CHECK(b1.coeff(2).is_zero());
        CHECK(b1.coeff(3) == SymPoly::monomial(Mono{2, 0, 0, 0}, Rat(7, 360)));
        CHECK(b1.coeff(5) == SymPoly::monomial(Mono{3, 0, 0, 0}, Rat(31, 15120)));

        Series b2 = bn_series(2, 6);
        CHECK(b2.coeff(-1) == SymPoly(Rat(1, 2)));
        CHECK(b2.coeff(1) == pi2c(Rat(1, 3)));

        // Self-check: the building block times its own inverse is 1.
        Series b1_inv = invert(b1);
        CHECK(equal_on_common_window(b1 * b1_inv, Series::constant(Rat(1))));
        CHECK(b1_inv.lo() == 1);

        // b_n times the sine expansion divided by pi is 1 on the window.
        for (int n = 1; n <= 4; ++n) {
            std::map<int, SymPoly> sc;
            for (int k = 0; 2 * k + 1 <= 9; ++k) {
                Rat coeff = Rat((k % 2 == 0) ? 1 : -1) * rat_pow(Rat(n), 2 * k + 1) /
                            factorial(2 * k + 1);
                sc[2 * k + 1] = SymPoly::monomial(Mono{k, 0, 0, 0}, coeff);
            }
            Series sin_over_pi = trunc(std::move(sc), 1, 9);
            CHECK(equal_on_common_window(bn_series(n, 6) * sin_over_pi,
                                         Series::constant(Rat(1))));
        }
    }

    TEST_CASE("text rendering") {
        Series s = trunc({{-1, SymPoly(Rat(1))},
                          {0, -SymPoly::log_scale()},
                          {1, SymPoly::log_scale(2) * Rat(1, 2) + pi2c(Rat(1, 6))}},
                         -1, 2);
        CHECK(s.to_string() == "z^-1 - L + (L^2/2 + pi^2/6) z + O(z^3)");
        CHECK(Series::zero().to_string() == "0");
        CHECK(Series::constant(Rat(-3, 4)).to_string() == "-3/4");
    }
}
