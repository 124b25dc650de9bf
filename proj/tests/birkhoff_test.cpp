#include <doctest.h>

#include "renorm/birkhoff.hpp"
#include "renorm/errors.hpp"

using namespace renorm;

namespace {

Config cfg() {
    Config c;
    SymPoly::set_tau_cap(c.tau_cap);
    return c;
}

SymPoly pi2c(const Rat& q) { return SymPoly::monomial(Mono{1, 0, 0, 0}, q); }

Series pole(std::map<int, SymPoly> c) {
    int lo = c.begin()->first;
    return Series::truncated(std::move(c), lo, kExactHi);
}

}  // namespace

TEST_SUITE("birkhoff") {
    TEST_CASE("preparation map on the primitive tree") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        Series rbar = bogoliubov_bar(phi, {}, parse_forest("[]"));
        CHECK(equal_on_common_window(rbar, phi(parse_tree("[]"))));
        CHECK_THROWS_AS(bogoliubov_bar(phi, {}, Forest()), DomainError);
    }

    TEST_CASE("preparation map needs the lower-degree values") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        CHECK_THROWS_AS(bogoliubov_bar(phi, {}, parse_forest("[[][]]")), Error);

        BirkhoffPair pair = birkhoff_decompose(phi);
        std::map<Forest, Series> partial;
        partial[parse_forest("[]")] = pair.minus(parse_forest("[]"));
        partial[parse_forest("[] []")] = pair.minus(parse_forest("[] []"));
        Series rbar = bogoliubov_bar(phi, partial, parse_forest("[[][]]"));
        // R-bar(cherry) = phi(cherry) + 2 m(dot) phi(l2) + m(dot dot) phi(dot).
        Series direct = phi(parse_tree("[[][]]")) +
                        pair.minus(parse_tree("[]")) * phi(parse_tree("[[]]")) * Rat(2) +
                        pair.minus(parse_forest("[] []")) * phi(parse_tree("[]"));
        CHECK(equal_on_common_window(rbar, direct));
        // The counter term is minus the pole part of the prepared value.
        CHECK(equal_on_common_window(pair.minus(parse_tree("[[][]]")), -pole_part(rbar)));
    }

    TEST_CASE("counter terms of the toy model") {
        Config c = cfg();
        BirkhoffPair pair = birkhoff_decompose(toy_character(c));
        CHECK(equal_on_common_window(pair.minus(parse_tree("[]")),
                                     pole({{-1, SymPoly(Rat(-1))}})));
        CHECK(equal_on_common_window(pair.minus(parse_tree("[[]]")),
                                     pole({{-2, SymPoly(Rat(1, 2))}})));
        CHECK(equal_on_common_window(
            pair.minus(parse_tree("[[][]]")),
            pole({{-3, SymPoly(Rat(-1, 3))}, {-1, pi2c(Rat(1, 18))}})));
        CHECK(equal_on_common_window(
            pair.minus(parse_tree("[[[]]]")),
            pole({{-3, SymPoly(Rat(-1, 6))}, {-1, pi2c(Rat(-1, 18))}})));
        CHECK(equal_on_common_window(
            pair.minus(parse_tree("[[][][]]")),
            pole({{-4, SymPoly(Rat(1, 4))}, {-2, pi2c(Rat(-1, 24))}})));
        CHECK(equal_on_common_window(pair.minus(parse_tree("[[][[]]]")),
                                     pole({{-4, SymPoly(Rat(1, 8))}})));

        // Multiplicativity on the simplest product, checked by hand.
        CHECK(equal_on_common_window(
            pair.minus(parse_forest("[] []")),
            pair.minus(parse_tree("[]")) * pair.minus(parse_tree("[]"))));
    }

    TEST_CASE("renormalized values are finite at z = 0") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        BirkhoffPair pair = birkhoff_decompose(phi);
        SymPoly at_zero = eval_at_zero(pair.plus(parse_tree("[]")));
        CHECK(at_zero == -SymPoly::log_scale());
        // plus = minus star phi.
        Series direct = convolve(pair.minus, phi)(parse_tree("[[][]]"));
        CHECK(equal_on_common_window(direct, pair.plus(parse_tree("[[][]]"))));
    }

    TEST_CASE("locality") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        BirkhoffPair pair = birkhoff_decompose(phi);
        LocalityReport rep = locality_check(pair, 4);
        CHECK(rep.local);

        // The unrenormalized character itself is not pole-only: flagged.
        BirkhoffPair fake{phi, LinMap::counit_character()};
        LocalityReport bad = locality_check(fake, 2);
        CHECK_FALSE(bad.local);
        REQUIRE(bad.witness.has_value());
        CHECK(*bad.witness == parse_tree("[]"));
    }

    TEST_CASE("scalar beta values") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        BirkhoffPair pair = birkhoff_decompose(phi);
        CHECK(beta_scalar(phi, pair, parse_tree("[]")) == SymPoly(Rat(1)));
        CHECK(beta_scalar(phi, pair, parse_tree("[[]]")).is_zero());
        CHECK(beta_scalar(phi, pair, parse_tree("[[][]]")) == pi2c(Rat(-1, 6)));
        CHECK(beta_scalar(phi, pair, parse_tree("[[[]]]")) == pi2c(Rat(1, 6)));
        CHECK(beta_scalar(phi, pair, parse_tree("[[][][]]")).is_zero());
        CHECK(beta_scalar(phi, pair, parse_tree("[[][[]]]")).is_zero());
    }

    TEST_CASE("decomposition requires a character") {
        LinMap xi = LinMap::infinitesimal([](const Tree&) { return Series::zero(); });
        CHECK_THROWS_AS(birkhoff_decompose(xi), DomainError);
    }
}
