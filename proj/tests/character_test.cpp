#include <doctest.h>

#include "renorm/character.hpp"
#include "renorm/errors.hpp"

using namespace renorm;

namespace {

Config cfg() {
    Config c;
    SymPoly::set_tau_cap(c.tau_cap);
    return c;
}

SymPoly pi2c(const Rat& q) { return SymPoly::monomial(Mono{1, 0, 0, 0}, q); }

}  // namespace

TEST_SUITE("characters") {
    TEST_CASE("toy character values on small trees") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        int hi = c.build_hi();

        Series dot = phi(parse_tree("[]"));
        CHECK(dot.coeff(-1) == SymPoly(Rat(1)));
        CHECK(dot.coeff(0) == -SymPoly::log_scale());
        CHECK(dot.coeff(1) == SymPoly::log_scale(2) * Rat(1, 2) + pi2c(Rat(1, 6)));

        Series cherry = phi(parse_tree("[[][]]"));
        Series expect = exp_z_linear(SymPoly::log_scale() * Rat(-3), hi) * bn_series(3, hi) *
                        bn_series(1, hi) * bn_series(1, hi);
        CHECK(equal_on_common_window(cherry, expect));

        Series tf41 = phi(parse_tree("[[][[]]]"));
        Series expect41 = exp_z_linear(SymPoly::log_scale() * Rat(-4), hi) * bn_series(4, hi) *
                          bn_series(2, hi) * bn_series(1, hi) * bn_series(1, hi);
        CHECK(equal_on_common_window(tf41, expect41));

        // Multiplicative on forests.
        CHECK(equal_on_common_window(phi(parse_forest("[] []")),
                                     phi(parse_tree("[]")) * phi(parse_tree("[]"))));
        std::string detail;
        CHECK(is_character_on(phi, 4, &detail));
    }

    TEST_CASE("convolution unit and primitive expansion") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        LinMap e = LinMap::counit_character();
        std::string detail;
        CHECK(equal_on_forests(convolve(e, phi), phi, 3, 1, &detail));
        CHECK(equal_on_forests(convolve(phi, e), phi, 3, 1, &detail));

        // On a primitive element the convolution has only the two unit terms.
        LinMap inv = star_inverse(phi);
        Series lhs = convolve(phi, inv)(parse_tree("[]"));
        Series direct = phi(parse_tree("[]")) * inv(Forest()) + phi(Forest()) * inv(parse_tree("[]"));
        CHECK(equal_on_common_window(lhs, direct));
        CHECK(lhs.is_zero_on_window());  // antipode axiom through the character
        CHECK(convolve(phi, inv)(parse_tree("[[]]")).is_zero_on_window());
    }

    TEST_CASE("both inversion routes agree") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        LinMap via_antipode = star_inverse(phi);
        LinMap via_geometric = star_inverse_geometric(phi);
        std::string detail;
        CHECK(equal_on_forests(via_antipode, via_geometric, 4, 1, &detail));
        CHECK(equal_on_forests(star_inverse(via_antipode), phi, 4, 1, &detail));
        CHECK(equal_on_common_window(via_antipode(parse_tree("[]")),
                                     -phi(parse_tree("[]"))));
        CHECK_THROWS_AS(star_inverse(rtilde(phi)), DomainError);
    }

    TEST_CASE("star exponential and logarithm") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        LinMap xi = LinMap::infinitesimal(
            [phi](const Tree& t) { return Series::constant(residue(phi(t))); });
        LinMap e = LinMap::counit_character();
        std::string detail;
        CHECK(equal_on_forests(exp_star(LinMap::infinitesimal([](const Tree&) {
                                   return Series::zero();
                               })),
                               e, 4, 0, &detail));
        CHECK(equal_on_forests(log_star(exp_star(xi)), xi, 4, 0, &detail));
        CHECK(is_character_on(exp_star(xi), 5, &detail));
        CHECK(is_infinitesimal_on(xi, 5, &detail));
        CHECK_THROWS_AS(exp_star(phi), DomainError);
        CHECK_THROWS_AS(log_star(xi), DomainError);
    }

    TEST_CASE("grading composition is a star derivation") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        LinMap g = star_inverse(phi);
        CHECK(compose_grading(phi)(Forest()).is_zero_on_window());
        CHECK(equal_on_common_window(compose_grading(phi)(parse_tree("[[][]]")),
                                     phi(parse_tree("[[][]]")) * Rat(3)));
        LinMap lhs = compose_grading(convolve(phi, g));
        LinMap rhs1 = convolve(compose_grading(phi), g);
        LinMap rhs2 = convolve(phi, compose_grading(g));
        for (int d = 0; d <= 4; ++d)
            for (const Forest& f : enumerate_forests(d))
                CHECK(equal_on_common_window(lhs(f), rhs1(f) + rhs2(f)));
    }

    TEST_CASE("scale flow") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        std::string detail;
        CHECK(equal_on_forests(scale_flow(phi, Rat(0)), phi, 3, 1, &detail));

        Series flowed = scale_flow(phi, Rat(1))(parse_tree("[]"));
        Series v = phi(parse_tree("[]"));
        Series expect = v * exp_z_linear(SymPoly(Rat(1)), v.hi() - v.lo());
        CHECK(equal_on_common_window(flowed, expect));

        LinMap twice = scale_flow(scale_flow(phi, Rat(1, 2)), Rat(1, 3));
        LinMap once = scale_flow(phi, Rat(5, 6));
        CHECK(equal_on_common_window(twice(parse_tree("[[][]]")), once(parse_tree("[[][]]"))));

        // d/dtau at 0 of the symbolic flow is z deg times the value.
        Series sym = scale_flow_tau(phi)(parse_tree("[[]]"));
        Series deriv_at_zero = subst_tau(derivative_tau(sym), Rat(0));
        Series expect2 = phi(parse_tree("[[]]")).shifted(1) * Rat(2);
        CHECK(equal_on_common_window(deriv_at_zero, expect2));
    }

    TEST_CASE("rtilde basics") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        LinMap e = LinMap::counit_character();
        for (int d = 0; d <= 3; ++d)
            for (const Forest& f : enumerate_forests(d))
                CHECK(rtilde(e)(f).is_zero_on_window());
        // On the primitive generator rtilde(phi) collapses to phi itself.
        CHECK(equal_on_common_window(rtilde(phi)(parse_tree("[]")), phi(parse_tree("[]"))));
        std::string detail;
        CHECK(is_infinitesimal_on(rtilde(phi), 4, &detail));
    }

    TEST_CASE("h flow and renormalization group basics") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        LinMap e = LinMap::counit_character();
        std::string detail;
        CHECK(equal_on_forests(h_flow(phi, Rat(0)), e, 3, 1, &detail));
        // h values are holomorphic, so the limit exists.
        LinMap f = renorm_group(phi, Rat(1, 2));
        CHECK(equal_on_common_window(f(Forest()), Series::constant(Rat(1))));
        Series f_dot = f(parse_tree("[]"));
        CHECK(f_dot.exact());
        CHECK(f_dot.coeff(0).degree_l() == 0);
    }

    TEST_CASE("renormalization group limit rejects poles") {
        cfg();
        // A unital map with a bare pole at the primitive tree cannot have a
        // z -> 0 limit of its own values.
        LinMap bad = LinMap::from_forest_fn(LinMap::Kind::Unital, [](const Forest& f) {
            if (f.empty()) return Series::constant(Rat(1));
            return Series::monomial(-f.degree(), SymPoly(Rat(1)));
        });
        LinMap h = convolve(star_inverse(bad), bad);  // fine: equals e
        CHECK(h(parse_tree("[]")).is_zero_on_window());
        CHECK_THROWS_AS(eval_at_zero(bad(parse_tree("[]"))), DomainError);
    }
}
