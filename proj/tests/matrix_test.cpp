#include <doctest.h>

#include "renorm/errors.hpp"
#include "renorm/matrix.hpp"

using namespace renorm;

namespace {

Config cfg() {
    Config c;
    SymPoly::set_tau_cap(c.tau_cap);
    return c;
}

}  // namespace

TEST_SUITE("matrix") {
    TEST_CASE("coideal closures") {
        CoidealBasis five = CoidealBasis::closure({parse_tree("[[][][]]")});
        REQUIRE(five.size() == 5);
        CHECK(five.element(0).empty());
        CHECK(five.element(1) == parse_forest("[]"));
        CHECK(five.element(2) == parse_forest("[[]]"));
        CHECK(five.element(3) == parse_forest("[[][]]"));
        CHECK(five.element(4) == parse_forest("[[][][]]"));

        CoidealBasis two = CoidealBasis::closure({parse_tree("[]")});
        CHECK(two.size() == 2);

        CoidealBasis ladder = CoidealBasis::closure({parse_tree("[[[]]]")});
        REQUIRE(ladder.size() == 4);
        CHECK(ladder.element(3) == parse_forest("[[[]]]"));
        CHECK(ladder.element(2) == parse_forest("[[]]"));
    }

    TEST_CASE("coproduct matrix on the two-element coideal") {
        CoidealBasis basis = CoidealBasis::closure({parse_tree("[]")});
        HopfMatrix m = coproduct_matrix(basis);
        CHECK(m.at(0, 0) == HopfElement::unit());
        CHECK(m.at(1, 0) == HopfElement::from(parse_tree("[]")));
        CHECK(m.at(1, 1) == HopfElement::unit());
        CHECK(m.at(0, 1).is_zero());
    }

    TEST_CASE("a basis missing a cotree is rejected") {
        CoidealBasis bad = CoidealBasis::from_elements({parse_forest("[[][]]")});
        try {
            coproduct_matrix(bad);
            FAIL("expected a missing-cotree error");
        } catch (const DomainError& e) {
            CHECK(std::string(e.what()).find("[[]]") != std::string::npos);
        }
    }

    TEST_CASE("the antipode matrix is the inverse of the coproduct matrix") {
        CoidealBasis basis = CoidealBasis::closure({parse_tree("[[][][]]")});
        HopfMatrix m = coproduct_matrix(basis);
        int n = m.size();
        // Geometric series over the Hopf-valued entries: 1 + sum (1-M)^k.
        HopfMatrix nil(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) nil.at(i, j) = m.at(i, j);
        HopfMatrix inv(n), pow(n);
        for (int i = 0; i < n; ++i) {
            inv.at(i, i) = HopfElement::unit();
            pow.at(i, i) = HopfElement::unit();
        }
        for (int k = 1; k < n; ++k) {
            HopfMatrix next(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    HopfElement sum;
                    for (int l = 0; l < n; ++l) sum += pow.at(i, l) * nil.at(l, j);
                    next.at(i, j) = sum;
                }
            pow = next;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    HopfElement term = pow.at(i, j) * Rat(k % 2 == 0 ? 1 : -1);
                    inv.at(i, j) += term;
                }
        }
        CHECK(inv == antipode_matrix(m));
    }

    TEST_CASE("psi of the unit map is the identity") {
        CoidealBasis basis = CoidealBasis::closure({parse_tree("[[][][]]")});
        TriMatrix id = psi(LinMap::counit_character(), coproduct_matrix(basis));
        std::string detail;
        CHECK(equal_matrices(id, TriMatrix::identity(basis.size()), &detail));
    }

    TEST_CASE("unipotent inverse, log and exp") {
        TriMatrix m = TriMatrix::identity(2);
        m.at(1, 0) = Series::monomial(-1, SymPoly(Rat(1)));
        TriMatrix inv = mat_inverse_unipotent(m);
        CHECK(equal_on_common_window(inv.at(1, 0), Series::monomial(-1, SymPoly(Rat(-1)))));
        std::string detail;
        CHECK(equal_matrices(m * inv, TriMatrix::identity(2), &detail));

        TriMatrix lg = mat_log_unipotent(m);
        CHECK(equal_on_common_window(lg.at(1, 0), m.at(1, 0)));
        CHECK(lg.at(0, 0).is_exact_zero());
        CHECK(equal_matrices(mat_exp(lg), m, &detail));
        CHECK(equal_matrices(mat_log_unipotent(TriMatrix::identity(3)), TriMatrix(3), &detail));

        TriMatrix bad = TriMatrix::identity(2);
        bad.at(0, 0) = Series::constant(Rat(2));
        CHECK_THROWS_AS(mat_inverse_unipotent(bad), DomainError);
        CHECK_THROWS_AS(mat_log_unipotent(bad), DomainError);
    }

    TEST_CASE("entrywise scheme projection") {
        TriMatrix m = TriMatrix::identity(3);
        m.at(1, 0) = Series::truncated({{-1, SymPoly(Rat(2))}, {0, SymPoly(Rat(3))}}, -1, 4);
        TriMatrix r = matrix_rb(m);
        CHECK(r.at(0, 0).is_zero_on_window());  // no pole in the unit
        CHECK(equal_on_common_window(r.at(1, 0), Series::monomial(-1, SymPoly(Rat(2)))));
        std::string detail;
        CHECK(equal_matrices(matrix_rb(m) + matrix_rb_tilde(m), m, &detail));
    }

    TEST_CASE("atkinson factors of the ladder coideal match the scalar ones") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        BirkhoffPair pair = birkhoff_decompose(phi);
        CoidealBasis basis = CoidealBasis::closure({parse_tree("[[[]]]")});
        HopfMatrix m = coproduct_matrix(basis);
        AtkinsonFactors f = atkinson_factorize(psi(phi, m));
        CHECK(equal_on_common_window(f.minus.at(1, 0), pair.minus(parse_tree("[]"))));
        CHECK(equal_on_common_window(f.minus.at(3, 0), pair.minus(parse_tree("[[[]]]"))));
        std::string detail;
        CHECK(equal_matrices(f.minus, psi(pair.minus, m), &detail));

        auto [minus2, plus_inv2] = nonrecursive_entries(psi(phi, m));
        CHECK(equal_matrices(f.minus, minus2, &detail));
        CHECK(equal_matrices(f.plus_inv, plus_inv2, &detail));
        CHECK(equal_matrices(f.plus, nonrecursive_plus(psi(phi, m)), &detail));

        auto [mi, pi] = nonrecursive_entries(TriMatrix::identity(4));
        CHECK(equal_matrices(mi, TriMatrix::identity(4), &detail));
        CHECK(equal_matrices(pi, TriMatrix::identity(4), &detail));
    }

    TEST_CASE("grading conjugation in closed form equals the product form") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        CoidealBasis basis = CoidealBasis::closure({parse_tree("[[][][]]")});
        TriMatrix phihat = psi(phi, coproduct_matrix(basis));

        TriMatrix closed = scale_conjugate_tau(phihat, basis);
        TriMatrix product = diag_flow_tau(basis, +1) * phihat * diag_flow_tau(basis, -1);
        std::string detail;
        CHECK(equal_matrices(closed, product, &detail));

        // Rational flow on the subdiagonal entry: e^{t z} phi(dot).
        TriMatrix flowed = scale_conjugate(phihat, basis, Rat(1));
        Series expect = phihat.at(1, 0) *
                        exp_z_linear(SymPoly(Rat(1)),
                                     phihat.at(1, 0).hi() - phihat.at(1, 0).lo());
        CHECK(equal_on_common_window(flowed.at(1, 0), expect));
    }

    TEST_CASE("commutator with the grading matrix represents composition with Y") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        CoidealBasis basis = CoidealBasis::closure({parse_tree("[[][][]]")});
        HopfMatrix m = coproduct_matrix(basis);
        TriMatrix phihat = psi(phi, m);
        TriMatrix z0 = z0_matrix(basis);
        TriMatrix lhs = phihat * (-z0) - (-z0) * phihat;  // [Psi[f], Psi[-Z0]]
        TriMatrix rhs = psi(compose_grading(phi), m);
        std::string detail;
        CHECK(equal_matrices(lhs, rhs, &detail));
    }

    TEST_CASE("beta matrices on the ladder coideal") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        CoidealBasis basis = CoidealBasis::closure({parse_tree("[[[]]]")});
        TriMatrix minus = atkinson_factorize(psi(phi, coproduct_matrix(basis))).minus;
        TriMatrix b = beta_matrix(minus, basis);
        std::string detail;
        CHECK(equal_matrices(b, beta_matrix_commutator(minus, basis), &detail));
        CHECK(equal_matrices(b, beta_matrix_bch(minus, basis), &detail));
        CHECK(equal_on_common_window(b.at(1, 0), Series::constant(Rat(1))));
        CHECK(equal_on_common_window(b.at(3, 0),
                                     Series::constant(SymPoly::pi2() * Rat(1, 6))));
        CHECK(b.at(2, 0).is_zero_on_window());
    }

    TEST_CASE("flow identities on the five-element coideal") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        CoidealBasis basis = CoidealBasis::closure({parse_tree("[[][][]]")});
        for (const CheckResult& r : aplus_flow_check(phi, basis, c)) {
            INFO(r.name << ": " << r.detail);
            CHECK(r.pass);
        }
    }

    TEST_CASE("scattering entries") {
        Config c = cfg();
        LinMap phi = toy_character(c);
        CoidealBasis basis = CoidealBasis::closure({parse_tree("[[][][]]")});
        TriMatrix minus = atkinson_factorize(psi(phi, coproduct_matrix(basis))).minus;
        TriMatrix pre = scattering_pre_limit(minus, basis);
        // Entry (2,1) before the limit: minus + u times the inverse entry.
        Series expect = minus.at(1, 0) +
                        mat_inverse_unipotent(minus).at(1, 0) * SymPoly::u(1);
        CHECK(equal_on_common_window(pre.at(1, 0), expect));
        std::string detail;
        CHECK(equal_matrices(scattering_limit(minus, basis), minus, &detail));
    }
}
