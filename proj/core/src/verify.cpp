#include "renorm/verify.hpp"

#include <functional>

#include "renorm/errors.hpp"

namespace renorm {

namespace {

// Portable deterministic generator (xorshift64*); the standard
// distributions are implementation-defined, raw ops are not.
struct Rng {
    std::uint64_t s = 0x9e3779b97f4a7c15ull;
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    int uniform(int lo, int hi) { return lo + static_cast<int>(next() % (hi - lo + 1)); }
};

Series random_series(Rng& rng, bool with_symbols) {
    std::map<int, SymPoly> c;
    for (int e = -3; e <= 4; ++e) {
        if (rng.uniform(0, 2) == 0) continue;
        SymPoly p;
        int monos = rng.uniform(1, with_symbols ? 2 : 1);
        for (int m = 0; m < monos; ++m) {
            Mono mono;
            if (with_symbols) {
                mono.pi2 = rng.uniform(0, 1);
                mono.l = rng.uniform(0, 1);
                mono.tau = rng.uniform(0, 1);
                mono.u = rng.uniform(0, 1);
            }
            Rat coeff(rng.uniform(-9, 9), rng.uniform(1, 4));
            coeff.canonicalize();
            p += SymPoly::monomial(mono, coeff);
        }
        if (!p.is_zero()) c[e] = p;
    }
    return Series::truncated(std::move(c), -3, 4);
}

struct Suite {
    explicit Suite(const Config& cfg) : cfg(cfg) {}
    Config cfg;
    std::vector<CheckResult> checks;

    void check(const std::string& name, const std::function<void()>& body) {
        try {
            body();
            checks.push_back(CheckResult{name, true, ""});
        } catch (const std::exception& e) {
            checks.push_back(CheckResult{name, false, e.what()});
        }
    }

    static void require(bool cond, const std::string& detail) {
        if (!cond) throw Error(detail);
    }
};

Tree tr(const char* s) { return parse_tree(s); }

HopfElement he(const char* s, Rat c = 1) { return HopfElement::from(parse_forest(s), c); }

TensorElement te(const char* l, const char* r, Rat c = 1) {
    return TensorElement::from(parse_forest(l), parse_forest(r), c);
}

Series pole_series(std::map<int, Rat> coeffs_rational, std::map<int, Rat> pi2_coeff) {
    std::map<int, SymPoly> c;
    for (const auto& [e, q] : coeffs_rational) c[e] += SymPoly(q);
    for (const auto& [e, q] : pi2_coeff) c[e] += SymPoly::monomial(Mono{1, 0, 0, 0}, q);
    int lo = c.empty() ? 0 : c.begin()->first;
    return Series::truncated(std::move(c), std::min(lo, 0), kExactHi);
}

void run_golden_examples(Suite& s) {
    s.check("coproduct-worked-examples", [] {
        Tree dot = tr("[]"), l2 = tr("[[]]"), cherry = tr("[[][]]"), th43 = tr("[[][][]]");
        // dot
        TensorElement expect = te("[]", "1") + te("1", "[]");
        Suite::require(coproduct(HopfElement::from(dot)) == expect, "coproduct of [] wrong");
        // ladder2
        expect = te("[[]]", "1") + te("1", "[[]]") + te("[]", "[]");
        Suite::require(coproduct(HopfElement::from(l2)) == expect, "coproduct of [[]] wrong");
        // dot dot
        expect = te("[] []", "1") + te("1", "[] []") + te("[]", "[]", 2);
        Suite::require(coproduct(he("[] []")) == expect, "coproduct of [] [] wrong");
        // cherry
        expect = te("[[][]]", "1") + te("1", "[[][]]") + te("[]", "[[]]", 2) + te("[] []", "[]");
        Suite::require(coproduct(HopfElement::from(cherry)) == expect,
                       "coproduct of [[][]] wrong");
        // dot * ladder2
        expect = te("[] [[]]", "1") + te("1", "[] [[]]") + te("[] []", "[]") +
                 te("[]", "[] []") + te("[[]]", "[]") + te("[]", "[[]]");
        Suite::require(coproduct(he("[] [[]]")) == expect, "coproduct of [] [[]] wrong");
        // th43
        expect = te("[[][][]]", "1") + te("1", "[[][][]]") + te("[]", "[[][]]", 3) +
                 te("[] []", "[[]]", 3) + te("[] [] []", "[]");
        Suite::require(coproduct(HopfElement::from(th43)) == expect,
                       "coproduct of [[][][]] wrong");
    });

    s.check("antipode-worked-examples", [] {
        Suite::require(antipode(tr("[]")) == he("[]", -1), "S([]) wrong");
        Suite::require(antipode(tr("[[]]")) == he("[[]]", -1) + he("[] []"), "S([[]]) wrong");
        Suite::require(antipode(tr("[[][]]")) ==
                           he("[[][]]", -1) + he("[] [[]]", 2) + he("[] [] []", -1),
                       "S([[][]]) wrong");
        Suite::require(antipode(tr("[[][][]]")) == he("[[][][]]", -1) + he("[] [[][]]", 3) +
                                                       he("[] [] [[]]", -3) + he("[] [] [] []"),
                       "S([[][][]]) wrong");
    });

    s.check("tree-factorials", [] {
        auto fact = [](const char* t) { return tree_factorial(parse_tree(t)); };
        Suite::require(fact("[]") == 1, "[]! != 1");
        Suite::require(fact("[[]]") == 2, "[[]]! != 2");
        Suite::require(fact("[[[]]]") == 6, "[[[]]]! != 6");
        Suite::require(fact("[[][]]") == 3, "[[][]]! != 3");
        Suite::require(fact("[[][[]]]") == 8, "[[][[]]]! != 8");
        Suite::require(fact("[[][][]]") == 4, "[[][][]]! != 4");
    });

    s.check("coproduct-matrix-5x5", [] {
        CoidealBasis basis = CoidealBasis::closure({tr("[[][][]]")});
        Suite::require(basis.size() == 5, "closure of [[][][]] should have 5 elements");
        const char* expected_basis[] = {"1", "[]", "[[]]", "[[][]]", "[[][][]]"};
        for (int i = 0; i < 5; ++i)
            Suite::require(basis.element(i) == parse_forest(expected_basis[i]),
                           "basis element " + std::to_string(i + 1) + " wrong");
        HopfMatrix m = coproduct_matrix(basis);
        HopfMatrix expect(5);
        auto u = HopfElement::unit();
        expect.at(0, 0) = u;
        expect.at(1, 0) = he("[]");
        expect.at(1, 1) = u;
        expect.at(2, 0) = he("[[]]");
        expect.at(2, 1) = he("[]");
        expect.at(2, 2) = u;
        expect.at(3, 0) = he("[[][]]");
        expect.at(3, 1) = he("[] []");
        expect.at(3, 2) = he("[]", 2);
        expect.at(3, 3) = u;
        expect.at(4, 0) = he("[[][][]]");
        expect.at(4, 1) = he("[] [] []");
        expect.at(4, 2) = he("[] []", 3);
        expect.at(4, 3) = he("[]", 3);
        expect.at(4, 4) = u;
        Suite::require(m == expect, "coproduct matrix differs from the worked 5x5 form");
        // Coassociativity in matrix form: Delta(M_ij) = sum_k M_ik (x) M_kj.
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                TensorElement lhs = coproduct(m.at(i, j));
                TensorElement rhs;
                for (int k = 0; k < 5; ++k) {
                    for (const auto& [fa, ca] : m.at(i, k).terms())
                        for (const auto& [fb, cb] : m.at(k, j).terms())
                            rhs += TensorElement::from(fa, fb, ca * cb);
                }
                Suite::require(lhs == rhs, "matrix coassociativity fails at (" +
                                               std::to_string(i + 1) + "," +
                                               std::to_string(j + 1) + ")");
            }
        }
    });

    s.check("grading-matrix-diag", [] {
        CoidealBasis basis = CoidealBasis::closure({tr("[[][][]]")});
        TriMatrix z0 = z0_matrix(basis);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                Series expect =
                    i == j ? Series::constant(Rat(i == 0 ? 0 : basis.degree(i))) : Series::zero();
                Suite::require(equal_on_common_window(z0.at(i, j), expect),
                               "grading matrix entry wrong");
            }
        int degs[] = {0, 1, 2, 3, 4};
        for (int i = 0; i < 5; ++i)
            Suite::require(basis.degree(i) == degs[i], "grading diagonal is not 0..4");
    });
}

void run_toy_matrix_golden(Suite& s) {
    s.check("toy-character-matrix", [&s] {
        const Config& cfg = s.cfg;
        int hi = cfg.build_hi();
        CoidealBasis basis = CoidealBasis::closure({tr("[[][][]]")});
        TriMatrix got = psi(toy_character(cfg), coproduct_matrix(basis));
        auto alpha = [hi](int k) {
            return exp_z_linear(SymPoly::log_scale() * Rat(-k), hi);
        };
        auto b = [hi](int n) { return bn_series(n, hi); };
        TriMatrix expect = TriMatrix::identity(5);
        expect.at(1, 0) = alpha(1) * b(1);
        expect.at(2, 0) = alpha(2) * b(2) * b(1);
        expect.at(2, 1) = alpha(1) * b(1);
        expect.at(3, 0) = alpha(3) * b(3) * b(1) * b(1);
        expect.at(3, 1) = alpha(2) * b(1) * b(1);
        expect.at(3, 2) = alpha(1) * b(1) * Rat(2);
        expect.at(4, 0) = alpha(4) * b(4) * b(1) * b(1) * b(1);
        expect.at(4, 1) = alpha(3) * b(1) * b(1) * b(1);
        expect.at(4, 2) = alpha(2) * b(1) * b(1) * Rat(3);
        expect.at(4, 3) = alpha(1) * b(1) * Rat(3);
        std::string detail;
        Suite::require(equal_matrices(got, expect, &detail),
                       "toy character matrix differs: " + detail);
        Suite::require(got.is_unipotent(), "toy character matrix is not unipotent");
    });
}

void run_hopf_axioms(Suite& s) {
    int n = s.cfg.max_degree;

    s.check("coassociativity", [n] {
        for (int d = 0; d <= n; ++d)
            for (const Forest& f : enumerate_forests(d))
                Suite::require(coproduct_left_first(f) == coproduct_right_first(f),
                               "coassociativity fails at " + f.to_string());
    });

    s.check("counit-axiom", [n] {
        for (int d = 0; d <= n; ++d) {
            for (const Forest& f : enumerate_forests(d)) {
                HopfElement left, right;
                TensorElement dd = coproduct(HopfElement::from(f));
                for (const auto& [k, c] : dd.terms()) {
                    left += HopfElement::from(k.second, c * counit(HopfElement::from(k.first)));
                    right += HopfElement::from(k.first, c * counit(HopfElement::from(k.second)));
                }
                HopfElement expect = HopfElement::from(f);
                Suite::require(left == expect && right == expect,
                               "counit axiom fails at " + f.to_string());
            }
        }
    });

    s.check("antipode-axiom", [n] {
        for (int d = 0; d <= n; ++d) {
            for (const Forest& f : enumerate_forests(d)) {
                HopfElement left, right;
                TensorElement dd = coproduct(HopfElement::from(f));
                for (const auto& [k, c] : dd.terms()) {
                    left += antipode(k.first) * HopfElement::from(k.second) * c;
                    right += HopfElement::from(k.first) * antipode(k.second) * c;
                }
                HopfElement expect = f.empty() ? HopfElement::unit() : HopfElement();
                Suite::require(left == expect, "S star id != eta eps at " + f.to_string());
                Suite::require(right == expect, "id star S != eta eps at " + f.to_string());
            }
        }
    });

    s.check("antipode-recursions-agree", [n] {
        for (int d = 0; d <= n; ++d) {
            for (const Forest& f : enumerate_forests(d)) {
                HopfElement a = antipode(f);
                Suite::require(a == antipode_right_recursion(f),
                               "left and right antipode recursions differ at " + f.to_string());
                Suite::require(a == antipode_geometric(f),
                               "geometric antipode series differs at " + f.to_string());
            }
        }
    });

    s.check("grading-biderivation", [n] {
        for (int d = 0; d <= n; ++d) {
            for (const Forest& f : enumerate_forests(d)) {
                TensorElement lhs = coproduct(apply_grading(HopfElement::from(f)));
                TensorElement rhs;
                TensorElement dd = coproduct(HopfElement::from(f));
                for (const auto& [k, c] : dd.terms())
                    rhs += TensorElement::from(k.first, k.second,
                                               c * (k.first.degree() + k.second.degree()));
                Suite::require(lhs == rhs, "Y is not a coderivation at " + f.to_string());
            }
        }
    });
}

void run_rota_baxter(Suite& s) {
    s.check("rota-baxter-relation", [] {
        Rng rng;
        for (int i = 0; i < 100; ++i) {
            Series a = random_series(rng, true);
            Series b = random_series(rng, true);
            Series lhs = pole_part(pole_part(a) * b + a * pole_part(b) - a * b);
            Series rhs = pole_part(a) * pole_part(b);
            Suite::require(equal_on_common_window(lhs, rhs),
                           "Rota-Baxter relation fails on sample " + std::to_string(i));
        }
    });

    s.check("rota-baxter-mixed-relation", [] {
        Rng rng;
        rng.s = 0xabcdef1234567891ull;
        for (int i = 0; i < 100; ++i) {
            Series a = random_series(rng, true);
            Series b = random_series(rng, true);
            // R(a R~(b)) + R~(R(a) b) = R(a) R~(b)
            Series lhs = pole_part(a * holomorphic_part(b)) +
                         holomorphic_part(pole_part(a) * b);
            Series rhs = pole_part(a) * holomorphic_part(b);
            Suite::require(equal_on_common_window(lhs, rhs),
                           "mixed Rota-Baxter relation fails on sample " + std::to_string(i));
        }
    });

    s.check("minimal-subtraction-splitting", [] {
        Rng rng;
        rng.s = 0x1234567812345678ull;
        for (int i = 0; i < 100; ++i) {
            Series a = random_series(rng, true);
            Series b = random_series(rng, true);
            Suite::require(equal_on_common_window(pole_part(a) + holomorphic_part(a), a),
                           "splitting a = pi(a) + (1-pi)(a) fails");
            Suite::require(equal_on_common_window(pole_part(pole_part(a)), pole_part(a)),
                           "pi is not idempotent");
            Suite::require(pole_part(holomorphic_part(a)).is_zero_on_window(),
                           "pi o (1 - pi) != 0");
            // Both images are subalgebras.
            Suite::require(pole_part(pole_part(a) * pole_part(b)).is_zero_on_window() ==
                               (pole_part(a) * pole_part(b)).is_zero_on_window(),
                           "product of pole parts left the pole subalgebra");
            Suite::require(
                pole_part(holomorphic_part(a) * holomorphic_part(b)).is_zero_on_window(),
                "product of holomorphic parts grew a pole");
        }
    });

    s.check("rota-baxter-matrix", [] {
        Rng rng;
        rng.s = 0x5a5a5a5a5a5a5a5aull;
        for (int i = 0; i < 100; ++i) {
            TriMatrix a(4), b(4);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c <= r; ++c) {
                    a.at(r, c) = random_series(rng, true);
                    b.at(r, c) = random_series(rng, true);
                }
            TriMatrix lhs = matrix_rb(matrix_rb(a) * b + a * matrix_rb(b) - a * b);
            TriMatrix rhs = matrix_rb(a) * matrix_rb(b);
            std::string detail;
            Suite::require(equal_matrices(lhs, rhs, &detail),
                           "matrix Rota-Baxter relation fails on sample " + std::to_string(i) +
                               ": " + detail);
            // Mixed form: R(a R~(b)) + R~(R(a) b) = R(a) R~(b).
            TriMatrix mixed_lhs = matrix_rb(a * matrix_rb_tilde(b)) +
                                  matrix_rb_tilde(matrix_rb(a) * b);
            TriMatrix mixed_rhs = matrix_rb(a) * matrix_rb_tilde(b);
            Suite::require(equal_matrices(mixed_lhs, mixed_rhs, &detail),
                           "matrix mixed Rota-Baxter relation fails on sample " +
                               std::to_string(i) + ": " + detail);
            // R + R~ = id entrywise.
            Suite::require(equal_matrices(matrix_rb(a) + matrix_rb_tilde(a), a, &detail),
                           "R + R~ != id: " + detail);
        }
    });
}

void run_birkhoff(Suite& s) {
    const Config& cfg = s.cfg;
    LinMap phi = toy_character(cfg);
    BirkhoffPair pair = birkhoff_decompose(phi);

    s.check("counterterm-locality", [&] {
        LocalityReport rep = locality_check(pair, std::min(cfg.max_degree, 4));
        Suite::require(rep.local, rep.detail);
    });

    s.check("birkhoff-factors-multiplicative", [&] {
        std::string detail;
        Suite::require(is_character_on(pair.minus, cfg.max_degree, &detail),
                       "counter term is not multiplicative: " + detail);
        Suite::require(is_character_on(pair.plus, cfg.max_degree, &detail),
                       "renormalized part is not multiplicative: " + detail);
    });

    s.check("birkhoff-reconstruction", [&] {
        LinMap recon = convolve(star_inverse(pair.minus), pair.plus);
        std::string detail;
        Suite::require(equal_on_forests(recon, phi, cfg.max_degree, 1, &detail),
                       "minus^{star -1} star plus != phi: " + detail);
        // plus = minus star phi, the subtraction route.
        LinMap direct = convolve(pair.minus, phi);
        Suite::require(equal_on_forests(direct, pair.plus, cfg.max_degree, 1, &detail),
                       "plus != minus star phi: " + detail);
    });

    s.check("counterterm-values", [&] {
        auto expect_pole = [&](const char* tree, std::map<int, Rat> rat_part,
                               std::map<int, Rat> pi2_part) {
            Series got = pair.minus(parse_tree(tree));
            Series want = pole_series(std::move(rat_part), std::move(pi2_part));
            Suite::require(equal_on_common_window(got, want),
                           std::string("counter term at ") + tree + " is " + got.to_string() +
                               ", expected " + want.to_string());
        };
        expect_pole("[]", {{-1, -1}}, {});
        expect_pole("[[]]", {{-2, Rat(1, 2)}}, {});
        expect_pole("[[][]]", {{-3, Rat(-1, 3)}}, {{-1, Rat(1, 18)}});
        expect_pole("[[[]]]", {{-3, Rat(-1, 6)}}, {{-1, Rat(-1, 18)}});
        expect_pole("[[][][]]", {{-4, Rat(1, 4)}}, {{-2, Rat(-1, 24)}});
        expect_pole("[[][[]]]", {{-4, Rat(1, 8)}}, {});
    });

    s.check("birkhoff-idempotence", [&] {
        BirkhoffPair again = birkhoff_decompose(pair.plus);
        LinMap e = LinMap::counit_character();
        std::string detail;
        Suite::require(equal_on_forests(again.minus, e, cfg.max_degree, 1, &detail),
                       "decomposing the renormalized part gave a counter term: " + detail);
        Suite::require(equal_on_forests(again.plus, pair.plus, cfg.max_degree, 1, &detail),
                       "decomposing the renormalized part changed it: " + detail);
    });
}

void run_matrix_consistency(Suite& s) {
    const Config& cfg = s.cfg;
    LinMap phi = toy_character(cfg);
    BirkhoffPair pair = birkhoff_decompose(phi);
    CoidealBasis basis = CoidealBasis::closure({tr("[[][][]]")});
    HopfMatrix m = coproduct_matrix(basis);
    TriMatrix phihat = psi(phi, m);
    AtkinsonFactors factors = atkinson_factorize(phihat);

    s.check("atkinson-identity", [&] {
        // X (1 + a) Y = 1 with X = minus, Y = plus^{-1}.
        TriMatrix prod = factors.minus * phihat * factors.plus_inv;
        std::string detail;
        Suite::require(equal_matrices(prod, TriMatrix::identity(basis.size()), &detail),
                       "X (1 + a) Y != 1: " + detail);
        Suite::require(
            equal_matrices(factors.plus, factors.minus * phihat, &detail),
            "plus != minus * phihat: " + detail);
        Suite::require(equal_matrices(factors.plus * factors.plus_inv,
                                      TriMatrix::identity(basis.size()), &detail),
                       "plus * plus_inv != 1: " + detail);
        // plus = 1 + R~(Bogoliubov matrix).
        Suite::require(equal_matrices(factors.plus,
                                      TriMatrix::identity(basis.size()) +
                                          matrix_rb_tilde(factors.bogoliubov),
                                      &detail),
                       "plus != 1 + R~(minus (phihat - 1)): " + detail);
        // plus also solves the mirrored fixed point
        // plus = 1 - R~(plus (phihat^{-1} - 1)).
        TriMatrix mirror =
            TriMatrix::identity(basis.size()) -
            matrix_rb_tilde(factors.plus *
                            (mat_inverse_unipotent(phihat) - TriMatrix::identity(basis.size())));
        Suite::require(equal_matrices(factors.plus, mirror, &detail),
                       "plus != 1 - R~(plus (phihat^{-1} - 1)): " + detail);
    });

    s.check("atkinson-vs-closed-form", [&] {
        auto [minus2, plus_inv2] = nonrecursive_entries(phihat);
        std::string detail;
        Suite::require(equal_matrices(factors.minus, minus2, &detail),
                       "closed-form counter-term entries differ: " + detail);
        Suite::require(equal_matrices(factors.plus_inv, plus_inv2, &detail),
                       "closed-form renormalized entries differ: " + detail);
        Suite::require(equal_matrices(factors.plus, nonrecursive_plus(phihat), &detail),
                       "closed-form plus entries differ: " + detail);
    });

    s.check("matrix-vs-scalar-birkhoff", [&] {
        TriMatrix minus_scalar = psi(pair.minus, m);
        TriMatrix plus_scalar = psi(pair.plus, m);
        std::string detail;
        Suite::require(equal_matrices(factors.minus, minus_scalar, &detail),
                       "matrix counter term != scalar counter term entries: " + detail);
        Suite::require(equal_matrices(factors.plus, plus_scalar, &detail),
                       "matrix renormalized part != scalar entries: " + detail);
    });

    s.check("psi-homomorphism", [&] {
        LinMap e = LinMap::counit_character();
        LinMap inv = star_inverse(phi);
        LinMap res_char = exp_star(LinMap::infinitesimal(
            [&phi](const Tree& t) { return Series::constant(residue(phi(t))); }));
        std::vector<LinMap> maps = {phi, inv, e, res_char};
        std::string detail;
        int count = 0;
        for (const LinMap& f : maps) {
            for (const LinMap& g : maps) {
                TriMatrix lhs = psi(convolve(f, g), m);
                TriMatrix rhs = psi(f, m) * psi(g, m);
                Suite::require(equal_matrices(lhs, rhs, &detail),
                               "Psi[f star g] != Psi[f] Psi[g] on pair " +
                                   std::to_string(count) + ": " + detail);
                ++count;
            }
        }
        Suite::require(count >= 10, "fewer than 10 homomorphism pairs exercised");
        // Psi of the star inverse is the matrix inverse.
        TriMatrix lhs = psi(inv, m);
        TriMatrix rhs = mat_inverse_unipotent(psi(phi, m));
        Suite::require(equal_matrices(lhs, rhs, &detail),
                       "Psi[phi^{star -1}] != Psi[phi]^{-1}: " + detail);
    });

    s.check("antipode-matrix-inverse", [&] {
        // Psi[S] applied to the coproduct matrix is its inverse, and the
        // normal-coordinate log/exp round trip restores Psi[phi].
        HopfMatrix sm = antipode_matrix(m);
        // Entrywise evaluation of phi on S(M) must equal the inverse matrix.
        TriMatrix lhs = psi(phi, sm);
        TriMatrix rhs = mat_inverse_unipotent(phihat);
        std::string detail;
        Suite::require(equal_matrices(lhs, rhs, &detail),
                       "phi(S(M)) != Psi[phi]^{-1}: " + detail);
        TriMatrix roundtrip = mat_exp(mat_log_unipotent(phihat));
        Suite::require(equal_matrices(roundtrip, phihat, &detail),
                       "exp(log(Psi[phi])) != Psi[phi]: " + detail);
    });
}

void run_beta(Suite& s) {
    const Config& cfg = s.cfg;
    LinMap phi = toy_character(cfg);
    BirkhoffPair pair = birkhoff_decompose(phi);

    // Entry (i,j) of a beta matrix is a function of the basis pair alone,
    // not of the ambient coideal; collected across bases and compared.
    std::map<std::pair<Forest, Forest>, Series> beta_by_pair;

    auto beta_suite = [&](const char* seed, const std::vector<std::tuple<int, int, SymPoly>>&
                                                expected_entries) {
        CoidealBasis basis = CoidealBasis::closure({tr(seed)});
        HopfMatrix m = coproduct_matrix(basis);
        TriMatrix minus = atkinson_factorize(psi(phi, m)).minus;
        TriMatrix b1 = beta_matrix(minus, basis);
        TriMatrix b2 = beta_matrix_commutator(minus, basis);
        TriMatrix b3 = beta_matrix_bch(minus, basis);
        std::string detail;
        Suite::require(equal_matrices(b1, b2, &detail),
                       "conjugation and commutator beta forms differ: " + detail);
        Suite::require(equal_matrices(b1, b3, &detail),
                       "conjugation and nested-commutator beta forms differ: " + detail);
        for (int i = 0; i < basis.size(); ++i)
            Suite::require(b1.at(i, i).is_exact_zero(), "beta diagonal entry is nonzero");
        for (const auto& [i, j, value] : expected_entries) {
            Series got = b1.at(i, j);
            Suite::require(equal_on_common_window(got, Series::constant(value)),
                           "beta entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                               ") is " + got.to_string() + ", expected " +
                               Series::constant(value).to_string());
        }
        // Column 0 rows of degree 1: matrix entries equal the scalar beta.
        for (int i = 1; i < basis.size(); ++i) {
            if (basis.degree(i) != 1) continue;
            SymPoly scalar = beta_scalar(phi, pair, basis.element(i).trees()[0]);
            Suite::require(equal_on_common_window(b1.at(i, 0), Series::constant(scalar)),
                           "matrix beta column does not match the scalar beta");
        }
        for (int i = 0; i < basis.size(); ++i) {
            for (int j = 0; j <= i; ++j) {
                auto key = std::make_pair(basis.element(i), basis.element(j));
                auto [it, inserted] = beta_by_pair.emplace(key, b1.at(i, j));
                Suite::require(inserted || equal_on_common_window(it->second, b1.at(i, j)),
                               "beta entry for the pair (" + key.first.to_string() + ", " +
                                   key.second.to_string() + ") differs between coideals");
            }
        }
        return b1;
    };

    s.check("beta-triple-agreement", [&] {
        SymPoly mp6 = -(SymPoly::pi2() * Rat(1, 6));
        beta_suite("[[][][]]",
                   {{1, 0, SymPoly(Rat(1))},
                    {2, 0, SymPoly()},
                    {2, 1, SymPoly(Rat(1))},
                    {3, 0, mp6},
                    {3, 1, SymPoly()},
                    {3, 2, SymPoly(Rat(2))},
                    {4, 0, SymPoly()},
                    {4, 3, SymPoly(Rat(3))}});
        SymPoly pp6 = SymPoly::pi2() * Rat(1, 6);
        beta_suite("[[[]]]", {{1, 0, SymPoly(Rat(1))},
                              {2, 0, SymPoly()},
                              {2, 1, SymPoly(Rat(1))},
                              {3, 0, pp6},
                              {3, 1, SymPoly()},
                              {3, 2, SymPoly(Rat(1))}});
    });

    s.check("beta-toy-value", [&] {
        SymPoly b = beta_scalar(phi, pair, tr("[]"));
        Suite::require(b == SymPoly(Rat(1)), "beta([]) != 1, got " + b.to_string());
        SymPoly bc = beta_scalar(phi, pair, tr("[[][]]"));
        Suite::require(bc == -(SymPoly::pi2() * Rat(1, 6)),
                       "beta([[][]]) != -pi^2/6, got " + bc.to_string());
        // The counit character has beta zero.
        LinMap e = LinMap::counit_character();
        BirkhoffPair epair = birkhoff_decompose(e);
        Suite::require(beta_scalar(e, epair, tr("[]")).is_zero(), "beta of e is nonzero");
    });
}

void run_flow(Suite& s) {
    const Config& cfg = s.cfg;
    LinMap phi = toy_character(cfg);
    CoidealBasis basis = CoidealBasis::closure({tr("[[][][]]")});

    for (const CheckResult& r : aplus_flow_check(phi, basis, cfg)) s.checks.push_back(r);

    int deg = std::min(cfg.max_degree, 4);
    int cap = SymPoly::tau_cap();

    s.check("scalar-flow-ode", [&] {
        // dh/dt = h star (z rtilde(h)) + (z rtilde(phi)) star h at symbolic t.
        LinMap h = h_flow_tau(phi);
        LinMap dh = LinMap::from_forest_fn(
            LinMap::Kind::Vanishing, [h](const Forest& x) { return derivative_tau(h(x)); });
        LinMap rhs = convolve(h, scale_by_z(rtilde(h), 1));
        LinMap rhs2 = convolve(scale_by_z(rtilde(phi), 1), h);
        for (int d = 0; d <= deg; ++d) {
            for (const Forest& f : enumerate_forests(d)) {
                Series lhs = truncate_tau(dh(f), cap - 1);
                Series sum = truncate_tau(rhs(f) + rhs2(f), cap - 1);
                Suite::require(equal_on_common_window(lhs, sum),
                               "scalar flow generator identity fails at " + f.to_string());
            }
        }
    });

    s.check("grading-convolution-lemma", [&] {
        // z^n (phi o Y^n) = phi star U^n(e) with U(d) = gamma star d + z(d o Y),
        // gamma = z rtilde(phi).
        LinMap gamma = scale_by_z(rtilde(phi), 1);
        LinMap u_power = LinMap::counit_character();
        for (int n = 0; n <= 3; ++n) {
            LinMap lhs = scale_by_z(compose_grading_power(phi, n), n);
            LinMap rhs = convolve(phi, u_power);
            std::string detail;
            Suite::require(equal_on_forests(lhs, rhs, deg, 1, &detail),
                           "convolution power lemma fails at n = " + std::to_string(n) + ": " +
                               detail);
            u_power = LinMap::from_forest_fn(
                LinMap::Kind::Vanishing,
                [g = convolve(gamma, u_power),
                 y = scale_by_z(compose_grading(u_power), 1)](const Forest& x) {
                    return g(x) + y(x);
                });
        }
    });

    s.check("rtilde-cocycle", [&] {
        LinMap e = LinMap::counit_character();
        LinMap inv = star_inverse(phi);
        LinMap half = scale_flow(phi, Rat(1, 2));
        std::vector<std::pair<LinMap, LinMap>> pairs = {
            {phi, inv}, {phi, e}, {half, phi}, {inv, half}};
        int idx = 0;
        for (const auto& [f, g] : pairs) {
            LinMap lhs = rtilde(convolve(f, g));
            LinMap rhs_tail = convolve(convolve(star_inverse(g), rtilde(f)), g);
            LinMap rt_g = rtilde(g);
            LinMap rhs = LinMap::from_forest_fn(
                LinMap::Kind::Vanishing,
                [rt_g, rhs_tail](const Forest& x) { return rt_g(x) + rhs_tail(x); });
            std::string detail;
            Suite::require(equal_on_forests(lhs, rhs, deg, 1, &detail),
                           "cocycle identity fails on pair " + std::to_string(idx) + ": " +
                               detail);
            ++idx;
        }
        Suite::require(static_cast<int>(pairs.size()) >= 3, "fewer than 3 cocycle pairs");
        // rtilde of a character is an infinitesimal character.
        std::string detail;
        Suite::require(is_infinitesimal_on(rtilde(phi), cfg.max_degree, &detail),
                       "rtilde(phi) is not infinitesimal: " + detail);
    });
}

void run_renorm_group(Suite& s) {
    const Config& cfg = s.cfg;
    LinMap phi = toy_character(cfg);
    int deg = std::min(cfg.max_degree, 3);

    s.check("renormalization-group-law", [&] {
        Rat a(1, 2), b(1, 3);
        LinMap fa = renorm_group(phi, a);
        LinMap fb = renorm_group(phi, b);
        LinMap fab = renorm_group(phi, a + b);
        LinMap conv = convolve(fa, fb);
        std::string detail;
        Suite::require(equal_on_forests(conv, fab, deg, 0, &detail),
                       "F_s star F_t != F_{s+t}: " + detail);
        std::string mul_detail;
        Suite::require(is_character_on(fa, deg, &mul_detail),
                       "F_s is not a character: " + mul_detail);
    });

    s.check("h-flow-composition", [&] {
        Rat a(1, 2), b(1, 3);
        LinMap lhs = h_flow(phi, a + b);
        LinMap rhs = convolve(h_flow(phi, a), scale_flow(h_flow(phi, b), a));
        std::string detail;
        Suite::require(equal_on_forests(lhs, rhs, deg, 1, &detail),
                       "h_{s+t} != h_s star (h_t)^s: " + detail);
    });
}

void run_scattering(Suite& s) {
    const Config& cfg = s.cfg;
    LinMap phi = toy_character(cfg);
    CoidealBasis basis = CoidealBasis::closure({tr("[[][][]]")});
    HopfMatrix m = coproduct_matrix(basis);
    TriMatrix minus = atkinson_factorize(psi(phi, m)).minus;

    s.check("scattering-limit", [&] {
        TriMatrix limit = scattering_limit(minus, basis);
        std::string detail;
        Suite::require(equal_matrices(limit, minus, &detail),
                       "u -> 0 limit does not reproduce the counter-term matrix: " + detail);
        // Pre-limit entry (2,1): minus + u * (star inverse of minus).
        TriMatrix pre = scattering_pre_limit(minus, basis);
        Series expect = minus.at(1, 0) + mat_inverse_unipotent(minus).at(1, 0) * SymPoly::u(1);
        Suite::require(equal_on_common_window(pre.at(1, 0), expect),
                       "pre-limit entry (2,1) has the wrong shape");
        // beta/z + Z0 is the conjugated grading, the generator the limit
        // formula exponentiates.
        TriMatrix beta = beta_matrix(minus, basis);
        TriMatrix z0 = z0_matrix(basis);
        TriMatrix lhs = beta * Series::monomial(-1, SymPoly(Rat(1))) + z0;
        TriMatrix rhs = minus * z0 * mat_inverse_unipotent(minus);
        Suite::require(equal_matrices(lhs, rhs, &detail),
                       "beta/z + Z0 != minus Z0 minus^{-1}: " + detail);
        // The counit character maps to the identity at every u.
        LinMap e = LinMap::counit_character();
        TriMatrix eminus = atkinson_factorize(psi(e, m)).minus;
        TriMatrix epre = scattering_pre_limit(eminus, basis);
        Suite::require(equal_matrices(epre, TriMatrix::identity(basis.size()), &detail),
                       "counit scattering is not the identity: " + detail);
    });
}

}  // namespace

bool VerifyReport::all_pass() const {
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string VerifyReport::to_text() const {
    std::string out;
    int failed = 0;
    for (const CheckResult& c : checks) {
        if (c.pass) {
            out += "PASS " + c.name + "\n";
        } else {
            out += "FAIL " + c.name + ": " + c.detail + "\n";
            ++failed;
        }
    }
    if (failed == 0)
        out += "all " + std::to_string(checks.size()) + " identities hold\n";
    else
        out += std::to_string(failed) + " of " + std::to_string(checks.size()) +
               " identities failed\n";
    return out;
}

VerifyReport run_verify(const Config& cfg) {
    cfg.validate();
    SymPoly::set_tau_cap(cfg.tau_cap);
    Suite s(cfg);
    run_golden_examples(s);
    run_toy_matrix_golden(s);
    run_hopf_axioms(s);
    run_rota_baxter(s);
    run_birkhoff(s);
    run_matrix_consistency(s);
    run_beta(s);
    run_flow(s);
    run_renorm_group(s);
    run_scattering(s);
    return VerifyReport{std::move(s.checks)};
}

}  // namespace renorm
