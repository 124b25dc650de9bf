#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "renorm/errors.hpp"
#include "renorm/tree.hpp"

using namespace renorm;

namespace {

// Independent enumeration oracle: grow trees by attaching one new leaf to
// every vertex of every smaller tree, deduplicating canonically.
std::vector<Tree> oracle_trees(int degree) {
    std::set<Tree> current = {Tree()};
    for (int d = 2; d <= degree; ++d) {
        std::set<Tree> next;
        for (const Tree& t : current) {
            // attach at every vertex, addressed by a path of child indices
            std::function<Tree(const Tree&, const std::vector<int>&, std::size_t)> attach =
                [&](const Tree& node, const std::vector<int>& path, std::size_t depth) {
                    std::vector<Tree> kids = node.children();
                    if (depth == path.size()) {
                        kids.push_back(Tree());
                        return Tree(std::move(kids));
                    }
                    kids[path[depth]] = attach(kids[path[depth]], path, depth + 1);
                    return Tree(std::move(kids));
                };
            std::function<void(const Tree&, std::vector<int>&)> walk = [&](const Tree& node,
                                                                           std::vector<int>& path) {
                next.insert(attach(t, path, 0));
                for (std::size_t i = 0; i < node.children().size(); ++i) {
                    path.push_back(static_cast<int>(i));
                    walk(node.children()[i], path);
                    path.pop_back();
                }
            };
            std::vector<int> path;
            walk(t, path);
        }
        current = std::move(next);
    }
    return {current.begin(), current.end()};
}

// Edge-product form of the tree factorial: the full cut contributes the
// whole tree, every edge the subtree hanging below it.
Int factorial_by_edges(const Tree& t) {
    Int out = t.degree();
    std::function<void(const Tree&)> walk = [&](const Tree& node) {
        for (const Tree& c : node.children()) {
            out *= c.degree();
            walk(c);
        }
    };
    walk(t);
    return out;
}

}  // namespace

TEST_SUITE("trees") {
    TEST_CASE("parse and print round trip") {
        for (const char* s : {"[]", "[[]]", "[[][]]", "[[[]]]", "[[][][]]", "[[][[]]]"}) {
            CHECK(parse_tree(s).to_string() == s);
        }
        CHECK(parse_tree("[]").degree() == 1);
        CHECK(parse_tree("[[][]]").degree() == 3);
    }

    TEST_CASE("parse errors carry the offending position") {
        CHECK_THROWS_AS(parse_tree(""), ParseError);
        CHECK_THROWS_AS(parse_tree("[[]"), ParseError);
        CHECK_THROWS_AS(parse_tree("[]]"), ParseError);
        CHECK_THROWS_AS(parse_tree("x"), ParseError);
        try {
            parse_tree("[[]");
        } catch (const ParseError& e) {
            CHECK(e.position == 3);
        }
    }

    TEST_CASE("canonicalization identifies permuted spellings") {
        CHECK(parse_tree("[[][[]]]") == parse_tree("[[[]][]]"));
        CHECK(parse_tree("[[][[]]]").to_string() == "[[][[]]]");
    }

    TEST_CASE("canonical order") {
        Tree dot;
        CHECK(canonical_compare(dot, dot) == std::strong_ordering::equal);
        CHECK(dot < parse_tree("[[]]"));
        // The two degree-3 trees: the cherry sorts before the ladder.
        CHECK(parse_tree("[[][]]") < parse_tree("[[[]]]"));
    }

    TEST_CASE("tree factorial worked values") {
        CHECK(tree_factorial(parse_tree("[]")) == 1);
        CHECK(tree_factorial(parse_tree("[[]]")) == 2);
        CHECK(tree_factorial(parse_tree("[[[]]]")) == 6);
        CHECK(tree_factorial(parse_tree("[[][]]")) == 3);
        CHECK(tree_factorial(parse_tree("[[][[]]]")) == 8);
        CHECK(tree_factorial(parse_tree("[[][][]]")) == 4);
    }

    TEST_CASE("tree factorial equals the edge-product form") {
        for (int d = 1; d <= 5; ++d)
            for (const Tree& t : enumerate_trees(d))
                CHECK(tree_factorial(t) == factorial_by_edges(t));
    }

    TEST_CASE("enumeration counts and oracle agreement") {
        const int expected[] = {1, 1, 2, 4, 9, 20};
        for (int d = 1; d <= 6; ++d) {
            const auto& got = enumerate_trees(d);
            CHECK(static_cast<int>(got.size()) == expected[d - 1]);
            std::vector<Tree> oracle = oracle_trees(d);
            REQUIRE(got.size() == oracle.size());
            std::vector<Tree> sorted = got;
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::equal(sorted.begin(), sorted.end(), oracle.begin()));
            CHECK(std::is_sorted(got.begin(), got.end()));
        }
        CHECK(enumerate_trees(1)[0] == Tree());
        CHECK_THROWS_AS(enumerate_trees(0), DomainError);
    }

    TEST_CASE("forest enumeration counts") {
        const int expected[] = {1, 1, 2, 4, 9, 20};
        for (int d = 0; d <= 5; ++d)
            CHECK(static_cast<int>(enumerate_forests(d).size()) == expected[d]);
        CHECK(enumerate_forests(0)[0].empty());
    }

    TEST_CASE("admissible cuts of small trees") {
        CHECK(admissible_cuts(parse_tree("[]")).empty());

        auto l2_cuts = admissible_cuts(parse_tree("[[]]"));
        REQUIRE(l2_cuts.size() == 1);
        CHECK(l2_cuts[0].pruned == parse_forest("[]"));
        CHECK(l2_cuts[0].cotree == parse_tree("[]"));

        auto cherry_cuts = admissible_cuts(parse_tree("[[][]]"));
        REQUIRE(cherry_cuts.size() == 3);
        int single = 0, both = 0;
        for (const Cut& c : cherry_cuts) {
            if (c.pruned == parse_forest("[]") && c.cotree == parse_tree("[[]]")) ++single;
            if (c.pruned == parse_forest("[] []") && c.cotree == parse_tree("[]")) ++both;
        }
        CHECK(single == 2);
        CHECK(both == 1);
    }

    TEST_CASE("cut degrees always sum to the tree degree") {
        for (int d = 1; d <= 6; ++d)
            for (const Tree& t : enumerate_trees(d))
                for (const Cut& c : admissible_cuts(t)) {
                    CHECK(c.pruned.degree() + c.cotree.degree() == t.degree());
                    CHECK(c.pruned.degree() > 0);
                    CHECK(c.cotree.degree() > 0);
                }
    }

    TEST_CASE("forest parsing and printing") {
        CHECK(parse_forest("1").empty());
        CHECK(parse_forest("[] [[]]").degree() == 3);
        CHECK(parse_forest("[[]] []") == parse_forest("[] [[]]"));
        CHECK(parse_forest("[] [[]]").to_string() == "[] [[]]");
        CHECK(Forest().to_string() == "1");
    }
}
