#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "renorm/rational.hpp"

namespace renorm {

/// Non-planar rooted tree in canonical form.  Children are kept sorted by
/// the canonical order below, so structural equality coincides with
/// isomorphism of non-planar trees.
class Tree {
public:
    /// The single-vertex tree.
    Tree() = default;

    /// Root with the given subtrees; the list is sorted on construction.
    explicit Tree(std::vector<Tree> children);

    const std::vector<Tree>& children() const { return children_; }

    /// Number of vertices.
    int degree() const { return degree_; }

    /// Bracket form: "[]" is a single vertex, children are concatenated
    /// inside the root's brackets in canonical order.
    std::string to_string() const;

private:
    std::vector<Tree> children_;
    int degree_ = 1;
};

/// Total order on isomorphism classes: first by degree, ties broken
/// lexicographically on the recursively ordered child lists.  The two
/// degree-3 trees compare as [[][]] < [[[]]].
std::strong_ordering canonical_compare(const Tree& a, const Tree& b);

inline bool operator==(const Tree& a, const Tree& b) { return canonical_compare(a, b) == 0; }
inline std::strong_ordering operator<=>(const Tree& a, const Tree& b) { return canonical_compare(a, b); }

/// Multiset of trees, canonically sorted.  The empty forest is the unit
/// monomial; deg(t1...tn) = sum of the degrees.
class Forest {
public:
    Forest() = default;
    explicit Forest(std::vector<Tree> trees);
    explicit Forest(Tree t);

    const std::vector<Tree>& trees() const { return trees_; }
    int degree() const { return degree_; }
    bool empty() const { return trees_.empty(); }

    /// Multiset union (the commutative product of monomials).
    Forest concat(const Forest& other) const;

    /// Space-separated bracket strings; the empty forest prints as "1".
    std::string to_string() const;

private:
    std::vector<Tree> trees_;
    int degree_ = 0;
};

std::strong_ordering canonical_compare(const Forest& a, const Forest& b);

inline bool operator==(const Forest& a, const Forest& b) { return canonical_compare(a, b) == 0; }
inline std::strong_ordering operator<=>(const Forest& a, const Forest& b) { return canonical_compare(a, b); }

/// One admissible cut of a tree: the pruned forest and the part that kept
/// the root.  deg(pruned) + deg(cotree) equals the degree of the cut tree.
struct Cut {
    Forest pruned;
    Tree cotree;
};

/// Parses the bracket form.  Throws ParseError with the byte offset of the
/// first offending character.
Tree parse_tree(std::string_view text);

/// Parses a space-separated list of bracket strings ("1" for the empty
/// forest).
Forest parse_forest(std::string_view text);

/// t! = product over vertices v of the size of the subtree rooted at v.
Int tree_factorial(const Tree& t);

/// All canonical trees with exactly `degree` vertices, sorted.
const std::vector<Tree>& enumerate_trees(int degree);

/// All forests of exact total degree `degree`, sorted.
const std::vector<Forest>& enumerate_forests(int degree);

/// All admissible cuts: nonempty sets of edges meeting every root path at
/// most once, excluding the empty and the full cut.  Order is deterministic.
std::vector<Cut> admissible_cuts(const Tree& t);

}  // namespace renorm
