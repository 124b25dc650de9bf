#include "renorm/tree.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "renorm/errors.hpp"

namespace renorm {

Tree::Tree(std::vector<Tree> children) : children_(std::move(children)) {
    std::sort(children_.begin(), children_.end());
    for (const Tree& c : children_) degree_ += c.degree();
}

std::string Tree::to_string() const {
    std::string out = "[";
    for (const Tree& c : children_) out += c.to_string();
    out += "]";
    return out;
}

std::strong_ordering canonical_compare(const Tree& a, const Tree& b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    const auto& ca = a.children();
    const auto& cb = b.children();
    for (std::size_t i = 0; i < ca.size() && i < cb.size(); ++i) {
        auto c = canonical_compare(ca[i], cb[i]);
        if (c != 0) return c;
    }
    return ca.size() <=> cb.size();
}

Forest::Forest(std::vector<Tree> trees) : trees_(std::move(trees)) {
    std::sort(trees_.begin(), trees_.end());
    for (const Tree& t : trees_) degree_ += t.degree();
}

Forest::Forest(Tree t) : degree_(t.degree()) {
    trees_.push_back(std::move(t));
}

Forest Forest::concat(const Forest& other) const {
    std::vector<Tree> all = trees_;
    all.insert(all.end(), other.trees_.begin(), other.trees_.end());
    return Forest(std::move(all));
}

std::string Forest::to_string() const {
    if (trees_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < trees_.size(); ++i) {
        if (i) out += ' ';
        out += trees_[i].to_string();
    }
    return out;
}

std::strong_ordering canonical_compare(const Forest& a, const Forest& b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    const auto& ta = a.trees();
    const auto& tb = b.trees();
    for (std::size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
        auto c = canonical_compare(ta[i], tb[i]);
        if (c != 0) return c;
    }
    return ta.size() <=> tb.size();
}

namespace {

Tree parse_tree_at(std::string_view text, std::size_t& pos) {
    if (pos >= text.size() || text[pos] != '[')
        throw ParseError("expected '['", pos);
    ++pos;
    std::vector<Tree> children;
    while (pos < text.size() && text[pos] == '[') children.push_back(parse_tree_at(text, pos));
    if (pos >= text.size() || text[pos] != ']')
        throw ParseError("expected ']'", pos);
    ++pos;
    return children.empty() ? Tree() : Tree(std::move(children));
}

}  // namespace

Tree parse_tree(std::string_view text) {
    std::size_t pos = 0;
    Tree t = parse_tree_at(text, pos);
    if (pos != text.size()) throw ParseError("trailing characters after tree", pos);
    return t;
}

Forest parse_forest(std::string_view text) {
    std::vector<Tree> trees;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] == ' ') {
            ++pos;
            continue;
        }
        if (text[pos] == '1' && trees.empty()) {
            ++pos;
            continue;
        }
        std::size_t local = pos;
        Tree t = parse_tree_at(text, local);
        trees.push_back(std::move(t));
        pos = local;
    }
    return Forest(std::move(trees));
}

Int tree_factorial(const Tree& t) {
    Int out = t.degree();
    for (const Tree& c : t.children()) out *= tree_factorial(c);
    return out;
}

namespace {

std::mutex enum_mutex;
std::map<int, std::vector<Tree>> tree_cache;
std::map<int, std::vector<Forest>> forest_cache;

// Multisets of trees with total degree n, members drawn with non-decreasing
// canonical index from the pool of all trees of degree <= n.
void build_forests(int n, const std::vector<Tree>& pool, std::size_t min_index,
                   std::vector<Tree>& current, std::vector<Forest>& out) {
    if (n == 0) {
        out.push_back(Forest(current));
        return;
    }
    for (std::size_t i = min_index; i < pool.size(); ++i) {
        if (pool[i].degree() > n) break;
        current.push_back(pool[i]);
        build_forests(n - pool[i].degree(), pool, i, current, out);
        current.pop_back();
    }
}

const std::vector<Forest>& forests_locked(int degree);

const std::vector<Tree>& trees_locked(int degree) {
    auto it = tree_cache.find(degree);
    if (it != tree_cache.end()) return it->second;
    std::vector<Tree> out;
    if (degree == 1) {
        out.push_back(Tree());
    } else if (degree > 1) {
        // A tree of degree n is a root grafted onto a forest of degree n-1.
        for (const Forest& f : forests_locked(degree - 1)) out.push_back(Tree(f.trees()));
        std::sort(out.begin(), out.end());
    }
    return tree_cache.emplace(degree, std::move(out)).first->second;
}

const std::vector<Forest>& forests_locked(int degree) {
    auto it = forest_cache.find(degree);
    if (it != forest_cache.end()) return it->second;
    std::vector<Tree> pool;
    for (int d = 1; d <= degree; ++d) {
        const auto& td = trees_locked(d);
        pool.insert(pool.end(), td.begin(), td.end());
    }
    std::vector<Forest> out;
    std::vector<Tree> current;
    build_forests(degree, pool, 0, current, out);
    std::sort(out.begin(), out.end(), [](const Forest& a, const Forest& b) { return a < b; });
    return forest_cache.emplace(degree, std::move(out)).first->second;
}

}  // namespace

const std::vector<Tree>& enumerate_trees(int degree) {
    if (degree < 1) throw DomainError("enumerate_trees: degree must be >= 1");
    std::lock_guard lock(enum_mutex);
    return trees_locked(degree);
}

const std::vector<Forest>& enumerate_forests(int degree) {
    if (degree < 0) throw DomainError("enumerate_forests: degree must be >= 0");
    std::lock_guard lock(enum_mutex);
    return forests_locked(degree);
}

namespace {

struct FlatNode {
    const Tree* subtree;
    int parent;                 // -1 for the root
    std::vector<int> children;  // indices into the flat array
};

void flatten(const Tree& t, int parent, std::vector<FlatNode>& nodes) {
    int self = static_cast<int>(nodes.size());
    nodes.push_back(FlatNode{&t, parent, {}});
    if (parent >= 0) nodes[parent].children.push_back(self);
    for (const Tree& c : t.children()) flatten(c, self, nodes);
}

Tree rebuild_without(const std::vector<FlatNode>& nodes, int index, unsigned long removed) {
    std::vector<Tree> children;
    for (int c : nodes[index].children)
        if (!(removed >> c & 1)) children.push_back(rebuild_without(nodes, c, removed));
    return children.empty() ? Tree() : Tree(std::move(children));
}

}  // namespace

std::vector<Cut> admissible_cuts(const Tree& t) {
    int n = t.degree();
    if (n > 24) throw DomainError("admissible_cuts: tree too large for subset enumeration");
    std::vector<FlatNode> nodes;
    nodes.reserve(n);
    flatten(t, -1, nodes);

    // ancestor[i] = bitmask of strict ancestors of node i (excluding the root,
    // which carries no incoming edge).
    std::vector<unsigned long> ancestor(n, 0);
    for (int i = 1; i < n; ++i) {
        int p = nodes[i].parent;
        ancestor[i] = ancestor[p] | (p > 0 ? 1ul << p : 0);
    }

    std::vector<Cut> cuts;
    // Edges are identified with their lower vertex, nodes 1..n-1.  A subset
    // is admissible iff no chosen edge has a chosen edge on its root path.
    unsigned long full = n >= 2 ? ((1ul << n) - 2) : 0;  // bits 1..n-1
    for (unsigned long mask = 2; mask <= full; mask += 2) {
        bool ok = true;
        for (int i = 1; i < n && ok; ++i)
            if ((mask >> i & 1) && (ancestor[i] & mask)) ok = false;
        if (!ok) continue;
        std::vector<Tree> pruned;
        for (int i = 1; i < n; ++i)
            if (mask >> i & 1) pruned.push_back(*nodes[i].subtree);
        cuts.push_back(Cut{Forest(std::move(pruned)), rebuild_without(nodes, 0, mask)});
    }
    return cuts;
}

}  // namespace renorm
