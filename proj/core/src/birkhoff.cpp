#include "renorm/birkhoff.hpp"

#include <map>
#include <mutex>

#include "renorm/errors.hpp"

namespace renorm {

Series bogoliubov_bar(const LinMap& f, const std::map<Forest, Series>& lower_minus,
                      const Forest& x) {
    if (x.empty()) throw DomainError("bogoliubov_bar: the unit is excluded by convention");
    Series out = f(x);
    TensorElement red = reduced_coproduct(HopfElement::from(x));
    for (const auto& [k, c] : red.terms()) {
        auto it = lower_minus.find(k.first);
        if (it == lower_minus.end())
            throw Error("bogoliubov_bar: missing counter-term value for " + k.first.to_string() +
                        " (recursion out of order)");
        out += it->second * f(k.second) * c;
    }
    return out;
}

namespace {

struct DecompositionState {
    LinMap f;
    std::map<Tree, Series> rbar;   // per-tree preparation values
    std::map<Tree, Series> minus;  // per-tree counter terms
    std::mutex mu;

    // R-bar(t) = f(t) + sum over cuts of minus(P_c) f(R_c); well-founded
    // because both cut parts have strictly smaller degree.
    Series rbar_tree(const Tree& t) {
        if (auto it = rbar.find(t); it != rbar.end()) return it->second;
        Series out = f(t);
        for (const Cut& c : admissible_cuts(t)) {
            Series m = Series::constant(Rat(1));
            for (const Tree& p : c.pruned.trees()) m = m * minus_tree(p);
            out += m * f(c.cotree);
        }
        return rbar.emplace(t, std::move(out)).first->second;
    }

    Series minus_tree(const Tree& t) {
        if (auto it = minus.find(t); it != minus.end()) return it->second;
        Series v = -pole_part(rbar_tree(t));
        return minus.emplace(t, std::move(v)).first->second;
    }

    Series plus_tree(const Tree& t) {
        Series r = rbar_tree(t);
        return r - pole_part(r);
    }
};

}  // namespace

BirkhoffPair birkhoff_decompose(const LinMap& f) {
    if (f.kind() != LinMap::Kind::Character)
        throw DomainError("birkhoff_decompose: input must be a character");
    auto state = std::make_shared<DecompositionState>();
    state->f = f;
    LinMap minus = LinMap::character([state](const Tree& t) {
        std::lock_guard lock(state->mu);
        return state->minus_tree(t);
    });
    LinMap plus = LinMap::character([state](const Tree& t) {
        std::lock_guard lock(state->mu);
        return state->plus_tree(t);
    });
    return BirkhoffPair{minus, plus};
}

LocalityReport locality_check(const BirkhoffPair& pair, int max_degree) {
    for (int d = 1; d <= max_degree; ++d) {
        for (const Tree& t : enumerate_trees(d)) {
            Series v = pair.minus(t);
            for (const auto& [e, c] : v.coeffs()) {
                if (e >= 0)
                    return LocalityReport{false, t,
                                          "counter term has a non-negative z power at " +
                                              t.to_string() + ": " + v.to_string()};
                if (c.degree_l() > 0)
                    return LocalityReport{false, t,
                                          "counter term depends on the log symbol at " +
                                              t.to_string() + ": " + v.to_string()};
            }
        }
    }
    return LocalityReport{};
}

SymPoly beta_scalar(const LinMap& f, const BirkhoffPair& pair, const Tree& t) {
    // Route 1: the flow generator Res rtilde(f), transported back through
    // the finite part.  The raw residue generates the flow of f itself; it
    // matches the counter-term routes only after conjugating with the
    // scalar character x -> (plus(x) at z = 0), and on degree-1 elements
    // the conjugation is invisible.
    LinMap res_char = LinMap::infinitesimal([f](const Tree& tree) {
        return Series::constant(residue(rtilde(f)(tree)));
    });
    LinMap finite_part = LinMap::character(
        [pair](const Tree& tree) { return Series::constant(eval_at_zero(pair.plus(tree))); });
    LinMap conjugated = convolve(convolve(finite_part, res_char), star_inverse(finite_part));
    SymPoly via_rtilde = eval_at_zero(conjugated(t));
    // Routes 2 and 3: residues of the counter-term factor and its inverse.
    SymPoly via_minus_inv = residue(star_inverse(pair.minus)(t)) * Rat(t.degree());
    SymPoly via_minus = -(residue(pair.minus(t)) * Rat(t.degree()));
    if (!(via_rtilde == via_minus_inv) || !(via_rtilde == via_minus))
        throw ConsistencyError("beta_scalar: the three routes disagree at " + t.to_string() +
                               ": " + via_rtilde.to_string() + " / " + via_minus_inv.to_string() +
                               " / " + via_minus.to_string());
    if (t.degree() == 1 && !(residue(rtilde(f)(t)) == via_minus))
        throw ConsistencyError("beta_scalar: raw flow-generator residue differs on a primitive");
    if (via_rtilde.degree_l() > 0 || via_rtilde.degree_tau() > 0 || via_rtilde.degree_u() > 0)
        throw ConsistencyError("beta_scalar: value is not a constant at " + t.to_string() + ": " +
                               via_rtilde.to_string());
    return via_rtilde;
}

}  // namespace renorm
