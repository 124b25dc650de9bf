#pragma once

#include <optional>

#include "renorm/character.hpp"

namespace renorm {

/// The two factors of the Birkhoff decomposition f = minus^{star -1} star
/// plus: minus collects the counter-terms (pole parts), plus the
/// renormalized values.
struct BirkhoffPair {
    LinMap minus;
    LinMap plus;
};

/// Bogoliubov's preparation map R-bar(x) = f(x) + sum f_-(x') f(x'') over
/// the reduced coproduct, with the counter-term values supplied explicitly
/// for every forest of lower degree.  A missing value is a recursion-order
/// bug and throws.
Series bogoliubov_bar(const LinMap& f, const std::map<Forest, Series>& lower_minus,
                      const Forest& x);

/// Minimal-subtraction decomposition: minus(t) = -pi(R-bar(t)),
/// plus(t) = (1 - pi)(R-bar(t)), both extended multiplicatively.  The
/// recursion is memoized per canonical tree and shared by both factors.
BirkhoffPair birkhoff_decompose(const LinMap& f);

struct LocalityReport {
    bool local = true;
    std::optional<Tree> witness;
    std::string detail;
};

/// Checks that every counter-term value on a tree of degree <= max_degree
/// is a pure pole with no dependence on the log symbol.
LocalityReport locality_check(const BirkhoffPair& pair, int max_degree);

/// The scalar beta value on a tree, computed by all three routes
///   Res rtilde(f),  deg * Res(minus^{star -1}),  -deg * Res(minus)
/// which must agree and be free of z, the log symbol and tau; raises
/// ConsistencyError otherwise.
SymPoly beta_scalar(const LinMap& f, const BirkhoffPair& pair, const Tree& t);

}  // namespace renorm
