#pragma once

#include <functional>
#include <memory>
#include <string>

#include "renorm/config.hpp"
#include "renorm/hopf.hpp"
#include "renorm/series.hpp"

namespace renorm {

/// Element of the convolution algebra L(H, A): a linear map from forests to
/// Laurent series, memoized per canonical forest and shared by value.
///
/// The kind records how the map was built.  Character means multiplicative
/// with f(1) = 1; Infinitesimal means f(1) = 0 and f kills proper products;
/// the two general kinds only promise the value at the unit.  Structural
/// properties are verified by tests, never assumed blindly by callers that
/// need them.
class LinMap {
public:
    enum class Kind { Character, Infinitesimal, Unital, Vanishing };

    /// Multiplicative extension of a map defined on single trees.
    static LinMap character(std::function<Series(const Tree&)> on_tree);

    /// Leibniz extension: vanishes on the unit and on proper products.
    static LinMap infinitesimal(std::function<Series(const Tree&)> on_tree);

    /// Arbitrary per-forest values; kind must be Unital or Vanishing.
    static LinMap from_forest_fn(Kind kind, std::function<Series(const Forest&)> on_forest);

    /// The convolution unit e = eta o epsilon.
    static LinMap counit_character();

    Series operator()(const Forest& f) const;
    Series operator()(const Tree& t) const;
    Series operator()(const HopfElement& x) const;  // linear extension

    Kind kind() const;
    bool unital() const;  // f(1) = 1

private:
    struct State;
    std::shared_ptr<State> state_;
};

/// (f star g)(x) = m o (f (x) g) o Delta(x).
LinMap convolve(const LinMap& f, const LinMap& g);

/// Star inverse of a unital map: composition with the antipode for
/// characters, the geometric series otherwise.
LinMap star_inverse(const LinMap& f);

/// The geometric-series inverse e + sum_k (e - f)^{star k}, regardless of
/// kind; used as the second route in cross-checks.
LinMap star_inverse_geometric(const LinMap& f);

/// exp^star of a map vanishing at the unit; the sum on a degree-n forest
/// stops at n terms.
LinMap exp_star(const LinMap& xi);

/// log^star of a unital map.
LinMap log_star(const LinMap& f);

/// The regularized toy-model map: a tree is sent to
/// exp(-deg z l) * prod over vertices of B_{subtree size}, expanded through
/// z^{cfg.build_hi()}.
LinMap toy_character(const Config& cfg);

/// f o Y: scales the value on a degree-n forest by n.
LinMap compose_grading(const LinMap& f);

/// f o Y^n.
LinMap compose_grading_power(const LinMap& f, int n);

/// Multiplies every value by z^k.
LinMap scale_by_z(const LinMap& f, int k);

/// The flow f^t: value on a degree-n forest gains a factor exp(t z n);
/// exact rational t.
LinMap scale_flow(const LinMap& f, const Rat& t);

/// The flow at symbolic time tau, truncated by the tau cap.
LinMap scale_flow_tau(const LinMap& f);

/// R-tilde(f) = f^{star -1} star (f o Y); infinitesimal-valued on
/// characters (verified by tests, see the cocycle checks).
LinMap rtilde(const LinMap& f);

/// h_t = f^{star -1} star f^t.
LinMap h_flow(const LinMap& f, const Rat& t);
LinMap h_flow_tau(const LinMap& f);

/// F_t: the z -> 0 limit of h_t, a scalar-valued character stored as
/// constant series.  Throws if a value keeps a pole (the map is not local
/// or the window is too small).
LinMap renorm_group(const LinMap& f, const Rat& t);

/// Multiplicativity of f on all products of basis forests with total
/// degree <= max_total_degree.  Returns the first violating pair if any.
bool is_character_on(const LinMap& f, int max_total_degree, std::string* detail = nullptr);

/// The infinitesimal-character law xi(xy) = xi(x) eps(y) + eps(x) xi(y).
bool is_infinitesimal_on(const LinMap& f, int max_total_degree, std::string* detail = nullptr);

/// Exact equality of two maps on every forest of total degree <= max_degree
/// (windows intersected; both sides must certify through `through`).
bool equal_on_forests(const LinMap& a, const LinMap& b, int max_degree, int through,
                      std::string* detail = nullptr);

}  // namespace renorm
