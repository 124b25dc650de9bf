#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>

#include "renorm/sympoly.hpp"
#include "renorm/tree.hpp"

namespace renorm {

/// Finite rational-linear combination of forests; the elements of the
/// polynomial Hopf algebra on rooted trees.  Zero coefficients are never
/// stored, the empty map is 0, {empty forest -> 1} is the unit.
class HopfElement {
public:
    HopfElement() = default;
    static HopfElement unit();
    static HopfElement from(const Forest& f, const Rat& coeff = 1);
    static HopfElement from(const Tree& t, const Rat& coeff = 1);

    const std::map<Forest, Rat>& terms() const { return terms_; }
    Rat coeff(const Forest& f) const;
    bool is_zero() const { return terms_.empty(); }
    int max_degree() const;

    HopfElement operator-() const;
    HopfElement& operator+=(const HopfElement& o);
    HopfElement& operator-=(const HopfElement& o);
    friend HopfElement operator+(HopfElement a, const HopfElement& b) { return a += b; }
    friend HopfElement operator-(HopfElement a, const HopfElement& b) { return a -= b; }
    friend HopfElement operator*(const HopfElement& a, const HopfElement& b);
    friend HopfElement operator*(const HopfElement& a, const Rat& c);
    friend HopfElement operator*(const Rat& c, const HopfElement& a) { return a * c; }
    friend bool operator==(const HopfElement& a, const HopfElement& b) {
        return a.terms_ == b.terms_;
    }

    /// Signed sum of rational-coefficient forests; within one degree the
    /// canonically larger forest prints first, e.g. "-[[][]] + 2 [] [[]]".
    std::string to_string() const;

private:
    void prune();
    std::map<Forest, Rat> terms_;
};

/// Element of the tensor square, stored flat as a pair-keyed map.
class TensorElement {
public:
    TensorElement() = default;
    static TensorElement from(const Forest& left, const Forest& right, const Rat& coeff = 1);

    const std::map<std::pair<Forest, Forest>, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    TensorElement operator-() const;
    TensorElement& operator+=(const TensorElement& o);
    TensorElement& operator-=(const TensorElement& o);
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
    friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
    friend bool operator==(const TensorElement& a, const TensorElement& b) {
        return a.terms_ == b.terms_;
    }

    std::string to_string() const;

private:
    void prune();
    std::map<std::pair<Forest, Forest>, Rat> terms_;
};

/// Triple tensors, built on demand for the coassociativity checks.
using TripleTensor = std::map<std::tuple<Forest, Forest, Forest>, Rat>;

/// Delta(t) = t (x) 1 + 1 (x) t + sum over admissible cuts P_c (x) R_c,
/// extended multiplicatively to forests and linearly to elements.
TensorElement coproduct(const HopfElement& x);
TensorElement coproduct(const Forest& f);

/// Delta minus the primitive part x (x) 1 + 1 (x) x.
TensorElement reduced_coproduct(const HopfElement& x);

/// Coefficient of the empty forest.
Rat counit(const HopfElement& x);

/// Antipode by the recursion S(x) = -x - sum S(x') x''.  Memoized per tree
/// and extended multiplicatively.
HopfElement antipode(const HopfElement& x);
HopfElement antipode(const Tree& t);
HopfElement antipode(const Forest& f);

/// The mirror recursion S(x) = -x - sum x' S(x'').
HopfElement antipode_right_recursion(const Forest& f);

/// S = sum_n (eta o eps - id)^{star n}; terminates at n = deg by
/// connectedness.
HopfElement antipode_geometric(const Forest& f);

/// The grading operator Y: scales each forest term by its degree.
HopfElement apply_grading(const HopfElement& x);

TripleTensor coproduct_left_first(const Forest& f);   // (Delta (x) id) o Delta
TripleTensor coproduct_right_first(const Forest& f);  // (id (x) Delta) o Delta

/// Formal sum of exponentials e^q with rational q: the coefficient ring the
/// grading flow lands in when the flow time is an exact rational.
using ExpQ = std::map<Rat, Rat>;
using ExpElement = std::map<Forest, ExpQ>;

ExpQ expq_mul(const ExpQ& a, const ExpQ& b);

/// theta_t with exact rational t: scales a degree-n forest by e^{n t},
/// tracked as a formal exponent so that theta_s o theta_t = theta_{s+t}
/// holds exactly.
ExpElement theta(const HopfElement& x, const Rat& t);
ExpElement theta(const ExpElement& x, const Rat& t);
ExpElement to_exp_element(const HopfElement& x);

/// theta with a formal argument: scales a degree-n forest by exp(n * arg)
/// truncated by the tau cap.  Every monomial of arg must carry tau.
std::map<Forest, SymPoly> theta_formal(const HopfElement& x, const SymPoly& arg);

}  // namespace renorm
