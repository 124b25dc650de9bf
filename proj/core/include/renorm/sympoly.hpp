#pragma once

#include <compare>
#include <map>
#include <string>

#include "renorm/rational.hpp"

namespace renorm {

/// Exponent vector over the fixed symbol set: pi2 stands for pi^2, l for
/// the log of the mass ratio, tau for the flow parameter, u for e^{-tau}
/// in limit computations.
struct Mono {
    int pi2 = 0;
    int l = 0;
    int tau = 0;
    int u = 0;
    auto operator<=>(const Mono&) const = default;
};

/// Exact sparse polynomial in the four symbols over Rat.  The tau variable
/// is truncated: every operation drops monomials of tau-degree above
/// tau_cap(), i.e. arithmetic happens in Q[pi2,l,u][tau]/(tau^{cap+1}).
class SymPoly {
public:
    SymPoly() = default;
    SymPoly(const Rat& c);
    SymPoly(int c) : SymPoly(Rat(c)) {}

    static SymPoly monomial(const Mono& m, const Rat& coeff);
    static SymPoly pi2(int power = 1);
    static SymPoly log_scale(int power = 1);  // the symbol l
    static SymPoly tau(int power = 1);
    static SymPoly u(int power = 1);

    const std::map<Mono, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// True iff the polynomial is a rational constant (possibly zero).
    bool is_rational() const;
    Rat rational_value() const;  // requires is_rational()

    Rat coeff(const Mono& m) const;
    int degree_pi2() const;
    int degree_l() const;
    int degree_tau() const;
    int degree_u() const;

    SymPoly operator-() const;
    SymPoly& operator+=(const SymPoly& o);
    SymPoly& operator-=(const SymPoly& o);
    friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
    friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
    friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
    friend SymPoly operator*(const SymPoly& a, const Rat& c);
    friend SymPoly operator*(const Rat& c, const SymPoly& a) { return a * c; }
    friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.terms_ == b.terms_; }

    SymPoly derivative_tau() const;
    SymPoly subst_tau(const Rat& value) const;
    SymPoly truncate_tau(int max_degree) const;
    SymPoly set_u_zero() const;

    std::string to_string() const;

    /// Process-wide tau truncation degree (default 4).  Set once before
    /// computing; values built under different caps must not be mixed.
    static int tau_cap();
    static void set_tau_cap(int cap);

private:
    void prune();
    std::map<Mono, Rat> terms_;
};

}  // namespace renorm
