#pragma once

#include <map>
#include <optional>
#include <string>

#include "renorm/sympoly.hpp"

namespace renorm {

/// Window sentinel: a series with hi() == kExactHi is a finite Laurent
/// polynomial known at every order.
inline constexpr int kExactHi = 1 << 24;

/// Truncated Laurent series in the regularization variable z over SymPoly.
///
/// A value with window [lo, hi] asserts three things: every coefficient
/// below lo vanishes, the coefficients in [lo, hi] are stored exactly, and
/// nothing is claimed above hi.  Arithmetic propagates the largest window
/// these rules allow; an operation that would need unknown coefficients
/// reports a PrecisionError instead of returning a silently wrong zero.
class Series {
public:
    /// The exact zero series.
    Series();

    static Series zero() { return Series(); }
    static Series constant(const SymPoly& p);            // exact, at z^0
    static Series constant(const Rat& c) { return constant(SymPoly(c)); }
    static Series monomial(int zexp, const SymPoly& coeff);  // exact
    static Series truncated(std::map<int, SymPoly> coeffs, int lo, int hi);

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool exact() const { return hi_ == kExactHi; }

    const std::map<int, SymPoly>& coeffs() const { return coeffs_; }

    /// Coefficient of z^zexp; zero below the window, PrecisionError above it.
    SymPoly coeff(int zexp) const;

    /// True if every stored coefficient is zero (says nothing above hi()).
    bool is_zero_on_window() const { return coeffs_.empty(); }
    /// True if this is the zero series at every order.
    bool is_exact_zero() const { return coeffs_.empty() && exact(); }

    /// Smallest exponent with a nonzero stored coefficient.
    std::optional<int> valuation() const;

    bool known_through(int zexp) const { return zexp <= hi_; }

    /// Forgets knowledge above new_hi.
    Series clipped_hi(int new_hi) const;

    Series operator-() const;
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    friend Series operator*(const Series& a, const SymPoly& c);
    friend Series operator*(const Series& a, const Rat& c) { return a * SymPoly(c); }
    friend Series operator*(const SymPoly& c, const Series& a) { return a * c; }
    friend Series operator*(const Rat& c, const Series& a) { return a * SymPoly(c); }

    Series shifted(int zexp) const;  // multiply by z^zexp

    std::string to_string() const;

private:
    void normalize();
    std::map<int, SymPoly> coeffs_;
    int lo_;
    int hi_;
};

/// Equality of the coefficients both sides certify, i.e. at every exponent
/// <= min(a.hi, b.hi).  Callers that need the comparison to cover a given
/// range should check known_through first.
bool equal_on_common_window(const Series& a, const Series& b);

/// Multiplicative inverse.  The leading coefficient must be a nonzero
/// rational constant.  For non-monomial exact inputs a truncation order
/// must be supplied through hi_hint.
Series invert(const Series& a, std::optional<int> hi_hint = std::nullopt);

/// exp of a series whose monomials at z-exponent <= 0 all carry a tau
/// factor (so the sum terminates inside the z-window and the tau cap).
Series exp_series(const Series& a);

/// Minimal subtraction: keeps the strictly negative z-exponents.  Needs the
/// window to certify every negative coefficient; the result is exact.
Series pole_part(const Series& a);

/// The complementary projection (1 - pi): keeps exponents >= 0.
Series holomorphic_part(const Series& a);

/// Coefficient of z^-1.
SymPoly residue(const Series& a);

/// Constant term of a series with no pole; DomainError if a pole remains.
SymPoly eval_at_zero(const Series& a);

Series set_u_zero(const Series& a);
Series derivative_tau(const Series& a);
Series subst_tau(const Series& a, const Rat& value);
Series truncate_tau(const Series& a, int max_degree);

/// exp(slope * z) certified through z^hi.
Series exp_z_linear(const SymPoly& slope, int hi);

/// B(nz, 1-nz) = pi/sin(pi n z) as an exact-coefficient expansion
/// 1/(nz) + (pi^2 n/6) z + (7 pi^4 n^3/360) z^3 + ..., window [-1, hi].
Series bn_series(int n, int hi);

}  // namespace renorm
