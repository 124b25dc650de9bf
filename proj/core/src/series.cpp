#include "renorm/series.hpp"

#include <algorithm>

#include "renorm/errors.hpp"

namespace renorm {

namespace {

int clamp_exp(long long e) {
    if (e > kExactHi) return kExactHi;
    if (e < -kExactHi) return -kExactHi;
    return static_cast<int>(e);
}

}  // namespace

Series::Series() : lo_(kExactHi), hi_(kExactHi) {}

void Series::normalize() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second.is_zero() || it->first > hi_)
            it = coeffs_.erase(it);
        else
            ++it;
    }
    // Coefficients certified zero below the first stored one tighten the
    // support bound.
    if (!coeffs_.empty())
        lo_ = coeffs_.begin()->first;
    else
        lo_ = clamp_exp(static_cast<long long>(hi_) + 1);
}

Series Series::constant(const SymPoly& p) { return monomial(0, p); }

Series Series::monomial(int zexp, const SymPoly& coeff) {
    Series s;
    s.lo_ = zexp;
    s.hi_ = kExactHi;
    if (!coeff.is_zero()) s.coeffs_[zexp] = coeff;
    s.normalize();
    return s;
}

Series Series::truncated(std::map<int, SymPoly> coeffs, int lo, int hi) {
    if (lo > hi + 1) throw DomainError("Series window is empty");
    Series s;
    s.coeffs_ = std::move(coeffs);
    s.lo_ = lo;
    s.hi_ = hi;
    for (const auto& [e, c] : s.coeffs_)
        if (e < lo) throw DomainError("Series coefficient below the window");
    s.normalize();
    return s;
}

SymPoly Series::coeff(int zexp) const {
    if (zexp > hi_)
        throw PrecisionError("coefficient of z^" + std::to_string(zexp) +
                             " is outside the certified window (hi = " + std::to_string(hi_) + ")");
    auto it = coeffs_.find(zexp);
    return it == coeffs_.end() ? SymPoly() : it->second;
}

std::optional<int> Series::valuation() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.begin()->first;
}

Series Series::clipped_hi(int new_hi) const {
    Series s = *this;
    s.hi_ = std::min(hi_, new_hi);
    s.lo_ = std::min(lo_, s.hi_ + 1);
    s.normalize();
    return s;
}

Series Series::operator-() const {
    Series s = *this;
    for (auto& [e, c] : s.coeffs_) c = -c;
    return s;
}

Series operator+(const Series& a, const Series& b) {
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    Series s;
    s.lo_ = std::min(a.lo_, b.lo_);
    s.hi_ = std::min(a.hi_, b.hi_);
    s.coeffs_ = a.coeffs_;
    for (const auto& [e, c] : b.coeffs_) s.coeffs_[e] += c;
    s.normalize();
    return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return Series();
    Series s;
    s.lo_ = clamp_exp(static_cast<long long>(a.lo_) + b.lo_);
    if (a.exact() && b.exact())
        s.hi_ = kExactHi;
    else
        s.hi_ = clamp_exp(std::min(static_cast<long long>(a.hi_) + b.lo_,
                                   static_cast<long long>(b.hi_) + a.lo_));
    for (const auto& [ea, ca] : a.coeffs_) {
        for (const auto& [eb, cb] : b.coeffs_) {
            long long e = static_cast<long long>(ea) + eb;
            if (e > s.hi_) continue;
            s.coeffs_[static_cast<int>(e)] += ca * cb;
        }
    }
    s.normalize();
    return s;
}

Series operator*(const Series& a, const SymPoly& c) {
    if (c.is_zero()) return Series();
    Series s = a;
    for (auto& [e, v] : s.coeffs_) v = v * c;
    s.normalize();
    return s;
}

Series Series::shifted(int zexp) const {
    if (is_exact_zero()) return *this;
    Series s;
    s.lo_ = clamp_exp(static_cast<long long>(lo_) + zexp);
    s.hi_ = exact() ? kExactHi : clamp_exp(static_cast<long long>(hi_) + zexp);
    for (const auto& [e, c] : coeffs_) s.coeffs_[e + zexp] = c;
    s.normalize();
    return s;
}

bool equal_on_common_window(const Series& a, const Series& b) {
    int hi = std::min(a.hi(), b.hi());
    for (const auto& [e, c] : a.coeffs())
        if (e <= hi && !(c == b.coeff(e))) return false;
    for (const auto& [e, c] : b.coeffs())
        if (e <= hi && !(c == a.coeff(e))) return false;
    return true;
}

Series invert(const Series& a, std::optional<int> hi_hint) {
    auto val = a.valuation();
    if (!val) throw DomainError("cannot invert a series that is zero on its window");
    int v = *val;
    const SymPoly& lead = a.coeffs().at(v);
    if (!lead.is_rational())
        throw DomainError("series inversion needs a rational leading coefficient, got " +
                          lead.to_string() + " at z^" + std::to_string(v));
    Rat c = lead.rational_value();

    if (a.coeffs().size() == 1 && a.exact())
        return Series::monomial(-v, SymPoly(Rat(1) / c));

    int out_hi;
    if (a.exact()) {
        if (!hi_hint)
            throw PrecisionError("inverting an exact non-monomial series needs a truncation order");
        out_hi = *hi_hint;
    } else {
        out_hi = a.hi() - 2 * v;
        if (hi_hint) out_hi = std::min(out_hi, *hi_hint);
    }

    // a = c z^v (1 + r) with val(r) >= 1; invert the unit by the geometric
    // series, which only needs r through z^{hi - v}.
    Series r = a.shifted(-v) * Rat(Rat(1) / c) - Series::constant(Rat(1));
    if (auto rv = r.valuation(); rv && *rv < 1)
        throw ConsistencyError("series inversion: unit part has nonpositive valuation");
    Series acc = Series::constant(Rat(1));
    Series pow = Series::constant(Rat(1));
    int steps = std::max(0, a.exact() ? out_hi + v : a.hi() - v);
    for (int k = 1; k <= steps; ++k) {
        pow = pow * (-r);
        if (pow.is_zero_on_window() && pow.exact()) break;
        acc = acc + pow;
    }
    Series out = acc.shifted(-v) * Rat(Rat(1) / c);
    return out.clipped_hi(out_hi);
}

Series exp_series(const Series& a) {
    // Termination needs a pole-free argument whose z^0 monomials all carry
    // tau, and exact arguments must be tau-graded throughout.
    if (auto v = a.valuation(); v && *v < 0)
        throw DomainError("exp argument has a pole (valuation " + std::to_string(*v) + ")");
    for (const auto& [e, c] : a.coeffs()) {
        if (e > 0 && !a.exact()) continue;
        for (const auto& [m, v] : c.terms())
            if (m.tau == 0)
                throw DomainError("exp argument has a non-nilpotent term at z^" +
                                  std::to_string(e) + ": " + c.to_string());
    }
    Series acc = Series::constant(Rat(1));
    Series term = Series::constant(Rat(1));
    for (int k = 1; k <= 1000; ++k) {
        term = term * a * Rat(Rat(1, k));
        if (term.is_exact_zero()) return acc;
        acc = acc + term;
        // Later terms only have support further right, so the certified
        // part of the sum is complete.
        if (term.is_zero_on_window() || (*term.valuation()) > acc.hi()) return acc;
    }
    throw DomainError("exp_series did not terminate");
}

Series pole_part(const Series& a) {
    if (a.lo() < 0 && a.hi() < -1)
        throw PrecisionError("pole part needs the window to certify all negative exponents");
    std::map<int, SymPoly> neg;
    for (const auto& [e, c] : a.coeffs())
        if (e < 0) neg[e] = c;
    Series s = Series::truncated(std::move(neg), std::min(a.lo(), 0), kExactHi);
    return s;
}

Series holomorphic_part(const Series& a) { return a - pole_part(a); }

SymPoly residue(const Series& a) {
    if (a.lo() > -1) return SymPoly();
    if (a.hi() < -1) throw PrecisionError("residue: window does not certify z^-1");
    return a.coeff(-1);
}

SymPoly eval_at_zero(const Series& a) {
    if (auto v = a.valuation(); v && *v < 0)
        throw DomainError("not holomorphic at 0: pole of order " + std::to_string(-*v));
    if (a.lo() < 0 && a.hi() < -1)
        throw PrecisionError("eval_at_zero: window does not certify the pole part");
    if (!a.known_through(0)) throw PrecisionError("eval_at_zero: window does not certify z^0");
    return a.coeff(0);
}

Series set_u_zero(const Series& a) {
    std::map<int, SymPoly> out;
    for (const auto& [e, c] : a.coeffs()) out[e] = c.set_u_zero();
    return Series::truncated(std::move(out), a.lo(), a.hi());
}

Series derivative_tau(const Series& a) {
    std::map<int, SymPoly> out;
    for (const auto& [e, c] : a.coeffs()) out[e] = c.derivative_tau();
    return Series::truncated(std::move(out), a.lo(), a.hi());
}

Series subst_tau(const Series& a, const Rat& value) {
    std::map<int, SymPoly> out;
    for (const auto& [e, c] : a.coeffs()) out[e] = c.subst_tau(value);
    return Series::truncated(std::move(out), a.lo(), a.hi());
}

Series truncate_tau(const Series& a, int max_degree) {
    std::map<int, SymPoly> out;
    for (const auto& [e, c] : a.coeffs()) out[e] = c.truncate_tau(max_degree);
    return Series::truncated(std::move(out), a.lo(), a.hi());
}

Series exp_z_linear(const SymPoly& slope, int hi) {
    if (hi < 0) throw DomainError("exp_z_linear: negative truncation order");
    std::map<int, SymPoly> out;
    SymPoly pow = SymPoly(Rat(1));
    out[0] = pow;
    for (int k = 1; k <= hi; ++k) {
        pow = pow * slope;
        out[k] = pow * Rat(Rat(1) / factorial(k));
    }
    return Series::truncated(std::move(out), 0, hi);
}

Series bn_series(int n, int hi) {
    if (n < 1) throw DomainError("bn_series: n must be >= 1");
    if (hi < -1) throw DomainError("bn_series: hi must be >= -1");
    // sin(pi n z)/(pi n z) = sum_k (-1)^k (pi n z)^{2k}/(2k+1)!; then
    // B(nz, 1-nz) = 1/(nz) * 1/(that sum).
    int terms = std::max(1, (hi + 3) / 2 + 1);
    std::map<int, SymPoly> s;
    Rat n2k = 1;
    for (int k = 0; k < terms; ++k) {
        Rat coeff = Rat((k % 2 == 0) ? 1 : -1) * n2k / factorial(2 * k + 1);
        s[2 * k] = SymPoly::monomial(Mono{k, 0, 0, 0}, coeff);
        n2k *= Rat(n) * Rat(n);
    }
    Series sinc = Series::truncated(std::move(s), 0, 2 * terms - 1);
    Series inv = invert(sinc);
    return (inv.shifted(-1) * Rat(Rat(1, n))).clipped_hi(hi);
}

std::string Series::to_string() const {
    std::string out;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        std::string cs = c.to_string();
        bool neg = false;
        if (cs.size() > 1 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
            cs.find(" - ") == std::string::npos) {
            neg = true;
            cs = cs.substr(1);
        }
        bool composite = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
        if (composite) cs = "(" + cs + ")";
        std::string zs;
        if (e == 1)
            zs = "z";
        else if (e != 0)
            zs = "z^" + std::to_string(e);
        std::string term;
        if (zs.empty())
            term = cs;
        else if (cs == "1")
            term = zs;
        else
            term = cs + " " + zs;
        if (first) {
            out += (neg ? "-" : "") + term;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + term;
        }
    }
    if (first) out = "0";
    if (!exact()) out += " + O(z^" + std::to_string(hi_ + 1) + ")";
    return out;
}

}  // namespace renorm
