#include "renorm/sympoly.hpp"

#include <atomic>

#include "renorm/errors.hpp"

namespace renorm {

namespace {
std::atomic<int> g_tau_cap{4};
}

int SymPoly::tau_cap() { return g_tau_cap.load(); }

void SymPoly::set_tau_cap(int cap) {
    if (cap < 0) throw DomainError("tau cap must be >= 0");
    g_tau_cap.store(cap);
}

SymPoly::SymPoly(const Rat& c) {
    if (c != 0) terms_[Mono{}] = c;
}

SymPoly SymPoly::monomial(const Mono& m, const Rat& coeff) {
    SymPoly p;
    if (coeff != 0 && m.tau <= tau_cap()) p.terms_[m] = coeff;
    return p;
}

SymPoly SymPoly::pi2(int power) { return monomial(Mono{power, 0, 0, 0}, 1); }
SymPoly SymPoly::log_scale(int power) { return monomial(Mono{0, power, 0, 0}, 1); }
SymPoly SymPoly::tau(int power) { return monomial(Mono{0, 0, power, 0}, 1); }
SymPoly SymPoly::u(int power) { return monomial(Mono{0, 0, 0, power}, 1); }

bool SymPoly::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{});
}

Rat SymPoly::rational_value() const {
    if (terms_.empty()) return 0;
    if (!is_rational()) throw DomainError("SymPoly is not a rational constant: " + to_string());
    return terms_.begin()->second;
}

Rat SymPoly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

int SymPoly::degree_pi2() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.pi2);
    return d;
}
int SymPoly::degree_l() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.l);
    return d;
}
int SymPoly::degree_tau() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.tau);
    return d;
}
int SymPoly::degree_u() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.u);
    return d;
}

void SymPoly::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

SymPoly SymPoly::operator-() const {
    SymPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
    for (const auto& [m, c] : o.terms_) terms_[m] += c;
    prune();
    return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
    for (const auto& [m, c] : o.terms_) terms_[m] -= c;
    prune();
    return *this;
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
    int cap = SymPoly::tau_cap();
    SymPoly out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Mono m{ma.pi2 + mb.pi2, ma.l + mb.l, ma.tau + mb.tau, ma.u + mb.u};
            if (m.tau > cap) continue;
            out.terms_[m] += ca * cb;
        }
    }
    out.prune();
    return out;
}

SymPoly operator*(const SymPoly& a, const Rat& c) {
    if (c == 0) return SymPoly();
    SymPoly out = a;
    for (auto& [m, v] : out.terms_) v *= c;
    return out;
}

SymPoly SymPoly::derivative_tau() const {
    SymPoly out;
    for (const auto& [m, c] : terms_) {
        if (m.tau == 0) continue;
        Mono d = m;
        d.tau -= 1;
        out.terms_[d] = c * m.tau;
    }
    return out;
}

SymPoly SymPoly::subst_tau(const Rat& value) const {
    SymPoly out;
    for (const auto& [m, c] : terms_) {
        Mono d = m;
        d.tau = 0;
        out.terms_[d] += c * rat_pow(value, m.tau);
    }
    out.prune();
    return out;
}

SymPoly SymPoly::truncate_tau(int max_degree) const {
    SymPoly out;
    for (const auto& [m, c] : terms_)
        if (m.tau <= max_degree) out.terms_[m] = c;
    return out;
}

SymPoly SymPoly::set_u_zero() const {
    SymPoly out;
    for (const auto& [m, c] : terms_)
        if (m.u == 0) out.terms_[m] = c;
    return out;
}

namespace {

void append_power(std::string& s, const char* sym, int p) {
    if (p == 0) return;
    if (!s.empty()) s += ' ';
    s += sym;
    if (p != 1) s += "^" + std::to_string(p);
}

}  // namespace

std::string SymPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string syms;
        if (m.pi2 != 0) append_power(syms, "pi", 2 * m.pi2);
        append_power(syms, "L", m.l);
        append_power(syms, "t", m.tau);
        append_power(syms, "u", m.u);
        std::string num = a.get_num().get_str();
        std::string den = a.get_den().get_str();
        if (syms.empty()) {
            out += num;
            if (den != "1") out += "/" + den;
        } else {
            if (num != "1") out += num + " ";
            out += syms;
            if (den != "1") out += "/" + den;
        }
    }
    return out;
}

}  // namespace renorm
