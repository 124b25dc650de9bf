#include "renorm/hopf.hpp"

#include <mutex>

#include "renorm/errors.hpp"

namespace renorm {

HopfElement HopfElement::unit() { return from(Forest()); }

HopfElement HopfElement::from(const Forest& f, const Rat& coeff) {
    HopfElement x;
    if (coeff != 0) x.terms_[f] = coeff;
    return x;
}

HopfElement HopfElement::from(const Tree& t, const Rat& coeff) {
    return from(Forest(t), coeff);
}

Rat HopfElement::coeff(const Forest& f) const {
    auto it = terms_.find(f);
    return it == terms_.end() ? Rat(0) : it->second;
}

int HopfElement::max_degree() const {
    int d = 0;
    for (const auto& [f, c] : terms_) d = std::max(d, f.degree());
    return d;
}

void HopfElement::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

HopfElement HopfElement::operator-() const {
    HopfElement out = *this;
    for (auto& [f, c] : out.terms_) c = -c;
    return out;
}

HopfElement& HopfElement::operator+=(const HopfElement& o) {
    for (const auto& [f, c] : o.terms_) terms_[f] += c;
    prune();
    return *this;
}

HopfElement& HopfElement::operator-=(const HopfElement& o) {
    for (const auto& [f, c] : o.terms_) terms_[f] -= c;
    prune();
    return *this;
}

HopfElement operator*(const HopfElement& a, const HopfElement& b) {
    HopfElement out;
    for (const auto& [fa, ca] : a.terms_)
        for (const auto& [fb, cb] : b.terms_) out.terms_[fa.concat(fb)] += ca * cb;
    out.prune();
    return out;
}

HopfElement operator*(const HopfElement& a, const Rat& c) {
    if (c == 0) return HopfElement();
    HopfElement out = a;
    for (auto& [f, v] : out.terms_) v *= c;
    return out;
}

std::string HopfElement::to_string() const {
    if (terms_.empty()) return "0";
    // Degree ascending, canonically descending within one degree; matches
    // the usual way antipode expansions are written.
    std::vector<const std::pair<const Forest, Rat>*> order;
    for (const auto& term : terms_) order.push_back(&term);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
        if (a->first.degree() != b->first.degree()) return a->first.degree() < b->first.degree();
        return b->first < a->first;
    });
    std::string out;
    bool first = true;
    for (const auto* term : order) {
        const auto& [f, c] = *term;
        Rat mag = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        if (f.empty()) {
            out += rat_to_string(mag);
        } else {
            if (mag != 1) out += rat_to_string(mag) + " ";
            out += f.to_string();
        }
    }
    return out;
}

TensorElement TensorElement::from(const Forest& l, const Forest& r, const Rat& coeff) {
    TensorElement x;
    if (coeff != 0) x.terms_[{l, r}] = coeff;
    return x;
}

void TensorElement::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

TensorElement TensorElement::operator-() const {
    TensorElement out = *this;
    for (auto& [k, c] : out.terms_) c = -c;
    return out;
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
    for (const auto& [k, c] : o.terms_) terms_[k] += c;
    prune();
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
    for (const auto& [k, c] : o.terms_) terms_[k] -= c;
    prune();
    return *this;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b) {
    TensorElement out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            out.terms_[{ka.first.concat(kb.first), ka.second.concat(kb.second)}] += ca * cb;
    out.prune();
    return out;
}

std::string TensorElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        Rat mag = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        if (mag != 1) out += rat_to_string(mag) + " ";
        out += k.first.to_string() + " (x) " + k.second.to_string();
    }
    return out;
}

namespace {

std::mutex hopf_mutex;

const TensorElement& tree_coproduct_locked(const Tree& t) {
    static std::map<Tree, TensorElement> cache;
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    TensorElement out = TensorElement::from(Forest(t), Forest());
    out += TensorElement::from(Forest(), Forest(t));
    for (const Cut& c : admissible_cuts(t))
        out += TensorElement::from(c.pruned, Forest(c.cotree));
    return cache.emplace(t, std::move(out)).first->second;
}

TensorElement forest_coproduct_locked(const Forest& f) {
    TensorElement out = TensorElement::from(Forest(), Forest());
    for (const Tree& t : f.trees()) out = out * tree_coproduct_locked(t);
    return out;
}

const HopfElement& tree_antipode_locked(const Tree& t) {
    static std::map<Tree, HopfElement> cache;
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    // S(t) = -t - sum_c S(P_c) R_c
    HopfElement out = -HopfElement::from(t);
    for (const Cut& c : admissible_cuts(t)) {
        HopfElement sp = HopfElement::unit();
        for (const Tree& p : c.pruned.trees()) sp = sp * tree_antipode_locked(p);
        out -= sp * HopfElement::from(c.cotree);
    }
    return cache.emplace(t, std::move(out)).first->second;
}

}  // namespace

TensorElement coproduct(const Forest& f) {
    std::lock_guard lock(hopf_mutex);
    return forest_coproduct_locked(f);
}

TensorElement coproduct(const HopfElement& x) {
    std::lock_guard lock(hopf_mutex);
    TensorElement out;
    for (const auto& [f, c] : x.terms()) {
        TensorElement d = forest_coproduct_locked(f);
        for (const auto& [k, v] : d.terms()) out += TensorElement::from(k.first, k.second, v * c);
    }
    return out;
}

TensorElement reduced_coproduct(const HopfElement& x) {
    TensorElement out = coproduct(x);
    for (const auto& [f, c] : x.terms()) {
        out -= TensorElement::from(f, Forest(), c);
        out -= TensorElement::from(Forest(), f, c);
    }
    return out;
}

Rat counit(const HopfElement& x) { return x.coeff(Forest()); }

HopfElement antipode(const Tree& t) {
    std::lock_guard lock(hopf_mutex);
    return tree_antipode_locked(t);
}

HopfElement antipode(const Forest& f) {
    std::lock_guard lock(hopf_mutex);
    HopfElement out = HopfElement::unit();
    for (const Tree& t : f.trees()) out = out * tree_antipode_locked(t);
    return out;
}

HopfElement antipode(const HopfElement& x) {
    HopfElement out;
    for (const auto& [f, c] : x.terms()) out += antipode(f) * c;
    return out;
}

HopfElement antipode_right_recursion(const Forest& f) {
    // S(x) = -x - sum x' S(x'') on single trees, multiplicative on forests.
    std::function<HopfElement(const Tree&)> s_tree = [&](const Tree& t) {
        HopfElement out = -HopfElement::from(t);
        for (const Cut& c : admissible_cuts(t)) {
            HopfElement sr = s_tree(c.cotree);
            out -= HopfElement::from(c.pruned) * sr;
        }
        return out;
    };
    HopfElement out = HopfElement::unit();
    for (const Tree& t : f.trees()) out = out * s_tree(t);
    return out;
}

namespace {

// Convolution of linear endomorphisms of H, evaluated on one forest:
// (f star g)(x) = m o (f (x) g) o Delta(x).
HopfElement conv_apply(const std::function<HopfElement(const Forest&)>& f,
                       const std::function<HopfElement(const Forest&)>& g, const Forest& x) {
    HopfElement out;
    TensorElement d = coproduct(HopfElement::from(x));
    for (const auto& [k, c] : d.terms()) out += f(k.first) * g(k.second) * c;
    return out;
}

}  // namespace

HopfElement antipode_geometric(const Forest& f) {
    // S = sum_{n>=0} (eta o eps - id)^{star n}; the n-th power kills
    // everything of degree < n, so the sum stops at deg(f).
    auto eta_eps_minus_id = [](const Forest& x) {
        HopfElement out = -HopfElement::from(x);
        if (x.empty()) out += HopfElement::unit();
        return out;
    };
    std::function<HopfElement(const Forest&)> power = [](const Forest& x) {
        return x.empty() ? HopfElement::unit() : HopfElement();  // (eta o eps)
    };
    HopfElement out = power(f);
    for (int n = 1; n <= f.degree(); ++n) {
        power = [prev = power, eta_eps_minus_id](const Forest& x) {
            return conv_apply(prev, eta_eps_minus_id, x);
        };
        out += power(f);
    }
    return out;
}

HopfElement apply_grading(const HopfElement& x) {
    HopfElement out;
    for (const auto& [f, c] : x.terms()) out += HopfElement::from(f, c * f.degree());
    return out;
}

TripleTensor coproduct_left_first(const Forest& f) {
    TripleTensor out;
    TensorElement outer = coproduct(HopfElement::from(f));
    for (const auto& [k, c] : outer.terms()) {
        TensorElement inner = coproduct(HopfElement::from(k.first));
        for (const auto& [k2, c2] : inner.terms())
            out[{k2.first, k2.second, k.second}] += c * c2;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

TripleTensor coproduct_right_first(const Forest& f) {
    TripleTensor out;
    TensorElement outer = coproduct(HopfElement::from(f));
    for (const auto& [k, c] : outer.terms()) {
        TensorElement inner = coproduct(HopfElement::from(k.second));
        for (const auto& [k2, c2] : inner.terms())
            out[{k.first, k2.first, k2.second}] += c * c2;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

ExpQ expq_mul(const ExpQ& a, const ExpQ& b) {
    ExpQ out;
    for (const auto& [qa, ca] : a)
        for (const auto& [qb, cb] : b) out[qa + qb] += ca * cb;
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

ExpElement to_exp_element(const HopfElement& x) {
    ExpElement out;
    for (const auto& [f, c] : x.terms()) out[f] = ExpQ{{Rat(0), c}};
    return out;
}

ExpElement theta(const HopfElement& x, const Rat& t) { return theta(to_exp_element(x), t); }

ExpElement theta(const ExpElement& x, const Rat& t) {
    ExpElement out;
    for (const auto& [f, coeff] : x) {
        ExpQ scaled;
        for (const auto& [q, c] : coeff) scaled[q + Rat(f.degree()) * t] = c;
        out[f] = std::move(scaled);
    }
    return out;
}

std::map<Forest, SymPoly> theta_formal(const HopfElement& x, const SymPoly& arg) {
    for (const auto& [m, c] : arg.terms())
        if (m.tau == 0)
            throw DomainError("theta_formal: argument must vanish at tau = 0, got " +
                              arg.to_string());
    std::map<Forest, SymPoly> out;
    for (const auto& [f, c] : x.terms()) {
        // exp(n * arg) truncated by the tau cap.
        SymPoly scaled = arg * Rat(f.degree());
        SymPoly e(Rat(1));
        SymPoly pow(Rat(1));
        for (int k = 1; k <= SymPoly::tau_cap() + 1; ++k) {
            pow = pow * scaled;
            if (pow.is_zero()) break;
            e += pow * (Rat(1) / factorial(k));
        }
        out[f] = e * c;
    }
    return out;
}

}  // namespace renorm
