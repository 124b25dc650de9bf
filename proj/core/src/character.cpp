#include "renorm/character.hpp"

#include <map>
#include <mutex>

#include "renorm/errors.hpp"

namespace renorm {

struct LinMap::State {
    Kind kind;
    std::function<Series(const Forest&)> fn;
    mutable std::map<Forest, Series> memo;
    mutable std::mutex mu;
};

LinMap LinMap::character(std::function<Series(const Tree&)> on_tree) {
    auto memo = std::make_shared<std::map<Tree, Series>>();
    auto mu = std::make_shared<std::mutex>();
    auto cached = [on_tree = std::move(on_tree), memo, mu](const Tree& t) {
        {
            std::lock_guard lock(*mu);
            auto it = memo->find(t);
            if (it != memo->end()) return it->second;
        }
        Series v = on_tree(t);
        std::lock_guard lock(*mu);
        return memo->emplace(t, std::move(v)).first->second;
    };
    LinMap m;
    m.state_ = std::make_shared<State>();
    m.state_->kind = Kind::Character;
    m.state_->fn = [cached](const Forest& f) {
        Series out = Series::constant(Rat(1));
        for (const Tree& t : f.trees()) out = out * cached(t);
        return out;
    };
    return m;
}

LinMap LinMap::infinitesimal(std::function<Series(const Tree&)> on_tree) {
    LinMap m;
    m.state_ = std::make_shared<State>();
    m.state_->kind = Kind::Infinitesimal;
    m.state_->fn = [on_tree = std::move(on_tree)](const Forest& f) {
        if (f.trees().size() == 1) return on_tree(f.trees()[0]);
        return Series::zero();
    };
    return m;
}

LinMap LinMap::from_forest_fn(Kind kind, std::function<Series(const Forest&)> on_forest) {
    if (kind == Kind::Character || kind == Kind::Infinitesimal)
        throw DomainError("from_forest_fn: use the dedicated factories for structured kinds");
    LinMap m;
    m.state_ = std::make_shared<State>();
    m.state_->kind = kind;
    m.state_->fn = std::move(on_forest);
    return m;
}

LinMap LinMap::counit_character() {
    return character([](const Tree&) { return Series::zero(); });
}

Series LinMap::operator()(const Forest& f) const {
    {
        std::lock_guard lock(state_->mu);
        auto it = state_->memo.find(f);
        if (it != state_->memo.end()) return it->second;
    }
    Series v = state_->fn(f);
    std::lock_guard lock(state_->mu);
    return state_->memo.emplace(f, std::move(v)).first->second;
}

Series LinMap::operator()(const Tree& t) const { return (*this)(Forest(t)); }

Series LinMap::operator()(const HopfElement& x) const {
    Series out = Series::zero();
    for (const auto& [f, c] : x.terms()) out += (*this)(f)*c;
    return out;
}

LinMap::Kind LinMap::kind() const { return state_->kind; }

bool LinMap::unital() const {
    return state_->kind == Kind::Character || state_->kind == Kind::Unital;
}

LinMap convolve(const LinMap& f, const LinMap& g) {
    LinMap::Kind kind;
    if (f.kind() == LinMap::Kind::Character && g.kind() == LinMap::Kind::Character)
        kind = LinMap::Kind::Character;
    else if (f.unital() && g.unital())
        kind = LinMap::Kind::Unital;
    else
        kind = LinMap::Kind::Vanishing;
    auto fn = [f, g](const Forest& x) {
        Series out = Series::zero();
        TensorElement d = coproduct(HopfElement::from(x));
        for (const auto& [k, c] : d.terms()) out += f(k.first) * g(k.second) * c;
        return out;
    };
    if (kind == LinMap::Kind::Character) {
        // Products of characters are characters; evaluate on trees and
        // extend multiplicatively so memoization stays per tree.
        return LinMap::character([fn](const Tree& t) { return fn(Forest(t)); });
    }
    return LinMap::from_forest_fn(kind, fn);
}

LinMap star_inverse(const LinMap& f) {
    if (!f.unital()) throw DomainError("star_inverse: map does not send the unit to 1");
    if (f.kind() == LinMap::Kind::Character) {
        // phi^{star -1} = phi o S.
        return LinMap::character([f](const Tree& t) { return f(antipode(t)); });
    }
    return star_inverse_geometric(f);
}

LinMap star_inverse_geometric(const LinMap& f) {
    if (!f.unital()) throw DomainError("star_inverse: map does not send the unit to 1");
    // f^{star -1} = sum_k (e - f)^{star k}; (e - f) kills the unit, so the
    // sum on a degree-n forest stops after n convolutions.
    LinMap::Kind kind =
        f.kind() == LinMap::Kind::Character ? LinMap::Kind::Character : LinMap::Kind::Unital;
    auto fn = [f](const Forest& x) {
        int n = x.degree();
        LinMap e = LinMap::counit_character();
        auto diff_fn = [f, e](const Forest& y) { return e(y) - f(y); };
        LinMap diff = LinMap::from_forest_fn(LinMap::Kind::Vanishing, diff_fn);
        Series out = e(x);
        LinMap power = diff;
        for (int k = 1; k <= n; ++k) {
            out += power(x);
            if (k < n) power = convolve(power, diff);
        }
        return out;
    };
    if (kind == LinMap::Kind::Character)
        return LinMap::character([fn](const Tree& t) { return fn(Forest(t)); });
    return LinMap::from_forest_fn(kind, fn);
}

LinMap exp_star(const LinMap& xi) {
    if (xi.unital()) throw DomainError("exp_star: argument must vanish on the unit");
    auto fn = [xi](const Forest& x) {
        int n = x.degree();
        Series out = LinMap::counit_character()(x);
        LinMap power = xi;
        Rat kfac = 1;
        for (int k = 1; k <= n; ++k) {
            kfac *= k;
            out += power(x) * Rat(1 / kfac);
            if (k < n) power = convolve(power, xi);
        }
        return out;
    };
    return LinMap::from_forest_fn(LinMap::Kind::Unital, fn);
}

LinMap log_star(const LinMap& f) {
    if (!f.unital()) throw DomainError("log_star: argument must send the unit to 1");
    auto fn = [f](const Forest& x) {
        int n = x.degree();
        LinMap e = LinMap::counit_character();
        auto diff_fn = [f, e](const Forest& y) { return f(y) - e(y); };
        LinMap diff = LinMap::from_forest_fn(LinMap::Kind::Vanishing, diff_fn);
        Series out = Series::zero();
        LinMap power = diff;
        for (int k = 1; k <= n; ++k) {
            out += power(x) * Rat(Rat((k % 2 == 0) ? -1 : 1) / k);
            if (k < n) power = convolve(power, diff);
        }
        return out;
    };
    return LinMap::from_forest_fn(LinMap::Kind::Vanishing, fn);
}

namespace {

void collect_vertex_weights(const Tree& t, std::vector<int>& out) {
    out.push_back(t.degree());
    for (const Tree& c : t.children()) collect_vertex_weights(c, out);
}

}  // namespace

LinMap toy_character(const Config& cfg) {
    cfg.validate();
    int hi = cfg.build_hi();
    return LinMap::character([hi](const Tree& t) {
        Series out = exp_z_linear(SymPoly::log_scale() * Rat(-t.degree()), hi);
        std::vector<int> weights;
        collect_vertex_weights(t, weights);
        for (int w : weights) out = out * bn_series(w, hi);
        return out;
    });
}

LinMap compose_grading(const LinMap& f) {
    auto fn = [f](const Forest& x) { return f(x) * Rat(x.degree()); };
    return LinMap::from_forest_fn(LinMap::Kind::Vanishing, fn);
}

LinMap compose_grading_power(const LinMap& f, int n) {
    auto fn = [f, n](const Forest& x) { return f(x) * rat_pow(Rat(x.degree()), n); };
    return LinMap::from_forest_fn(n == 0 && f.unital() ? LinMap::Kind::Unital
                                                       : LinMap::Kind::Vanishing,
                                  fn);
}

LinMap scale_by_z(const LinMap& f, int k) {
    auto fn = [f, k](const Forest& x) { return f(x).shifted(k); };
    return LinMap::from_forest_fn(f.unital() && k == 0 ? LinMap::Kind::Unital
                                                       : LinMap::Kind::Vanishing,
                                  fn);
}

LinMap scale_flow(const LinMap& f, const Rat& t) {
    if (t == 0) return f;
    auto on_tree = [f, t](const Tree& tr) {
        Series v = f(tr);
        if (v.is_exact_zero()) return v;
        int span = v.exact() ? SymPoly::tau_cap() + 1 : v.hi() - v.lo();
        return v * exp_z_linear(SymPoly(t * tr.degree()), std::max(span, 0));
    };
    if (f.kind() == LinMap::Kind::Character) return LinMap::character(on_tree);
    auto fn = [f, t](const Forest& x) {
        Series v = f(x);
        if (v.is_exact_zero() || x.degree() == 0) return v;
        int span = v.exact() ? SymPoly::tau_cap() + 1 : v.hi() - v.lo();
        return v * exp_z_linear(SymPoly(t * x.degree()), std::max(span, 0));
    };
    return LinMap::from_forest_fn(
        f.unital() ? LinMap::Kind::Unital : LinMap::Kind::Vanishing, fn);
}

LinMap scale_flow_tau(const LinMap& f) {
    auto factor = [](const Series& v, int degree) {
        if (v.is_exact_zero() || degree == 0) return v;
        // exp(tau z n): the tau cap truncates the sum regardless of hi.
        int span = v.exact() ? SymPoly::tau_cap() + 1 : v.hi() - v.lo();
        return v * exp_z_linear(SymPoly::tau() * Rat(degree), std::max(span, 0));
    };
    if (f.kind() == LinMap::Kind::Character)
        return LinMap::character([f, factor](const Tree& t) { return factor(f(t), t.degree()); });
    auto fn = [f, factor](const Forest& x) { return factor(f(x), x.degree()); };
    return LinMap::from_forest_fn(
        f.unital() ? LinMap::Kind::Unital : LinMap::Kind::Vanishing, fn);
}

LinMap rtilde(const LinMap& f) {
    if (!f.unital()) throw DomainError("rtilde: map must be unital");
    return convolve(star_inverse(f), compose_grading(f));
}

LinMap h_flow(const LinMap& f, const Rat& t) {
    return convolve(star_inverse(f), scale_flow(f, t));
}

LinMap h_flow_tau(const LinMap& f) { return convolve(star_inverse(f), scale_flow_tau(f)); }

LinMap renorm_group(const LinMap& f, const Rat& t) {
    LinMap h = h_flow(f, t);
    auto fn = [h](const Forest& x) {
        try {
            return Series::constant(eval_at_zero(h(x)));
        } catch (const DomainError&) {
            throw DomainError("renormalization group limit at z = 0 failed on " + x.to_string() +
                              ": map is not local or the window is too small");
        }
    };
    return LinMap::from_forest_fn(LinMap::Kind::Unital, fn);
}

bool is_character_on(const LinMap& f, int max_total_degree, std::string* detail) {
    if (!equal_on_common_window(f(Forest()), Series::constant(Rat(1)))) {
        if (detail) *detail = "f(1) != 1";
        return false;
    }
    for (int da = 1; da < max_total_degree; ++da) {
        for (int db = da; da + db <= max_total_degree; ++db) {
            for (const Forest& a : enumerate_forests(da)) {
                for (const Forest& b : enumerate_forests(db)) {
                    if (!equal_on_common_window(f(a.concat(b)), f(a) * f(b))) {
                        if (detail)
                            *detail = "f(xy) != f(x)f(y) at x = " + a.to_string() +
                                      ", y = " + b.to_string();
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

bool is_infinitesimal_on(const LinMap& f, int max_total_degree, std::string* detail) {
    if (!f(Forest()).is_zero_on_window()) {
        if (detail) *detail = "f(1) != 0";
        return false;
    }
    for (int da = 1; da < max_total_degree; ++da) {
        for (int db = da; da + db <= max_total_degree; ++db) {
            for (const Forest& a : enumerate_forests(da)) {
                for (const Forest& b : enumerate_forests(db)) {
                    // eps vanishes on both factors, so f must kill products.
                    if (!f(a.concat(b)).is_zero_on_window()) {
                        if (detail)
                            *detail = "f(xy) != 0 at x = " + a.to_string() + ", y = " +
                                      b.to_string();
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

bool equal_on_forests(const LinMap& a, const LinMap& b, int max_degree, int through,
                      std::string* detail) {
    for (int d = 0; d <= max_degree; ++d) {
        for (const Forest& f : enumerate_forests(d)) {
            Series va = a(f);
            Series vb = b(f);
            if (!va.known_through(through) || !vb.known_through(through)) {
                if (detail)
                    *detail = "window does not certify z^" + std::to_string(through) + " at " +
                              f.to_string();
                return false;
            }
            if (!equal_on_common_window(va, vb)) {
                if (detail) {
                    *detail = "values differ at " + f.to_string() + ": " + va.to_string() +
                              " vs " + vb.to_string();
                }
                return false;
            }
        }
    }
    return true;
}

}  // namespace renorm
