#include "renorm/matrix.hpp"

#include <algorithm>
#include <set>

#include "renorm/errors.hpp"

namespace renorm {

CoidealBasis CoidealBasis::closure(const std::vector<Tree>& seeds) {
    std::set<Forest> elements;
    elements.insert(Forest());
    std::vector<Tree> work = seeds;
    while (!work.empty()) {
        Tree t = work.back();
        work.pop_back();
        if (!elements.insert(Forest(t)).second) continue;
        for (const Cut& c : admissible_cuts(t)) work.push_back(c.cotree);
    }
    CoidealBasis b;
    b.elements_.assign(elements.begin(), elements.end());
    // set<Forest> iterates in canonical order, which is degree-major and
    // therefore filtration ordered.
    return b;
}

CoidealBasis CoidealBasis::from_elements(std::vector<Forest> elements) {
    for (const Forest& f : elements)
        if (f.trees().size() > 1)
            throw DomainError("coideal basis elements must be single trees or the unit, got " +
                              f.to_string());
    std::set<Forest> set(elements.begin(), elements.end());
    set.insert(Forest());
    CoidealBasis b;
    b.elements_.assign(set.begin(), set.end());
    return b;
}

int CoidealBasis::index_of(const Forest& f) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), f);
    if (it == elements_.end() || !(*it == f)) return -1;
    return static_cast<int>(it - elements_.begin());
}

TriMatrix TriMatrix::identity(int n) {
    TriMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Series::constant(Rat(1));
    return m;
}

bool TriMatrix::is_lower_triangular() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (!at(i, j).is_exact_zero()) return false;
    return true;
}

bool TriMatrix::is_unipotent() const {
    if (!is_lower_triangular()) return false;
    Series one = Series::constant(Rat(1));
    for (int i = 0; i < n_; ++i) {
        const Series& d = at(i, i);
        if (!d.exact() || !(d.coeffs() == one.coeffs())) return false;
    }
    return true;
}

TriMatrix TriMatrix::operator-() const {
    TriMatrix out(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out.at(i, j) = -at(i, j);
    return out;
}

TriMatrix operator+(const TriMatrix& a, const TriMatrix& b) {
    if (a.size() != b.size()) throw DomainError("matrix size mismatch");
    TriMatrix out(a.size());
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
    return out;
}

TriMatrix operator-(const TriMatrix& a, const TriMatrix& b) {
    if (a.size() != b.size()) throw DomainError("matrix size mismatch");
    TriMatrix out(a.size());
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) out.at(i, j) = a.at(i, j) - b.at(i, j);
    return out;
}

TriMatrix operator*(const TriMatrix& a, const TriMatrix& b) {
    if (a.size() != b.size()) throw DomainError("matrix size mismatch");
    int n = a.size();
    TriMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Series sum = Series::zero();
            for (int k = 0; k < n; ++k) {
                if (a.at(i, k).is_exact_zero() || b.at(k, j).is_exact_zero()) continue;
                sum += a.at(i, k) * b.at(k, j);
            }
            out.at(i, j) = sum;
        }
    }
    return out;
}

TriMatrix operator*(const TriMatrix& a, const Series& s) {
    TriMatrix out(a.size());
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) out.at(i, j) = a.at(i, j) * s;
    return out;
}

std::string TriMatrix::to_string() const {
    std::string out;
    for (int i = 0; i < n_; ++i) {
        out += i == 0 ? "[ " : "  ";
        for (int j = 0; j < n_; ++j) {
            if (j) out += " | ";
            out += at(i, j).to_string();
        }
        out += i + 1 == n_ ? " ]\n" : "\n";
    }
    return out;
}

bool equal_matrices(const TriMatrix& a, const TriMatrix& b, std::string* detail) {
    if (a.size() != b.size()) {
        if (detail) *detail = "size mismatch";
        return false;
    }
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < a.size(); ++j) {
            if (!equal_on_common_window(a.at(i, j), b.at(i, j))) {
                if (detail)
                    *detail = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") differs: " + a.at(i, j).to_string() + " vs " +
                              b.at(i, j).to_string();
                return false;
            }
        }
    }
    return true;
}

HopfMatrix coproduct_matrix(const CoidealBasis& basis) {
    int n = basis.size();
    HopfMatrix m(n);
    for (int i = 0; i < n; ++i) {
        TensorElement d = coproduct(HopfElement::from(basis.element(i)));
        for (const auto& [k, c] : d.terms()) {
            int j = basis.index_of(k.second);
            if (j < 0)
                throw DomainError("not a coideal: cotree " + k.second.to_string() +
                                  " of basis element " + basis.element(i).to_string() +
                                  " is missing from the basis");
            if (j > i)
                throw ConsistencyError("coproduct matrix is not lower triangular at (" +
                                       std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            m.at(i, j) += HopfElement::from(k.first, c);
        }
    }
    return m;
}

TriMatrix psi(const LinMap& f, const HopfMatrix& m) {
    TriMatrix out(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) out.at(i, j) = f(m.at(i, j));
    return out;
}

HopfMatrix antipode_matrix(const HopfMatrix& m) {
    HopfMatrix out(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) out.at(i, j) = antipode(m.at(i, j));
    return out;
}

TriMatrix mat_inverse_unipotent(const TriMatrix& m) {
    if (!m.is_unipotent()) throw DomainError("matrix inverse needs a unipotent input");
    int n = m.size();
    TriMatrix nil = m - TriMatrix::identity(n);
    TriMatrix out = TriMatrix::identity(n);
    TriMatrix pow = TriMatrix::identity(n);
    for (int k = 1; k <= n - 1; ++k) {
        pow = pow * nil;
        out = (k % 2 == 1) ? out - pow : out + pow;
    }
    return out;
}

TriMatrix mat_log_unipotent(const TriMatrix& m) {
    if (!m.is_unipotent()) throw DomainError("matrix log needs a unipotent input");
    int n = m.size();
    TriMatrix nil = m - TriMatrix::identity(n);
    TriMatrix out(n);
    TriMatrix pow = TriMatrix::identity(n);
    for (int k = 1; k <= n - 1; ++k) {
        pow = pow * nil;
        Series c = Series::constant(Rat(Rat((k % 2 == 0) ? -1 : 1) / k));
        out = out + pow * c;
    }
    return out;
}

TriMatrix mat_exp(const TriMatrix& m) {
    int n = m.size();
    // Diagonal entries must be tau-graded for the scalar sums to stop; the
    // strictly lower part is nilpotent on its own.
    TriMatrix out = TriMatrix::identity(n);
    TriMatrix term = TriMatrix::identity(n);
    for (int k = 1; k <= 1000; ++k) {
        term = term * m * Series::constant(Rat(Rat(1) / k));
        bool vanished = true;
        bool exact_zero = true;
        for (int i = 0; i < n && vanished; ++i)
            for (int j = 0; j < n && vanished; ++j) {
                if (!term.at(i, j).is_zero_on_window()) vanished = false;
                if (!term.at(i, j).is_exact_zero()) exact_zero = false;
            }
        if (exact_zero) return out;
        out = out + term;
        if (vanished) return out;
    }
    throw DomainError("mat_exp did not terminate; the argument is not nilpotent modulo caps");
}

TriMatrix matrix_rb(const TriMatrix& m) {
    TriMatrix out(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) out.at(i, j) = pole_part(m.at(i, j));
    return out;
}

TriMatrix matrix_rb_tilde(const TriMatrix& m) {
    TriMatrix out(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) out.at(i, j) = holomorphic_part(m.at(i, j));
    return out;
}

AtkinsonFactors atkinson_factorize(const TriMatrix& phihat) {
    if (!phihat.is_unipotent())
        throw DomainError("atkinson_factorize needs a unipotent lower-triangular matrix");
    int n = phihat.size();
    TriMatrix a = phihat - TriMatrix::identity(n);
    // minus = 1 - R(minus a): the fixpoint stabilizes after n-1 rounds
    // because a is strictly lower triangular.
    TriMatrix minus = TriMatrix::identity(n);
    for (int k = 0; k < n - 1; ++k) minus = TriMatrix::identity(n) - matrix_rb(minus * a);
    // plus_inv = 1 - R~(a plus_inv).
    TriMatrix plus_inv = TriMatrix::identity(n);
    for (int k = 0; k < n - 1; ++k)
        plus_inv = TriMatrix::identity(n) - matrix_rb_tilde(a * plus_inv);
    TriMatrix bogo = minus * a;
    TriMatrix plus = TriMatrix::identity(n) + matrix_rb_tilde(bogo);
    return AtkinsonFactors{minus, plus, plus_inv, bogo};
}

namespace {

// Closed-form entry: -p(s_ij) - sum over k >= 2 and chains
// i > l_1 > ... > l_{k-1} > j of (-1)^{k+1} p(p(...p(s_{i l_1}) s_{l_1 l_2})
// ... s_{l_{k-1} j}), where p is the scheme projection.  The walk carries
// the partially nested value; m counts the factors consumed so far.
Series chain_sum_left(const TriMatrix& s, int i, int j,
                      const std::function<Series(const Series&)>& p) {
    Series total = -p(s.at(i, j));
    std::function<void(int, int, const Series&)> walk = [&](int cur, int m, const Series& nested) {
        int k = m + 1;  // closing the chain into column j uses one more factor
        Series closed = p(nested * s.at(cur, j));
        total += (k % 2 == 0) ? closed : -closed;  // -(-1)^{k+1} = (-1)^k
        for (int next = cur - 1; next > j; --next) walk(next, m + 1, p(nested * s.at(cur, next)));
    };
    for (int l1 = i - 1; l1 > j; --l1) walk(l1, 1, p(s.at(i, l1)));
    return total;
}

// Mirror image for the recursion Y = 1 - p(a Y): the projections nest from
// the factor closest to column j outward.
Series chain_sum_right(const TriMatrix& s, int i, int j,
                       const std::function<Series(const Series&)>& p) {
    Series total = -p(s.at(i, j));
    std::function<void(int, int, const Series&)> walk = [&](int cur, int m, const Series& nested) {
        int k = m + 1;
        Series closed = p(s.at(i, cur) * nested);
        total += (k % 2 == 0) ? closed : -closed;
        for (int next = cur + 1; next < i; ++next) walk(next, m + 1, p(s.at(next, cur) * nested));
    };
    for (int l = j + 1; l < i; ++l) walk(l, 1, p(s.at(l, j)));
    return total;
}

}  // namespace

std::pair<TriMatrix, TriMatrix> nonrecursive_entries(const TriMatrix& phihat) {
    if (!phihat.is_unipotent())
        throw DomainError("nonrecursive_entries needs a unipotent lower-triangular matrix");
    int n = phihat.size();
    auto proj_minus = [](const Series& v) { return pole_part(v); };
    auto proj_plus = [](const Series& v) { return holomorphic_part(v); };

    TriMatrix minus = TriMatrix::identity(n);
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) minus.at(i, j) = chain_sum_left(phihat, i, j, proj_minus);

    TriMatrix plus_inv = TriMatrix::identity(n);
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) plus_inv.at(i, j) = chain_sum_right(phihat, i, j, proj_plus);
    return {minus, plus_inv};
}

TriMatrix nonrecursive_plus(const TriMatrix& phihat) {
    if (!phihat.is_unipotent())
        throw DomainError("nonrecursive_plus needs a unipotent lower-triangular matrix");
    int n = phihat.size();
    auto proj_plus = [](const Series& v) { return holomorphic_part(v); };
    TriMatrix phihat_inv = mat_inverse_unipotent(phihat);
    TriMatrix plus = TriMatrix::identity(n);
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) plus.at(i, j) = chain_sum_left(phihat_inv, i, j, proj_plus);
    return plus;
}

TriMatrix z0_matrix(const CoidealBasis& basis) {
    TriMatrix m(basis.size());
    for (int i = 0; i < basis.size(); ++i) m.at(i, i) = Series::constant(Rat(basis.degree(i)));
    return m;
}

TriMatrix scale_conjugate(const TriMatrix& m, const CoidealBasis& basis, const Rat& t) {
    TriMatrix out(m.size());
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            const Series& v = m.at(i, j);
            int diff = basis.degree(i) - basis.degree(j);
            if (v.is_exact_zero() || diff == 0 || t == 0) {
                out.at(i, j) = v;
                continue;
            }
            int span = v.exact() ? SymPoly::tau_cap() + 1 : v.hi() - v.lo();
            out.at(i, j) = v * exp_z_linear(SymPoly(t * diff), std::max(span, 0));
        }
    }
    return out;
}

TriMatrix scale_conjugate_tau(const TriMatrix& m, const CoidealBasis& basis) {
    TriMatrix out(m.size());
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            const Series& v = m.at(i, j);
            int diff = basis.degree(i) - basis.degree(j);
            if (v.is_exact_zero() || diff == 0) {
                out.at(i, j) = v;
                continue;
            }
            int span = v.exact() ? SymPoly::tau_cap() + 1 : v.hi() - v.lo();
            out.at(i, j) = v * exp_z_linear(SymPoly::tau() * Rat(diff), std::max(span, 0));
        }
    }
    return out;
}

TriMatrix diag_flow_tau(const CoidealBasis& basis, int sign) {
    TriMatrix out(basis.size());
    for (int i = 0; i < basis.size(); ++i) {
        // exp(sign tau z |x_i|), exact because the tau cap truncates it.
        Series arg = Series::monomial(1, SymPoly::tau() * Rat(sign * basis.degree(i)));
        out.at(i, i) = exp_series(arg);
    }
    return out;
}

namespace {

void require_constant_entries(const TriMatrix& m, const char* what) {
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            const Series& v = m.at(i, j);
            for (const auto& [e, c] : v.coeffs()) {
                if (e != 0 || c.degree_l() > 0 || c.degree_tau() > 0 || c.degree_u() > 0)
                    throw ConsistencyError(std::string(what) + ": entry (" +
                                           std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                           ") is not constant: " + v.to_string() +
                                           " (map not local or precision exhausted)");
            }
        }
    }
}

}  // namespace

TriMatrix beta_matrix(const TriMatrix& minus, const CoidealBasis& basis) {
    TriMatrix zz0 = z0_matrix(basis) * Series::monomial(1, SymPoly(Rat(1)));
    TriMatrix out = minus * zz0 * mat_inverse_unipotent(minus) - zz0;
    require_constant_entries(out, "beta conjugation form");
    return out;
}

TriMatrix beta_matrix_commutator(const TriMatrix& minus, const CoidealBasis& basis) {
    int n = minus.size();
    TriMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            SymPoly r = residue(minus.at(i, j));
            // [Res minus, Z0]_{ij} = Res(minus)_{ij} (|x_j| - |x_i|).
            Rat factor = Rat(basis.degree(j) - basis.degree(i));
            if (!r.is_zero() && factor != 0)
                out.at(i, j) = Series::constant(r * factor);
        }
    }
    require_constant_entries(out, "beta commutator form");
    return out;
}

TriMatrix beta_matrix_bch(const TriMatrix& minus, const CoidealBasis& basis) {
    int n = minus.size();
    // beta = z sum_{k>0} ad[log minus]^k (Z0) / k!; nilpotency of the
    // strictly lower generator stops the sum at n-1 nestings.
    TriMatrix gen = mat_log_unipotent(minus);
    TriMatrix z0 = z0_matrix(basis);
    TriMatrix nested = z0;
    TriMatrix sum(n);
    Rat kfac = 1;
    for (int k = 1; k <= n - 1; ++k) {
        nested = gen * nested - nested * gen;
        kfac *= k;
        sum = sum + nested * Series::constant(Rat(1 / kfac));
    }
    TriMatrix out = sum * Series::monomial(1, SymPoly(Rat(1)));
    require_constant_entries(out, "beta nested-commutator form");
    return out;
}

std::vector<CheckResult> aplus_flow_check(const LinMap& f, const CoidealBasis& basis,
                                          const Config& cfg) {
    cfg.validate();
    std::vector<CheckResult> out;
    auto record = [&out](const std::string& name, bool pass, const std::string& detail) {
        out.push_back(CheckResult{name, pass, pass ? "" : detail});
    };
    int cap = SymPoly::tau_cap();

    HopfMatrix m = coproduct_matrix(basis);
    TriMatrix phihat0 = psi(f, m);
    TriMatrix phihat_t = scale_conjugate_tau(phihat0, basis);
    TriMatrix zz0 = z0_matrix(basis) * Series::monomial(1, SymPoly(Rat(1)));

    auto d_tau = [](const TriMatrix& a) {
        TriMatrix out(a.size());
        for (int i = 0; i < a.size(); ++i)
            for (int j = 0; j < a.size(); ++j) out.at(i, j) = derivative_tau(a.at(i, j));
        return out;
    };
    auto trunc = [](const TriMatrix& a, int deg) {
        TriMatrix out(a.size());
        for (int i = 0; i < a.size(); ++i)
            for (int j = 0; j < a.size(); ++j) out.at(i, j) = truncate_tau(a.at(i, j), deg);
        return out;
    };

    std::string detail;

    // A(t) = e^{t z Z0} A(0) with A(0) = phihat(0): dA/dt = z Z0 A.
    {
        TriMatrix a_t = diag_flow_tau(basis, +1) * phihat0;
        bool ok = equal_matrices(trunc(d_tau(a_t), cap - 1), trunc(zz0 * a_t, cap - 1), &detail);
        record("flow: dA/dt = z Z0 A", ok, detail);
    }

    AtkinsonFactors f0 = atkinson_factorize(phihat0);
    AtkinsonFactors ft = atkinson_factorize(phihat_t);

    // d/dt of the counter-term factor vanishes.
    {
        bool ok = equal_matrices(d_tau(ft.minus), TriMatrix(basis.size()), &detail) &&
                  equal_matrices(ft.minus, f0.minus, &detail);
        record("flow: d/dt of the counter-term matrix is zero", ok, detail);
    }

    TriMatrix beta = beta_matrix(f0.minus, basis);

    // A_+ = plus(t) e^{t z Z0}: dA_+/dt A_+^{-1} = beta + z Z0.  The inverse
    // splits as e^{-t z Z0} plus(t)^{-1}.
    {
        TriMatrix a_plus = ft.plus * diag_flow_tau(basis, +1);
        TriMatrix a_plus_inv = diag_flow_tau(basis, -1) * mat_inverse_unipotent(ft.plus);
        TriMatrix lhs = d_tau(a_plus) * a_plus_inv;
        bool ok = equal_matrices(trunc(lhs, cap - 1), trunc(beta + zz0, cap - 1), &detail);
        record("flow: dA+/dt A+^{-1} = beta + z Z0", ok, detail);
    }

    // plus(t) = e^{t(beta + z Z0)} plus(0) e^{-t z Z0}.
    {
        TriMatrix lhs = ft.plus;
        TriMatrix rhs = mat_exp((beta + zz0) * Series::constant(SymPoly::tau())) * f0.plus *
                        diag_flow_tau(basis, -1);
        bool ok = equal_matrices(trunc(lhs, cap), trunc(rhs, cap), &detail);
        record("flow: renormalized factor follows the exponential flow formula", ok, detail);
    }

    return out;
}

TriMatrix scattering_pre_limit(const TriMatrix& minus, const CoidealBasis& basis) {
    int n = minus.size();
    TriMatrix minus_inv = mat_inverse_unipotent(minus);
    TriMatrix out(n);
    // Entry (i,j) of minus diag(u^{d_m}) minus_inv diag(u^{-d_j}); the
    // exponent d_m - d_j is nonnegative along lower-triangular chains, so
    // the result is polynomial in u.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            Series sum = Series::zero();
            for (int k = j; k <= i; ++k) {
                const Series& a = minus.at(i, k);
                const Series& b = minus_inv.at(k, j);
                if (a.is_exact_zero() || b.is_exact_zero()) continue;
                int uexp = basis.degree(k) - basis.degree(j);
                if (uexp < 0)
                    throw ConsistencyError("scattering: negative u exponent; basis not ordered");
                sum += a * b * SymPoly::u(uexp);
            }
            out.at(i, j) = sum;
        }
    }
    return out;
}

TriMatrix scattering_limit(const TriMatrix& minus, const CoidealBasis& basis) {
    TriMatrix pre = scattering_pre_limit(minus, basis);
    TriMatrix out(pre.size());
    for (int i = 0; i < pre.size(); ++i)
        for (int j = 0; j < pre.size(); ++j) out.at(i, j) = set_u_zero(pre.at(i, j));
    return out;
}

}  // namespace renorm
