#pragma once

#include <utility>
#include <vector>

#include "renorm/birkhoff.hpp"
#include "renorm/character.hpp"

namespace renorm {

/// Filtration-ordered basis of a left coideal spanned by trees, with the
/// empty forest at index 0.  Every cotree of every admissible cut of a
/// basis element is again a basis element.
class CoidealBasis {
public:
    /// Smallest cograph-closed basis containing the seeds.
    static CoidealBasis closure(const std::vector<Tree>& seeds);

    /// Uses the given elements as-is (sorted, unit added); closure is
    /// verified when the coproduct matrix is built.
    static CoidealBasis from_elements(std::vector<Forest> elements);

    int size() const { return static_cast<int>(elements_.size()); }
    const Forest& element(int i) const { return elements_[i]; }
    int degree(int i) const { return elements_[i].degree(); }

    /// Index of a forest in the basis, or -1.
    int index_of(const Forest& f) const;

private:
    std::vector<Forest> elements_;
};

/// Square lower-triangular matrix with entries in the Hopf algebra.
class HopfMatrix {
public:
    explicit HopfMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n) * n) {}
    int size() const { return n_; }
    const HopfElement& at(int i, int j) const { return e_[idx(i, j)]; }
    HopfElement& at(int i, int j) { return e_[idx(i, j)]; }
    friend bool operator==(const HopfMatrix& a, const HopfMatrix& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
    int n_;
    std::vector<HopfElement> e_;
};

/// Square matrix over the series algebra; the factorization routines keep
/// everything lower-triangular.
class TriMatrix {
public:
    explicit TriMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n) * n) {}
    static TriMatrix identity(int n);
    int size() const { return n_; }
    const Series& at(int i, int j) const { return e_[idx(i, j)]; }
    Series& at(int i, int j) { return e_[idx(i, j)]; }

    bool is_lower_triangular() const;
    bool is_unipotent() const;  // lower triangular with exact unit diagonal

    TriMatrix operator-() const;
    friend TriMatrix operator+(const TriMatrix& a, const TriMatrix& b);
    friend TriMatrix operator-(const TriMatrix& a, const TriMatrix& b);
    friend TriMatrix operator*(const TriMatrix& a, const TriMatrix& b);
    friend TriMatrix operator*(const TriMatrix& a, const Series& s);
    friend TriMatrix operator*(const Series& s, const TriMatrix& a) { return a * s; }

    std::string to_string() const;

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
    int n_;
    std::vector<Series> e_;
};

/// Entrywise equality on common windows.
bool equal_matrices(const TriMatrix& a, const TriMatrix& b, std::string* detail = nullptr);

/// The coproduct matrix M: Delta(x_i) = sum_j M_ij (x) x_j.  Validates the
/// coideal property and reports the first missing cotree.
HopfMatrix coproduct_matrix(const CoidealBasis& basis);

/// Entrywise application of a linear map: Psi[f]_ij = f(M_ij).  An algebra
/// homomorphism from the convolution algebra to matrices.
TriMatrix psi(const LinMap& f, const HopfMatrix& m);

/// Entrywise antipode, Psi[S] applied to the coproduct matrix.
HopfMatrix antipode_matrix(const HopfMatrix& m);

/// Inverse of a unipotent matrix by the terminating geometric series.
TriMatrix mat_inverse_unipotent(const TriMatrix& m);

/// log of a unipotent matrix: sum_{k>0} (-1)^{k+1} (m-1)^k / k.
TriMatrix mat_log_unipotent(const TriMatrix& m);

/// exp of a matrix whose diagonal entries are tau-graded and whose strictly
/// lower part makes the series terminate (nilpotency or tau cap).
TriMatrix mat_exp(const TriMatrix& m);

/// Entrywise minimal subtraction R and its complement.
TriMatrix matrix_rb(const TriMatrix& m);
TriMatrix matrix_rb_tilde(const TriMatrix& m);

/// The factorization phihat = minus^{-1} plus obtained from the recursions
///   minus = 1 - R(minus (phihat - 1)),  plus_inv = 1 - R~((phihat-1) plus_inv),
/// together with the Bogoliubov matrix minus (phihat - 1).
struct AtkinsonFactors {
    TriMatrix minus;
    TriMatrix plus;
    TriMatrix plus_inv;
    TriMatrix bogoliubov;
};
AtkinsonFactors atkinson_factorize(const TriMatrix& phihat);

/// Closed-form entries of (minus, plus_inv) by the nested double sums over
/// decreasing index chains; an independent route used as the oracle for
/// atkinson_factorize.
std::pair<TriMatrix, TriMatrix> nonrecursive_entries(const TriMatrix& phihat);

/// Closed-form route to the renormalized factor itself: left-nested chains
/// of the inverse matrix under the complementary projection.
TriMatrix nonrecursive_plus(const TriMatrix& phihat);

/// The diagonal grading matrix: diag(|x_0|, ..., |x_{n-1}|).
TriMatrix z0_matrix(const CoidealBasis& basis);

/// Conjugation by exp(t z Z0) in closed form: entry (i, j) is scaled by
/// exp(t z (|x_i| - |x_j|)).
TriMatrix scale_conjugate(const TriMatrix& m, const CoidealBasis& basis, const Rat& t);
TriMatrix scale_conjugate_tau(const TriMatrix& m, const CoidealBasis& basis);

/// diag(exp(s tau z |x_i|)) for sign s, used by the product-form checks.
TriMatrix diag_flow_tau(const CoidealBasis& basis, int sign);

/// beta matrix by conjugation: minus (z Z0) minus^{-1} - z Z0.  Entries are
/// checked to be constant (z-, log-, tau-, u-free).
TriMatrix beta_matrix(const TriMatrix& minus, const CoidealBasis& basis);

/// beta matrix as [Res minus, Z0].
TriMatrix beta_matrix_commutator(const TriMatrix& minus, const CoidealBasis& basis);

/// beta matrix from the nested-commutator exponential series generated by
/// log(minus): z sum_{n>0} ad[log minus]^n (Z0) / n!.
TriMatrix beta_matrix_bch(const TriMatrix& minus, const CoidealBasis& basis);

/// One named identity verified inside a report.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Differentiates the flow in tau and verifies the matrix flow identities:
/// d/dt A = z Z0 A for A(t) = exp(t z Z0) phihat(0), constancy of the
/// counter-term factor, the generator identity for A_+, and the closed
/// flow formula for the renormalized factor.
std::vector<CheckResult> aplus_flow_check(const LinMap& f, const CoidealBasis& basis,
                                          const Config& cfg);

/// minus e^{-t Z0} minus^{-1} e^{t Z0} with e^{-t} written as the symbol u;
/// exponent bookkeeping keeps every entry polynomial in u.
TriMatrix scattering_pre_limit(const TriMatrix& minus, const CoidealBasis& basis);

/// The u -> 0 limit of the above; equals minus again.
TriMatrix scattering_limit(const TriMatrix& minus, const CoidealBasis& basis);

}  // namespace renorm
