#ifndef DAVIES_OPERATOR_CORE_HPP
#define DAVIES_OPERATOR_CORE_HPP

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace davies {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/**
 * Numerical thresholds shared by every checker.
 *
 * All verdicts in this library are exact algebraic statements evaluated in
 * floating point; each field below is the single place where the
 * corresponding "is it zero?" decision is made.
 */
struct ToleranceConfig {
    double orthonormality = 1e-10;  // |Tr(B_i^dag B_j) - delta_ij|
    double hermiticity = 1e-10;     // ||M - M^dag|| relative to ||M||
    double psd = 1e-9;              // eigenvalue floor / support cutoff
    double rank_rel = 1e-9;         // singular-value cutoff relative to sigma_max
    double rank_abs = 1e-12;        // absolute singular-value floor
    double residual = 1e-8;         // algebra admission / containment residual
    double eig = 1e-8;              // eigenvalue clustering
    double support = 1e-10;         // Markov-chain edge threshold

    /// Copy with `rank_rel` replaced.
    ToleranceConfig with_rank_rel(double rel) const {
        ToleranceConfig t = *this;
        t.rank_rel = rel;
        return t;
    }
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Construction helpers
// ---------------------------------------------------------------------------

inline ComplexMatrix identity(Eigen::Index d) { return ComplexMatrix::Identity(d, d); }

/// Column-stacking vectorization: vec(A X B) = (B^T (x) A) vec(X).
template <typename Derived>
ComplexVector vec(const Eigen::MatrixBase<Derived>& m) {
    ComplexMatrix tmp = m;
    return Eigen::Map<const ComplexVector>(tmp.data(), tmp.size());
}

/// Inverse of vec() for a d x d operator.
template <typename Derived>
ComplexMatrix unvec(const Eigen::MatrixBase<Derived>& v, Eigen::Index d) {
    if (v.size() != d * d) throw std::invalid_argument("unvec: length is not d^2");
    ComplexVector tmp = v;
    return Eigen::Map<const ComplexMatrix>(tmp.data(), d, d);
}

/// Kronecker product; (a (x) b)(c (x) d) = (ac) (x) (bd).
template <typename A, typename B>
DenseMatrix<typename A::Scalar> tensor(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return Eigen::kroneckerProduct(a.derived(), b.derived()).eval();
}

/// Hilbert-Schmidt inner product Tr(a^dag b).
template <typename A, typename B>
typename A::Scalar hs_inner(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw std::invalid_argument("hs_inner: operands must be square with equal dimensions");
    }
    return a.conjugate().cwiseProduct(b).sum();
}

template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
    return (m - m.adjoint()).norm();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol) {
    return m.rows() == m.cols() && hermiticity_defect(m) <= tol * std::max(1.0, double(m.norm()));
}

template <typename Derived>
DenseMatrix<typename Derived::Scalar> hermitian_part(const Eigen::MatrixBase<Derived>& m) {
    return (0.5 * (m + m.adjoint())).eval();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    return m.allFinite();
}

// ---------------------------------------------------------------------------
// Spectral primitives
// ---------------------------------------------------------------------------

/**
 * Orthonormal basis (as columns) of the numerical kernel of `m`.
 *
 * A right-singular vector is kept when its singular value satisfies
 * sigma_i <= max(rank_rel * sigma_max, rank_abs). Columns beyond the row count
 * are always in the kernel.
 */
ComplexMatrix null_space(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Same as above with an explicit absolute singular-value cutoff.
ComplexMatrix null_space_abs(const ComplexMatrix& m, double cutoff);

/// Numerical rank under the same cutoff rule as null_space().
Eigen::Index numerical_rank(const ComplexMatrix& m, const ToleranceConfig& tol = {});

struct HermitianEigen {
    RealVector values;     // ascending
    ComplexMatrix vectors;  // orthonormal columns
};

/// Eigendecomposition of a Hermitian matrix; throws std::invalid_argument otherwise.
HermitianEigen eig_hermitian(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Matrix exponential (scaling and squaring, Pade approximant).
ComplexMatrix matrix_exp(const ComplexMatrix& m);

/// Orthonormalize the columns of `m`, dropping numerically dependent ones.
ComplexMatrix orthonormal_columns(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Projector onto the span of the orthonormal columns of `basis`.
ComplexMatrix projector_onto(const ComplexMatrix& basis, Eigen::Index d);

/**
 * Snap a nearly-projective Hermitian matrix to an exact projection by
 * rounding its eigenvalues to {0, 1}.
 */
ComplexMatrix polish_projection(const ComplexMatrix& p);

/// ||P^2 - P|| and ||P - P^dag|| both below `tol`.
bool is_projection(const ComplexMatrix& p, double tol);

// ---------------------------------------------------------------------------
// Operator subspaces
// ---------------------------------------------------------------------------

/**
 * Linear subspace of the d x d operators with a Hilbert-Schmidt orthonormal
 * basis. Elements are stored vectorized, one column per basis element.
 */
class OperatorSubspace {
public:
    explicit OperatorSubspace(Eigen::Index dim_hilbert) : d_(dim_hilbert), vecs_(dim_hilbert * dim_hilbert, 0) {}

    /// Wrap already-orthonormal vectorized columns.
    OperatorSubspace(Eigen::Index dim_hilbert, ComplexMatrix orthonormal_vecs);

    /// Span of arbitrary operators; dependent ones are dropped.
    static OperatorSubspace span_of(const std::vector<ComplexMatrix>& ops, const ToleranceConfig& tol = {});

    Eigen::Index dim_hilbert() const { return d_; }
    Eigen::Index size() const { return vecs_.cols(); }
    bool empty() const { return vecs_.cols() == 0; }

    const ComplexMatrix& vectorized() const { return vecs_; }
    ComplexMatrix element(Eigen::Index i) const { return unvec(vecs_.col(i), d_); }
    std::vector<ComplexMatrix> basis() const;

    /// Orthogonal projection of `x` onto the subspace.
    ComplexMatrix project(const ComplexMatrix& x) const;

    /// ||x - project(x)||.
    double residual(const ComplexMatrix& x) const;

    /**
     * Try to extend the basis by `x`. The component orthogonal to the span
     * is re-orthogonalized twice and admitted when its norm exceeds
     * `rel_tol * ||x||`. Returns true on admission.
     */
    bool try_add(const ComplexMatrix& x, double rel_tol);

    /// max_ij |<B_i, B_j> - delta_ij|.
    double orthonormality_defect() const;

private:
    Eigen::Index d_;
    ComplexMatrix vecs_;
};

/// Residual of `x` after projecting onto `space` is at most tol * ||x||.
bool contains(const OperatorSubspace& space, const ComplexMatrix& x, double tol);

}  // namespace davies

#endif
