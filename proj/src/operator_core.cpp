#include "davies/operator_core.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace davies {

namespace {

struct SvdParts {
    RealVector singular;
    ComplexMatrix v;
};

SvdParts full_svd(const ComplexMatrix& m) {
    // BDCSVD falls back to Jacobi for small blocks; full V is required for
    // wide matrices whose trailing columns are kernel directions.
    Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
    return {svd.singularValues(), svd.matrixV()};
}

double cutoff_for(const RealVector& s, const ToleranceConfig& tol) {
    const double smax = s.size() > 0 ? s.maxCoeff() : 0.0;
    return std::max(tol.rank_rel * smax, tol.rank_abs);
}

ComplexMatrix kernel_from(const SvdParts& parts, Eigen::Index cols, double cutoff) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < cols; ++i) {
        if (i >= parts.singular.size() || parts.singular(i) <= cutoff) keep.push_back(i);
    }
    ComplexMatrix out(parts.v.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = parts.v.col(keep[k]);
    return out;
}

}  // namespace

ComplexMatrix null_space(const ComplexMatrix& m, const ToleranceConfig& tol) {
    if (m.cols() == 0) return ComplexMatrix(0, 0);
    if (m.rows() == 0) return ComplexMatrix::Identity(m.cols(), m.cols());
    SvdParts parts = full_svd(m);
    return kernel_from(parts, m.cols(), cutoff_for(parts.singular, tol));
}

ComplexMatrix null_space_abs(const ComplexMatrix& m, double cutoff) {
    if (m.cols() == 0) return ComplexMatrix(0, 0);
    if (m.rows() == 0) return ComplexMatrix::Identity(m.cols(), m.cols());
    SvdParts parts = full_svd(m);
    return kernel_from(parts, m.cols(), cutoff);
}

Eigen::Index numerical_rank(const ComplexMatrix& m, const ToleranceConfig& tol) {
    if (m.size() == 0) return 0;
    Eigen::BDCSVD<ComplexMatrix> svd(m);
    const RealVector& s = svd.singularValues();
    const double cut = cutoff_for(s, tol);
    return (s.array() > cut).count();
}

HermitianEigen eig_hermitian(const ComplexMatrix& m, const ToleranceConfig& tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eig_hermitian: matrix is not square");
    if (!is_hermitian(m, tol.hermiticity)) throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m));
    if (es.info() != Eigen::Success) throw NumericalError("eig_hermitian: eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix_exp: matrix is not square");
    if (m.size() == 0) return m;
    return m.exp();
}

ComplexMatrix orthonormal_columns(const ComplexMatrix& m, const ToleranceConfig& tol) {
    if (m.cols() == 0) return ComplexMatrix(m.rows(), 0);
    Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
    const RealVector& s = svd.singularValues();
    const double cut = cutoff_for(s, tol);
    const Eigen::Index r = (s.array() > cut).count();
    return svd.matrixU().leftCols(r);
}

ComplexMatrix projector_onto(const ComplexMatrix& basis, Eigen::Index d) {
    if (basis.cols() == 0) return ComplexMatrix::Zero(d, d);
    return basis * basis.adjoint();
}

ComplexMatrix polish_projection(const ComplexMatrix& p) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(p));
    const RealVector& w = es.eigenvalues();
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) > 0.5) idx.push_back(i);
    }
    ComplexMatrix kept(p.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) kept.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(idx[k]);
    return projector_onto(kept, p.rows());
}

bool is_projection(const ComplexMatrix& p, double tol) {
    if (p.rows() != p.cols()) return false;
    return (p * p - p).norm() <= tol && hermiticity_defect(p) <= tol;
}

// ---------------------------------------------------------------------------

OperatorSubspace::OperatorSubspace(Eigen::Index dim_hilbert, ComplexMatrix orthonormal_vecs)
    : d_(dim_hilbert), vecs_(std::move(orthonormal_vecs)) {
    if (vecs_.rows() != d_ * d_) throw std::invalid_argument("OperatorSubspace: column length is not d^2");
}

OperatorSubspace OperatorSubspace::span_of(const std::vector<ComplexMatrix>& ops, const ToleranceConfig& tol) {
    if (ops.empty()) throw std::invalid_argument("OperatorSubspace::span_of: empty operator list");
    const Eigen::Index d = ops.front().rows();
    OperatorSubspace space(d);
    for (const auto& op : ops) {
        if (op.rows() != d || op.cols() != d) throw std::invalid_argument("OperatorSubspace::span_of: dimension mismatch");
        space.try_add(op, tol.residual);
    }
    return space;
}

std::vector<ComplexMatrix> OperatorSubspace::basis() const {
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Eigen::Index i = 0; i < size(); ++i) out.push_back(element(i));
    return out;
}

ComplexMatrix OperatorSubspace::project(const ComplexMatrix& x) const {
    if (x.rows() != d_ || x.cols() != d_) throw std::invalid_argument("OperatorSubspace::project: dimension mismatch");
    if (empty()) return ComplexMatrix::Zero(d_, d_);
    ComplexVector v = vec(x);
    return unvec(vecs_ * (vecs_.adjoint() * v), d_);
}

double OperatorSubspace::residual(const ComplexMatrix& x) const { return (x - project(x)).norm(); }

bool OperatorSubspace::try_add(const ComplexMatrix& x, double rel_tol) {
    if (x.rows() != d_ || x.cols() != d_) throw std::invalid_argument("OperatorSubspace::try_add: dimension mismatch");
    const double norm = x.norm();
    if (norm < 1e-12 || size() >= d_ * d_) return false;
    ComplexVector r = vec(x);
    for (int pass = 0; pass < 2; ++pass) {
        if (!empty()) r -= vecs_ * (vecs_.adjoint() * r);
    }
    const double rn = r.norm();
    if (rn <= rel_tol * norm) return false;
    vecs_.conservativeResize(Eigen::NoChange, vecs_.cols() + 1);
    vecs_.col(vecs_.cols() - 1) = r / rn;
    return true;
}

double OperatorSubspace::orthonormality_defect() const {
    if (empty()) return 0.0;
    ComplexMatrix g = vecs_.adjoint() * vecs_;
    g -= ComplexMatrix::Identity(g.rows(), g.cols());
    return g.cwiseAbs().maxCoeff();
}

bool contains(const OperatorSubspace& space, const ComplexMatrix& x, double tol) {
    return space.residual(x) <= tol * x.norm();
}

}  // namespace davies
