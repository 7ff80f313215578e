#include "davies/algebra.hpp"

#include <algorithm>

namespace davies {

namespace {

void check_common_dim(const std::vector<ComplexMatrix>& ops, const char* who) {
    if (ops.empty()) throw std::invalid_argument(std::string(who) + ": empty operator list");
    const Eigen::Index d = ops.front().rows();
    for (const auto& op : ops) {
        if (op.rows() != d || op.cols() != d) throw std::invalid_argument(std::string(who) + ": dimension mismatch among operators");
    }
}

// Orthonormal columns Q(:, 0:count) stored in a preallocated n x cap buffer.
class Basis {
public:
    Basis(Eigen::Index n, Eigen::Index cap) : q_(n, cap) {}

    Eigen::Index count() const { return count_; }
    bool full() const { return count_ == q_.cols(); }
    auto cols() const { return q_.leftCols(count_); }
    auto col(Eigen::Index i) const { return q_.col(i); }
    const ComplexMatrix& raw() const { return q_; }

    // `r` must already be orthogonal to cols(0:from) to working precision;
    // it is re-orthogonalized twice against cols(from:count).
    bool admit(ComplexVector r, double threshold, Eigen::Index from = 0) {
        if (full()) return false;
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::Index m = count_ - from;
            if (m > 0) {
                auto block = q_.middleCols(from, m);
                const ComplexVector coeff = block.adjoint() * r;
                r.noalias() -= block * coeff;
            }
        }
        const double rn = r.norm();
        if (rn <= threshold) return false;
        q_.col(count_++) = r / rn;
        return true;
    }

private:
    ComplexMatrix q_;
    Eigen::Index count_ = 0;
};

}  // namespace

AlgebraClosureResult generate_algebra(const std::vector<ComplexMatrix>& seeds, const ToleranceConfig& tol,
                                      Eigen::Index max_dim) {
    check_common_dim(seeds, "generate_algebra");
    const Eigen::Index d = seeds.front().rows();
    const Eigen::Index n = d * d;
    const Eigen::Index cap = max_dim < 0 ? n : std::min(max_dim, n);
    constexpr double kTiny = 1e-12;

    Basis basis(n, cap);
    for (const auto& s : seeds) {
        const double norm = s.norm();
        if (norm < kTiny) continue;
        basis.admit(vec(s), tol.residual * norm);
    }

    int rounds = 0;
    Eigen::Index frontier_begin = 0;
    Eigen::Index frontier_end = basis.count();
    ComplexMatrix products;
    while (frontier_begin < frontier_end && !basis.full()) {
        ++rounds;
        for (Eigen::Index f = frontier_begin; f < frontier_end && !basis.full(); ++f) {
            const ComplexMatrix elem = unvec(basis.col(f), d);
            const Eigen::Index k = basis.count();

            // Columns 0..k-1: elem * B_j; columns k..2k-1: B_j * elem.
            products.resize(n, 2 * k);
            Eigen::Map<const ComplexMatrix> stacked(basis.raw().data(), d, d * k);
            Eigen::Map<ComplexMatrix>(products.data(), d, d * k).noalias() = elem * stacked;
            for (Eigen::Index j = 0; j < k; ++j) {
                Eigen::Map<const ComplexMatrix> bj(basis.raw().col(j).data(), d, d);
                Eigen::Map<ComplexMatrix>(products.col(k + j).data(), d, d).noalias() = bj * elem;
            }
            const RealVector norms = products.colwise().norm();

            // One batched projection against the current basis; survivors are
            // re-orthogonalized individually inside admit().
            const ComplexMatrix coeff = basis.cols().adjoint() * products;
            products.noalias() -= basis.cols() * coeff;
            for (Eigen::Index c = 0; c < products.cols() && !basis.full(); ++c) {
                if (norms(c) < kTiny) continue;
                const double threshold = tol.residual * norms(c);
                if (products.col(c).norm() <= threshold) continue;
                ComplexVector r = products.col(c);
                const ComplexVector rc = basis.cols().adjoint() * r;
                r.noalias() -= basis.cols() * rc;
                basis.admit(std::move(r), threshold, k);
            }
        }
        frontier_begin = frontier_end;
        frontier_end = basis.count();
    }

    AlgebraClosureResult out;
    out.basis = OperatorSubspace(d, basis.cols());
    out.dim = basis.count();
    out.is_full = out.dim == n;
    out.rounds = rounds;
    out.seed_count = seeds.size();
    return out;
}

CommutantResult commutant(const std::vector<ComplexMatrix>& seeds, const ToleranceConfig& tol) {
    check_common_dim(seeds, "commutant");
    const Eigen::Index d = seeds.front().rows();
    const Eigen::Index n = d * d;
    const ComplexMatrix id = identity(d);

    // vec(AX - XA) = (I (x) A - A^T (x) I) vec(X); each block is scaled to unit
    // norm so that the rank cutoff is not dominated by the largest seed.
    ComplexMatrix stacked(static_cast<Eigen::Index>(seeds.size()) * n, n);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        ComplexMatrix block = tensor(id, seeds[i]) - tensor(seeds[i].transpose(), id);
        const double bn = block.norm();
        if (bn > 0) block /= bn;
        stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = block;
    }
    CommutantResult out;
    out.basis = OperatorSubspace(d, null_space(stacked, tol));
    out.dim = out.basis.size();
    out.is_trivial = out.dim == 1 && contains(out.basis, id, tol.residual);
    return out;
}

bool is_self_adjoint_span(const std::vector<ComplexMatrix>& ops, const ToleranceConfig& tol) {
    check_common_dim(ops, "is_self_adjoint_span");
    const OperatorSubspace space = OperatorSubspace::span_of(ops, tol);
    return std::all_of(ops.begin(), ops.end(),
                       [&](const ComplexMatrix& op) { return contains(space, op.adjoint(), tol.residual); });
}

}  // namespace davies
