#ifndef DAVIES_ALGEBRA_HPP
#define DAVIES_ALGEBRA_HPP

#include <vector>

#include "davies/operator_core.hpp"

namespace davies {

struct AlgebraClosureResult {
    OperatorSubspace basis{1};
    Eigen::Index dim = 0;
    bool is_full = false;
    int rounds = 0;
    std::size_t seed_count = 0;
};

struct CommutantResult {
    OperatorSubspace basis{1};
    Eigen::Index dim = 0;
    bool is_trivial = false;
};

/**
 * Smallest linear space containing `seeds` that is closed under
 * multiplication. Only products and linear combinations are formed: the
 * adjoints of the seeds are never inserted, and the identity is not added
 * unless the seeds produce it.
 *
 * Frontier closure: every round multiplies each element admitted in the
 * previous round with every current basis element, in both orders, and
 * admits the orthogonal residuals whose norm exceeds
 * `tol.residual * ||product||`. Products with norm below 1e-12 are skipped.
 * Stops when a round admits nothing or the dimension reaches `max_dim`
 * (default d^2).
 */
AlgebraClosureResult generate_algebra(const std::vector<ComplexMatrix>& seeds, const ToleranceConfig& tol = {},
                                      Eigen::Index max_dim = -1);

/// Operators X with [X, A] = 0 for every seed A (null space of the stacked commutator maps).
CommutantResult commutant(const std::vector<ComplexMatrix>& seeds, const ToleranceConfig& tol = {});

/// Every op's adjoint lies in span(ops).
bool is_self_adjoint_span(const std::vector<ComplexMatrix>& ops, const ToleranceConfig& tol = {});

}  // namespace davies

#endif
