#ifndef DAVIES_CHANNEL_MARKOV_HPP
#define DAVIES_CHANNEL_MARKOV_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "davies/liouvillian.hpp"

namespace davies {

/**
 * Completely positive trace-preserving map stored as a d^2 x d^2 matrix on
 * column-stacked vec(rho).
 *
 * Choi convention: Choi = sum_ij E(|i><j|) (x) |i><j|, output factor first.
 * With this convention a Kraus operator M appears in the Choi matrix as the
 * row-major flattening of M.
 */
struct QuantumChannel {
    Eigen::Index dim = 0;
    ComplexMatrix matrix;
    std::optional<double> time;

    ComplexMatrix apply(const ComplexMatrix& rho) const;
};

struct KrausSet {
    std::vector<ComplexMatrix> operators;

    /// ||sum M_k^dag M_k - 1||.
    double completeness_residual() const;
    /// Superoperator sum_k conj(M_k) (x) M_k.
    ComplexMatrix to_superoperator() const;
};

/// Column-stochastic transition matrix, P(i, j) = probability of j -> i.
struct StochasticMatrix {
    Eigen::MatrixXd entries;
    std::vector<std::string> labels;

    Eigen::Index size() const { return entries.rows(); }
    std::string label(Eigen::Index i) const;
};

struct MarkovConnectivity {
    bool irreducible = false;
    std::vector<std::vector<Eigen::Index>> components;  // strongly connected, nodes ascending
    std::vector<std::vector<Eigen::Index>> closed_classes;  // components with no outgoing edge
    std::vector<Eigen::Index> absorbing;  // closed singleton states
};

struct ProbeOutcome {
    std::string basis;  // "computational", "haar:<k>", "adapted"
    bool irreducible = false;
};

struct ProbeReport {
    bool witness_found = false;
    std::optional<std::size_t> witness_basis_index;
    std::vector<ProbeOutcome> outcomes;
    int trials = 0;
    std::uint64_t seed = 0;
    double t = 1.0;

    /// "reducible" when a classical witness was found, otherwise "no_witness".
    std::string verdict() const { return witness_found ? "reducible" : "no_witness"; }
};

/// exp(t L); audited for trace preservation and complete positivity.
QuantumChannel channel_from_liouvillian(const LindbladSystem& sys, double t, const ToleranceConfig& tol = {});

ComplexMatrix choi_matrix(const QuantumChannel& ch);

/// Kraus operators from the eigendecomposition of a Choi matrix.
KrausSet kraus_from_choi(const ComplexMatrix& choi, const ToleranceConfig& tol = {});

/// Channel back from a Kraus set.
QuantumChannel channel_from_kraus(const KrausSet& kraus);

/// P(i, j) = <i| E(|j><j|) |i> for the columns |i> of a unitary `basis`.
StochasticMatrix classical_transition_matrix(const QuantumChannel& ch, const ComplexMatrix& basis,
                                             const ToleranceConfig& tol = {});

/// Strong connectivity of the support graph (edge j -> i iff P(i, j) > support_tol).
MarkovConnectivity is_irreducible_markov(const StochasticMatrix& p, double support_tol = 1e-10);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of diag(R) removed.
ComplexMatrix haar_unitary(Eigen::Index d, std::uint64_t seed);

/// Orthonormal basis whose leading columns span the image of the projection `p`.
ComplexMatrix adapted_basis(const ComplexMatrix& p, const ToleranceConfig& tol = {});

/**
 * One-sided search for a classical reducibility witness: the computational
 * basis, `trials` Haar-random bases (trial k uses seed + k), and, when a
 * reducing projection is supplied, a basis adapted to it. Absence of a
 * witness is not a proof of irreducibility.
 */
ProbeReport basis_probe(const LindbladSystem& sys, double t, int trials, std::uint64_t seed,
                        const std::optional<ComplexMatrix>& reducing_projection = std::nullopt,
                        const ToleranceConfig& tol = {});

/// Directed graph in DOT format; edges with weight > threshold, labels "%.6g".
std::string export_dot(const StochasticMatrix& p, double threshold = 1e-10);

}  // namespace davies

#endif
