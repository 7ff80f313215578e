#ifndef DAVIES_LIOUVILLIAN_HPP
#define DAVIES_LIOUVILLIAN_HPP

#include <vector>

#include "davies/operator_core.hpp"

namespace davies {

/**
 * Markovian open system: Hamiltonian plus Lindblad operators on a
 * d-dimensional Hilbert space. Rates are absorbed into the Lindblad
 * matrices (a dissipator with rate g is stored as sqrt(g) * L).
 */
struct LindbladSystem {
    Eigen::Index dim = 0;
    ComplexMatrix hamiltonian;
    std::vector<ComplexMatrix> lindblads;

    LindbladSystem() = default;
    LindbladSystem(ComplexMatrix h, std::vector<ComplexMatrix> ls);

    /// Throws std::invalid_argument on inconsistent dimensions or non-Hermitian H.
    void validate(double hermiticity_tol = 1e-10) const;
};

/// d^2 x d^2 matrix acting on column-stacked vec(rho).
struct Superoperator {
    Eigen::Index dim = 0;
    ComplexMatrix matrix;

    ComplexMatrix apply(const ComplexMatrix& rho) const;
};

struct SteadyStateSet {
    Eigen::Index null_dim = 0;
    ComplexMatrix max_support_state;
    Eigen::Index support_rank = 0;
    OperatorSubspace null_basis{1};
    RealVector state_eigenvalues;  // ascending
    double residual = 0.0;         // ||L(max_support_state)||
};

struct Spectrum {
    std::vector<Complex> eigenvalues;  // sorted by descending real part
    double gap = 0.0;                  // -max{Re l : |l| > tol}; 0 when no such eigenvalue
    bool relaxing = false;             // unique steady state
    Eigen::Index kernel_dim = 0;
};

/// Schroedinger-picture generator.
Superoperator build_superoperator(const LindbladSystem& sys);

/// Heisenberg-picture generator; the conjugate transpose of build_superoperator().
Superoperator adjoint_superoperator(const LindbladSystem& sys);

/// K = -iH - 1/2 sum_a L_a^dag L_a.
ComplexMatrix compute_K(const LindbladSystem& sys);

/// Kernel of the generator together with its maximal-support steady state.
SteadyStateSet steady_states(const LindbladSystem& sys, const ToleranceConfig& tol = {});

Spectrum spectrum(const LindbladSystem& sys, const ToleranceConfig& tol = {});

}  // namespace davies

#endif
