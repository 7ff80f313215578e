#ifndef DAVIES_IRREDUCIBILITY_HPP
#define DAVIES_IRREDUCIBILITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "davies/algebra.hpp"
#include "davies/liouvillian.hpp"

namespace davies {

enum class DaviesVerdict { Irreducible, Reducible };
enum class EvansVerdict { EvansIrreducible, EvansReducible };

const char* to_string(DaviesVerdict v);
const char* to_string(EvansVerdict v);

struct AlgebraVerdict {
    DaviesVerdict verdict = DaviesVerdict::Reducible;
    Eigen::Index algebra_dim = 0;
    int rounds = 0;
};

struct SteadyVerdict {
    DaviesVerdict verdict = DaviesVerdict::Reducible;
    Eigen::Index null_dim = 0;
    Eigen::Index support_rank = 0;
};

struct ProjectionCheck {
    bool reduces = false;
    bool trivial = false;                 // P == 0 or P == 1
    std::vector<double> lindblad_residuals;  // ||(1-P) L_a P||
    double k_residual = 0.0;              // ||(1-P) K P||
    double max_residual() const;
};

struct EvansResult {
    EvansVerdict verdict = EvansVerdict::EvansIrreducible;
    Eigen::Index commutant_dim = 0;
    std::optional<ComplexMatrix> conserved_projection;
    double conservation_residual = 0.0;  // ||L^dag(P)|| for the witness
};

struct FrigerioResult {
    bool applicable = false;
    bool conclusion = false;  // unique steady state (first) / irreducible (second)
};

enum class ExtensionOutcome { ImpliesIrreducible, NotApplicable, GNotInAlgebra };
const char* to_string(ExtensionOutcome v);

/// Where the reducing projection came from.
enum class WitnessSource { SteadySupport, PsdBoundary, CyclicClosure };
const char* to_string(WitnessSource s);

struct ReducingProjection {
    ComplexMatrix projection;
    WitnessSource source = WitnessSource::SteadySupport;
    ProjectionCheck check;
};

struct DarkStateReport {
    ComplexVector state;
    std::vector<Complex> lindblad_eigenvalues;
    Complex k_eigenvalue{0.0, 0.0};
    std::vector<double> residuals;  // one per Lindblad operator, then K
    double liouvillian_residual = 0.0;  // ||L(psi psi^dag)||
};

struct ReducibilityReport {
    DaviesVerdict davies_algebra_verdict = DaviesVerdict::Reducible;
    Eigen::Index algebra_dim = 0;
    DaviesVerdict davies_steady_verdict = DaviesVerdict::Reducible;
    Eigen::Index null_dim = 0;
    Eigen::Index support_rank = 0;
    Eigen::Index dim = 0;
    std::optional<ReducingProjection> reducing_projection;
    EvansVerdict evans_verdict = EvansVerdict::EvansIrreducible;
    Eigen::Index evans_commutant_dim = 0;
    std::optional<ComplexMatrix> conserved_projection;
    FrigerioResult frigerio1;
    FrigerioResult frigerio2;

    bool checkers_agree() const { return davies_algebra_verdict == davies_steady_verdict; }
};

/// The two Davies checkers disagree; carries the partially assembled report.
class CheckerDisagreement : public std::runtime_error {
public:
    explicit CheckerDisagreement(ReducibilityReport r);
    const ReducibilityReport& report() const { return report_; }

private:
    ReducibilityReport report_;
};

/// No reducing projection was found although a checker reported reducibility.
class NoWitnessFound : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Irreducible iff the algebra generated by {L_a, K} is all of B(H).
AlgebraVerdict check_davies_algebra(const LindbladSystem& sys, const ToleranceConfig& tol = {});

/// Irreducible iff the steady state is unique and faithful.
SteadyVerdict check_davies_steady(const LindbladSystem& sys, const ToleranceConfig& tol = {});

/// (1-P) L_a P = 0 and (1-P) K P = 0, relative to the operator norms.
ProjectionCheck verify_reducing_projection(const LindbladSystem& sys, const ComplexMatrix& p,
                                           const ToleranceConfig& tol = {});

/**
 * Construct a nontrivial reducing projection, or nullopt when the system is
 * irreducible. Tries the support of a PSD-boundary steady state when the
 * kernel is degenerate, then the support of the maximal-support steady
 * state, then cyclic subspaces of candidate vectors under {L_a, K}.
 * Throws NoWitnessFound when the steady-state data says reducible but no
 * candidate verifies.
 */
std::optional<ReducingProjection> find_reducing_projection(const LindbladSystem& sys,
                                                           const ToleranceConfig& tol = {});

/// Conserved projections exist iff the commutant of {L_a, L_a^dag, H} is nontrivial.
EvansResult check_evans(const LindbladSystem& sys, const ToleranceConfig& tol = {});

FrigerioResult check_frigerio1(const LindbladSystem& sys, const ToleranceConfig& tol = {});
FrigerioResult check_frigerio2(const LindbladSystem& sys, const ToleranceConfig& tol = {});

ExtensionOutcome check_extension_corollary(const LindbladSystem& sys, const std::vector<ComplexMatrix>& generators,
                                           const ToleranceConfig& tol = {});

/// Is `psi` a common eigenvector of every L_a and of K? Throws on non-unit input.
std::pair<DarkStateReport, bool> check_dark_state(const LindbladSystem& sys, const ComplexVector& psi,
                                                  const ToleranceConfig& tol = {});

/// Orthonormal bases of all common eigenspaces of {L_a, K}.
std::vector<DarkStateReport> find_dark_states(const LindbladSystem& sys, const ToleranceConfig& tol = {});

/// Every checker, cross-checked. Throws CheckerDisagreement when the Davies routes differ.
ReducibilityReport analyze(const LindbladSystem& sys, const ToleranceConfig& tol = {});

}  // namespace davies

#endif
