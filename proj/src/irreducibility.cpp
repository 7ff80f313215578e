#include "davies/irreducibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace davies {

const char* to_string(DaviesVerdict v) { return v == DaviesVerdict::Irreducible ? "Irreducible" : "Reducible"; }

const char* to_string(EvansVerdict v) {
    return v == EvansVerdict::EvansIrreducible ? "EvansIrreducible" : "EvansReducible";
}

const char* to_string(ExtensionOutcome v) {
    switch (v) {
        case ExtensionOutcome::ImpliesIrreducible: return "ImpliesIrreducible";
        case ExtensionOutcome::NotApplicable: return "NotApplicable";
        case ExtensionOutcome::GNotInAlgebra: return "GNotInAlgebra";
    }
    return "?";
}

const char* to_string(WitnessSource s) {
    switch (s) {
        case WitnessSource::SteadySupport: return "steady_support";
        case WitnessSource::PsdBoundary: return "psd_boundary";
        case WitnessSource::CyclicClosure: return "cyclic_closure";
    }
    return "?";
}

double ProjectionCheck::max_residual() const {
    double m = k_residual;
    for (double r : lindblad_residuals) m = std::max(m, r);
    return m;
}

CheckerDisagreement::CheckerDisagreement(ReducibilityReport r)
    : std::runtime_error(std::string("Davies checkers disagree: algebra route says ") +
                         to_string(r.davies_algebra_verdict) + ", steady-state route says " +
                         to_string(r.davies_steady_verdict)),
      report_(std::move(r)) {}

namespace {

std::vector<ComplexMatrix> lk_seeds(const LindbladSystem& sys) {
    std::vector<ComplexMatrix> seeds = sys.lindblads;
    seeds.push_back(compute_K(sys));
    return seeds;
}

std::vector<ComplexMatrix> evans_seeds(const LindbladSystem& sys) {
    std::vector<ComplexMatrix> seeds;
    for (const auto& l : sys.lindblads) {
        seeds.push_back(l);
        seeds.push_back(l.adjoint());
    }
    seeds.push_back(sys.hamiltonian);
    return seeds;
}

// Columns of `vectors` whose eigenvalue exceeds `cut`.
ComplexMatrix columns_above(const HermitianEigen& eig, double cut) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        if (eig.values(i) > cut) idx.push_back(i);
    }
    ComplexMatrix out(eig.vectors.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = eig.vectors.col(idx[k]);
    return out;
}

std::optional<ReducingProjection> accept(const LindbladSystem& sys, const ComplexMatrix& basis, WitnessSource src,
                                         const ToleranceConfig& tol) {
    const Eigen::Index d = sys.dim;
    if (basis.cols() == 0 || basis.cols() >= d) return std::nullopt;
    ComplexMatrix p = polish_projection(projector_onto(basis, d));
    ProjectionCheck check = verify_reducing_projection(sys, p, tol);
    if (!check.reduces || check.trivial) return std::nullopt;
    return ReducingProjection{std::move(p), src, std::move(check)};
}

// Hermitian kernel elements: Hermitian and anti-Hermitian parts of each basis element.
std::vector<ComplexMatrix> hermitian_kernel_elements(const OperatorSubspace& kernel) {
    std::vector<ComplexMatrix> out;
    const Complex minus_i(0.0, -1.0);
    for (const auto& b : kernel.basis()) {
        out.push_back(hermitian_part(b));
        out.push_back(hermitian_part(ComplexMatrix(minus_i * b)));
    }
    return out;
}

// Support of the steady state reached by moving from rho along x until PSD is lost.
std::optional<ComplexMatrix> psd_boundary_support(const ComplexMatrix& rho, const ComplexMatrix& x,
                                                  const ToleranceConfig& tol) {
    const HermitianEigen re = eig_hermitian(rho, tol);
    const ComplexMatrix vs = columns_above(re, tol.psd);
    if (vs.cols() < 2) return std::nullopt;
    RealVector lam(vs.cols());
    {
        Eigen::Index k = 0;
        for (Eigen::Index i = 0; i < re.values.size(); ++i) {
            if (re.values(i) > tol.psd) lam(k++) = re.values(i);
        }
    }
    const RealVector inv_sqrt = lam.array().rsqrt();
    const RealVector sqrt_l = lam.array().sqrt();

    // Generalized eigenproblem X v = mu rho v on supp(rho).
    ComplexMatrix m = inv_sqrt.asDiagonal() * (vs.adjoint() * x * vs) * inv_sqrt.asDiagonal();
    m = hermitian_part(m);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    const RealVector& mu = es.eigenvalues();
    const double mu_min = mu(0);
    const double spread = mu(mu.size() - 1) - mu_min;
    if (mu_min >= 0.0 || spread <= 1e-8 * std::max(1.0, std::abs(mu_min))) return std::nullopt;

    // rho + eps x with eps = -1/mu_min loses exactly the mu_min eigendirections.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        if (mu(i) - mu_min > 1e-6 * spread) keep.push_back(i);
    }
    if (keep.empty()) return std::nullopt;
    ComplexMatrix u(mu.size(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) u.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
    return orthonormal_columns(vs * sqrt_l.asDiagonal() * u, tol);
}

// Smallest subspace containing v and invariant under every operator in `ops`.
ComplexMatrix cyclic_closure(const ComplexVector& v, const std::vector<ComplexMatrix>& ops, double rel_tol) {
    const Eigen::Index d = v.size();
    ComplexMatrix q(d, d);
    Eigen::Index count = 0;
    q.col(count++) = v.normalized();
    Eigen::Index processed = 0;
    while (processed < count && count < d) {
        const ComplexVector cur = q.col(processed++);
        for (const auto& op : ops) {
            const double scale = op.norm();
            if (scale < 1e-12) continue;
            ComplexVector w = op * cur;
            for (int pass = 0; pass < 2; ++pass) {
                const ComplexVector c = q.leftCols(count).adjoint() * w;
                w.noalias() -= q.leftCols(count) * c;
            }
            const double wn = w.norm();
            if (wn > rel_tol * scale) {
                q.col(count++) = w / wn;
                if (count == d) break;
            }
        }
    }
    return q.leftCols(count);
}

std::vector<ComplexVector> eigenvector_candidates(const ComplexMatrix& a) {
    std::vector<ComplexVector> out;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(a);
    if (es.info() != Eigen::Success) return out;
    for (Eigen::Index i = 0; i < es.eigenvectors().cols(); ++i) out.push_back(es.eigenvectors().col(i));
    return out;
}

struct ScaledOp {
    ComplexMatrix op;
    double scale;
};

// Largest subspace of span(w) invariant under a, then split into eigenspaces.
std::vector<ComplexMatrix> refine_by(const ComplexMatrix& w_in, const ScaledOp& a, const ToleranceConfig& tol) {
    const double cut = tol.eig * a.scale;
    ComplexMatrix w = w_in;
    while (w.cols() > 0) {
        const ComplexMatrix aw = a.op * w;
        const ComplexMatrix outside = aw - w * (w.adjoint() * aw);
        const ComplexMatrix n = null_space_abs(outside, cut);
        if (n.cols() == w.cols()) break;
        w = w * n;
    }
    std::vector<ComplexMatrix> out;
    if (w.cols() == 0) return out;

    const ComplexMatrix restricted = w.adjoint() * a.op * w;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(restricted, false);
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    std::vector<Complex> centers;
    std::vector<bool> used(ev.size(), false);
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (used[i]) continue;
        Complex sum = 0.0;
        int cnt = 0;
        for (std::size_t j = i; j < ev.size(); ++j) {
            if (!used[j] && std::abs(ev[j] - ev[i]) <= cut) {
                used[j] = true;
                sum += ev[j];
                ++cnt;
            }
        }
        centers.push_back(sum / static_cast<double>(cnt));
    }
    const ComplexMatrix id = ComplexMatrix::Identity(restricted.rows(), restricted.cols());
    for (const Complex& c : centers) {
        const ComplexMatrix e = null_space_abs(restricted - c * id, 10.0 * cut);
        if (e.cols() > 0) out.push_back(w * e);
    }
    return out;
}

}  // namespace

AlgebraVerdict check_davies_algebra(const LindbladSystem& sys, const ToleranceConfig& tol) {
    const AlgebraClosureResult alg = generate_algebra(lk_seeds(sys), tol);
    if (alg.basis.orthonormality_defect() > tol.orthonormality * 100.0) {
        throw NumericalError("check_davies_algebra: closure basis failed the orthonormality audit");
    }
    AlgebraVerdict out;
    out.algebra_dim = alg.dim;
    out.rounds = alg.rounds;
    out.verdict = alg.is_full ? DaviesVerdict::Irreducible : DaviesVerdict::Reducible;
    return out;
}

SteadyVerdict check_davies_steady(const LindbladSystem& sys, const ToleranceConfig& tol) {
    const SteadyStateSet ss = steady_states(sys, tol);
    SteadyVerdict out;
    out.null_dim = ss.null_dim;
    out.support_rank = ss.support_rank;
    out.verdict = (ss.null_dim == 1 && ss.support_rank == sys.dim) ? DaviesVerdict::Irreducible : DaviesVerdict::Reducible;
    return out;
}

ProjectionCheck verify_reducing_projection(const LindbladSystem& sys, const ComplexMatrix& p, const ToleranceConfig& tol) {
    sys.validate(tol.hermiticity);
    if (p.rows() != sys.dim || p.cols() != sys.dim) throw std::invalid_argument("verify_reducing_projection: dimension mismatch");
    if (!is_projection(p, tol.residual * std::max(1.0, p.norm()))) {
        throw std::invalid_argument("verify_reducing_projection: input is not a projection");
    }
    const ComplexMatrix id = identity(sys.dim);
    const ComplexMatrix q = id - p;
    ProjectionCheck out;
    out.trivial = p.norm() < 0.5 || q.norm() < 0.5;
    bool ok = true;
    for (const auto& l : sys.lindblads) {
        const double r = (q * l * p).norm();
        out.lindblad_residuals.push_back(r);
        ok = ok && r <= tol.residual * l.norm();
    }
    const ComplexMatrix k = compute_K(sys);
    out.k_residual = (q * k * p).norm();
    ok = ok && out.k_residual <= tol.residual * k.norm();
    out.reduces = ok;
    return out;
}

std::optional<ReducingProjection> find_reducing_projection(const LindbladSystem& sys, const ToleranceConfig& tol) {
    const SteadyStateSet ss = steady_states(sys, tol);
    const Eigen::Index d = sys.dim;
    if (ss.null_dim == 1 && ss.support_rank == d) return std::nullopt;

    const HermitianEigen re = eig_hermitian(ss.max_support_state, tol);

    // Degenerate kernel: walk to the PSD boundary along a second steady
    // direction. Tried first because it yields smaller supports.
    const std::vector<ComplexMatrix> kernel_herm = hermitian_kernel_elements(ss.null_basis);
    if (ss.null_dim > 1) {
        const ComplexMatrix& rho = ss.max_support_state;
        for (const auto& x : kernel_herm) {
            ComplexMatrix traceless = x - x.trace().real() * rho;
            if (traceless.norm() <= 1e-6 * std::max(1e-300, x.norm())) continue;
            if (auto basis = psd_boundary_support(rho, traceless, tol)) {
                if (auto w = accept(sys, *basis, WitnessSource::PsdBoundary, tol)) return w;
            }
        }
    }

    // Support of a rank-deficient steady state is invariant.
    if (ss.support_rank < d) {
        if (auto w = accept(sys, columns_above(re, tol.psd), WitnessSource::SteadySupport, tol)) return w;
    }

    // Cyclic subspaces of candidate vectors under {L_a, K}.
    const std::vector<ComplexMatrix> ops = lk_seeds(sys);
    std::vector<ComplexVector> candidates;
    for (Eigen::Index i = 0; i < re.vectors.cols(); ++i) candidates.push_back(re.vectors.col(i));
    for (const auto& x : kernel_herm) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x);
        for (Eigen::Index i = 0; i < es.eigenvectors().cols(); ++i) candidates.push_back(es.eigenvectors().col(i));
    }
    for (const auto& op : ops) {
        for (auto& v : eigenvector_candidates(op)) candidates.push_back(std::move(v));
    }
    for (Eigen::Index i = 0; i < d; ++i) candidates.push_back(ComplexVector::Unit(d, i));
    for (const auto& v : candidates) {
        if (v.norm() < 1e-12) continue;
        const ComplexMatrix closure = cyclic_closure(v, ops, tol.residual);
        if (auto w = accept(sys, closure, WitnessSource::CyclicClosure, tol)) return w;
    }

    std::ostringstream msg;
    msg << "find_reducing_projection: no verified witness (null_dim=" << ss.null_dim
        << ", support_rank=" << ss.support_rank << ", d=" << d << ")";
    throw NoWitnessFound(msg.str());
}

EvansResult check_evans(const LindbladSystem& sys, const ToleranceConfig& tol) {
    const CommutantResult comm = commutant(evans_seeds(sys), tol);
    EvansResult out;
    out.commutant_dim = comm.dim;
    if (comm.dim <= 1) return out;
    out.verdict = EvansVerdict::EvansReducible;

    const Eigen::Index d = sys.dim;
    const ComplexMatrix id = identity(d);
    const Superoperator adj = adjoint_superoperator(sys);
    const Complex minus_i(0.0, -1.0);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : comm.basis.basis()) {
        for (const ComplexMatrix& raw : {ComplexMatrix(hermitian_part(b)), ComplexMatrix(hermitian_part(ComplexMatrix(minus_i * b)))}) {
            ComplexMatrix x = raw - (raw.trace() / static_cast<double>(d)) * id;
            x = hermitian_part(x);
            if (x.norm() <= 1e-8 * std::max(1.0, b.norm())) continue;
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x);
            const RealVector& w = es.eigenvalues();
            const double top = w(w.size() - 1);
            const double spread = top - w(0);
            std::vector<Eigen::Index> idx;
            for (Eigen::Index i = 0; i < w.size(); ++i) {
                if (top - w(i) <= 1e-6 * spread) idx.push_back(i);
            }
            if (idx.empty() || static_cast<Eigen::Index>(idx.size()) >= d) continue;
            ComplexMatrix vs(d, static_cast<Eigen::Index>(idx.size()));
            for (std::size_t k = 0; k < idx.size(); ++k) vs.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(idx[k]);
            ComplexMatrix p = polish_projection(projector_onto(vs, d));
            const double res = adj.apply(p).norm();
            if (res < best) {
                best = res;
                out.conserved_projection = std::move(p);
                out.conservation_residual = res;
            }
        }
        if (best <= tol.rank_rel) break;
    }
    return out;
}

FrigerioResult check_frigerio1(const LindbladSystem& sys, const ToleranceConfig& tol) {
    FrigerioResult out;
    const SteadyStateSet ss = steady_states(sys, tol);
    if (ss.support_rank != sys.dim) return out;
    if (!commutant(evans_seeds(sys), tol).is_trivial) return out;
    out.applicable = true;
    out.conclusion = true;
    return out;
}

FrigerioResult check_frigerio2(const LindbladSystem& sys, const ToleranceConfig& tol) {
    FrigerioResult out;
    if (sys.lindblads.empty()) return out;
    if (!is_self_adjoint_span(sys.lindblads, tol)) return out;
    if (!commutant(sys.lindblads, tol).is_trivial) return out;
    out.applicable = true;
    out.conclusion = true;
    return out;
}

ExtensionOutcome check_extension_corollary(const LindbladSystem& sys, const std::vector<ComplexMatrix>& generators,
                                           const ToleranceConfig& tol) {
    if (generators.empty()) return ExtensionOutcome::NotApplicable;
    const AlgebraClosureResult alg = generate_algebra(lk_seeds(sys), tol);
    for (const auto& g : generators) {
        if (g.rows() != sys.dim || g.cols() != sys.dim) throw std::invalid_argument("check_extension_corollary: dimension mismatch");
        if (!contains(alg.basis, g, tol.residual)) return ExtensionOutcome::GNotInAlgebra;
    }
    if (!is_self_adjoint_span(generators, tol)) return ExtensionOutcome::NotApplicable;
    if (!commutant(generators, tol).is_trivial) return ExtensionOutcome::NotApplicable;
    return ExtensionOutcome::ImpliesIrreducible;
}

std::pair<DarkStateReport, bool> check_dark_state(const LindbladSystem& sys, const ComplexVector& psi, const ToleranceConfig& tol) {
    sys.validate(tol.hermiticity);
    if (psi.size() != sys.dim) throw std::invalid_argument("check_dark_state: dimension mismatch");
    if (std::abs(psi.norm() - 1.0) > 1e-8) throw std::invalid_argument("check_dark_state: state is not normalized");

    DarkStateReport rep;
    rep.state = psi;
    bool dark = true;
    auto probe = [&](const ComplexMatrix& a) {
        const ComplexVector ap = a * psi;
        const Complex lambda = psi.dot(ap);
        const double r = (ap - lambda * psi).norm();
        rep.residuals.push_back(r);
        dark = dark && r <= tol.residual * std::max(1.0, a.norm());
        return lambda;
    };
    for (const auto& l : sys.lindblads) rep.lindblad_eigenvalues.push_back(probe(l));
    rep.k_eigenvalue = probe(compute_K(sys));
    const ComplexMatrix pure = psi * psi.adjoint();
    rep.liouvillian_residual = build_superoperator(sys).apply(pure).norm();
    return {std::move(rep), dark};
}

std::vector<DarkStateReport> find_dark_states(const LindbladSystem& sys, const ToleranceConfig& tol) {
    sys.validate(tol.hermiticity);
    const Eigen::Index d = sys.dim;
    std::vector<ScaledOp> ops;
    for (const auto& l : sys.lindblads) ops.push_back({l, std::max(1.0, l.norm())});
    const ComplexMatrix k = compute_K(sys);
    ops.push_back({k, std::max(1.0, k.norm())});

    std::vector<ComplexMatrix> spaces{ComplexMatrix::Identity(d, d)};
    for (const auto& op : ops) {
        std::vector<ComplexMatrix> next;
        for (const auto& s : spaces) {
            for (auto& e : refine_by(s, op, tol)) next.push_back(std::move(e));
        }
        spaces = std::move(next);
        if (spaces.empty()) break;
    }

    std::vector<DarkStateReport> out;
    for (const auto& s : spaces) {
        const ComplexMatrix on = orthonormal_columns(s, tol);
        for (Eigen::Index i = 0; i < on.cols(); ++i) {
            out.push_back(check_dark_state(sys, on.col(i).normalized(), tol).first);
        }
    }
    return out;
}

ReducibilityReport analyze(const LindbladSystem& sys, const ToleranceConfig& tol) {
    ReducibilityReport rep;
    rep.dim = sys.dim;
    const AlgebraVerdict av = check_davies_algebra(sys, tol);
    rep.davies_algebra_verdict = av.verdict;
    rep.algebra_dim = av.algebra_dim;
    const SteadyVerdict sv = check_davies_steady(sys, tol);
    rep.davies_steady_verdict = sv.verdict;
    rep.null_dim = sv.null_dim;
    rep.support_rank = sv.support_rank;

    const EvansResult ev = check_evans(sys, tol);
    rep.evans_verdict = ev.verdict;
    rep.evans_commutant_dim = ev.commutant_dim;
    rep.conserved_projection = ev.conserved_projection;
    rep.frigerio1 = check_frigerio1(sys, tol);
    rep.frigerio2 = check_frigerio2(sys, tol);

    if (!rep.checkers_agree()) throw CheckerDisagreement(std::move(rep));
    if (rep.davies_steady_verdict == DaviesVerdict::Reducible) rep.reducing_projection = find_reducing_projection(sys, tol);
    return rep;
}

}  // namespace davies
