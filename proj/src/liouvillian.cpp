#include "davies/liouvillian.hpp"

#include <algorithm>

namespace davies {

LindbladSystem::LindbladSystem(ComplexMatrix h, std::vector<ComplexMatrix> ls)
    : dim(h.rows()), hamiltonian(std::move(h)), lindblads(std::move(ls)) {}

void LindbladSystem::validate(double hermiticity_tol) const {
    if (dim <= 0) throw std::invalid_argument("LindbladSystem: dimension must be positive");
    if (hamiltonian.rows() != dim || hamiltonian.cols() != dim) {
        throw std::invalid_argument("LindbladSystem: Hamiltonian has wrong shape");
    }
    if (!hamiltonian.allFinite()) throw std::invalid_argument("LindbladSystem: Hamiltonian has non-finite entries");
    if (!is_hermitian(hamiltonian, hermiticity_tol)) throw std::invalid_argument("LindbladSystem: Hamiltonian is not Hermitian");
    for (const auto& l : lindblads) {
        if (l.rows() != dim || l.cols() != dim) throw std::invalid_argument("LindbladSystem: Lindblad operator has wrong shape");
        if (!l.allFinite()) throw std::invalid_argument("LindbladSystem: Lindblad operator has non-finite entries");
    }
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const {
    if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("Superoperator::apply: dimension mismatch");
    return unvec(matrix * vec(rho), dim);
}

Superoperator build_superoperator(const LindbladSystem& sys) {
    sys.validate();
    const Eigen::Index d = sys.dim;
    const ComplexMatrix id = identity(d);
    const Complex i(0.0, 1.0);
    ComplexMatrix m = -i * (tensor(id, sys.hamiltonian) - tensor(sys.hamiltonian.transpose(), id));
    for (const auto& l : sys.lindblads) {
        const ComplexMatrix ldl = l.adjoint() * l;
        m += tensor(l.conjugate(), l);
        m -= 0.5 * tensor(id, ldl);
        m -= 0.5 * tensor(ldl.transpose(), id);
    }
    return {d, std::move(m)};
}

Superoperator adjoint_superoperator(const LindbladSystem& sys) {
    sys.validate();
    const Eigen::Index d = sys.dim;
    const ComplexMatrix id = identity(d);
    const Complex i(0.0, 1.0);
    ComplexMatrix m = i * (tensor(id, sys.hamiltonian) - tensor(sys.hamiltonian.transpose(), id));
    for (const auto& l : sys.lindblads) {
        const ComplexMatrix ldl = l.adjoint() * l;
        m += tensor(l.transpose(), l.adjoint());
        m -= 0.5 * tensor(id, ldl);
        m -= 0.5 * tensor(ldl.transpose(), id);
    }
    return {d, std::move(m)};
}

ComplexMatrix compute_K(const LindbladSystem& sys) {
    sys.validate();
    ComplexMatrix k = Complex(0.0, -1.0) * sys.hamiltonian;
    for (const auto& l : sys.lindblads) k -= 0.5 * (l.adjoint() * l);
    return k;
}

SteadyStateSet steady_states(const LindbladSystem& sys, const ToleranceConfig& tol) {
    const Superoperator gen = build_superoperator(sys);
    const Eigen::Index d = sys.dim;

    const ComplexMatrix right = null_space(gen.matrix, tol);
    const ComplexMatrix left = null_space(gen.matrix.adjoint(), tol);
    if (right.cols() == 0) throw NumericalError("steady_states: generator kernel is empty");
    if (right.cols() != left.cols()) {
        throw NumericalError("steady_states: kernel dimensions of generator and adjoint disagree");
    }

    // Oblique spectral projector onto ker(L) along ran(L): R (W^dag R)^{-1} W^dag.
    const ComplexMatrix overlap = left.adjoint() * right;
    Eigen::FullPivLU<ComplexMatrix> lu(overlap);
    if (!lu.isInvertible()) throw NumericalError("steady_states: zero eigenvalue is not semisimple to working precision");
    const ComplexVector mixed = vec(identity(d)) / static_cast<double>(d);
    const ComplexVector projected = right * lu.solve(left.adjoint() * mixed);

    ComplexMatrix rho = hermitian_part(unvec(projected, d));
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-12) throw NumericalError("steady_states: projected state has vanishing trace");
    rho /= tr.real();

    SteadyStateSet out;
    out.null_dim = right.cols();
    out.null_basis = OperatorSubspace(d, right);
    const HermitianEigen eig = eig_hermitian(rho, tol);
    out.state_eigenvalues = eig.values;
    out.support_rank = (eig.values.array() > tol.psd).count();
    out.max_support_state = std::move(rho);
    out.residual = gen.apply(out.max_support_state).norm();
    return out;
}

Spectrum spectrum(const LindbladSystem& sys, const ToleranceConfig& tol) {
    const Superoperator gen = build_superoperator(sys);
    Spectrum out;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(gen.matrix, false);
    if (es.info() != Eigen::Success) throw NumericalError("spectrum: eigensolver did not converge");
    const ComplexVector& ev = es.eigenvalues();
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::stable_sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });

    const double scale = std::max(1.0, gen.matrix.norm());
    const double zero_cut = tol.eig * scale;
    bool found = false;
    double max_re = 0.0;
    for (const Complex& l : out.eigenvalues) {
        if (std::abs(l) <= zero_cut) continue;
        if (!found || l.real() > max_re) max_re = l.real();
        found = true;
    }
    out.gap = found ? -max_re : 0.0;
    out.kernel_dim = null_space(gen.matrix, tol).cols();
    out.relaxing = out.kernel_dim == 1;
    return out;
}

}  // namespace davies
