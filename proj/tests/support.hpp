// Shared helpers for the test suites: random ensembles and independent oracles.
#ifndef DAVIES_TEST_SUPPORT_HPP
#define DAVIES_TEST_SUPPORT_HPP

#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "davies/liouvillian.hpp"
#include "davies/models.hpp"

namespace davies::test {

using Rng = std::mt19937_64;

inline ComplexMatrix gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = g(rng);
            const double im = g(rng);
            m(i, j) = Complex(re, im);
        }
    return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index d, Rng& rng) {
    const ComplexMatrix a = gaussian(d, d, rng);
    return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix random_unitary(Eigen::Index d, Rng& rng) {
    Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(d, d, rng));
    return qr.householderQ();
}

inline ComplexMatrix random_density(Eigen::Index d, Rng& rng) {
    const ComplexMatrix a = gaussian(d, d, rng);
    ComplexMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

inline ComplexVector random_unit_vector(Eigen::Index d, Rng& rng) { return gaussian(d, 1, rng).col(0).normalized(); }

inline int uniform_int(int lo, int hi, Rng& rng) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random H and 1-3 Gaussian Lindblad operators.
inline LindbladSystem random_generic_system(Eigen::Index d, Rng& rng) {
    const int nl = uniform_int(1, 3, rng);
    std::vector<ComplexMatrix> ls;
    for (int k = 0; k < nl; ++k) ls.push_back(gaussian(d, d, rng) / std::sqrt(static_cast<double>(d)));
    return LindbladSystem(random_hermitian(d, rng), std::move(ls));
}

/**
 * System with an invariant subspace of dimension k: in a random basis every
 * L is block upper triangular and H is chosen so that K is too
 * (H21 = (i/2) [sum L^dag L]21). k = 1 gives a dark state.
 */
inline LindbladSystem random_invariant_subspace_system(Eigen::Index d, Eigen::Index k, Rng& rng) {
    const int nl = uniform_int(1, 3, rng);
    std::vector<ComplexMatrix> ls;
    ComplexMatrix s = ComplexMatrix::Zero(d, d);
    for (int a = 0; a < nl; ++a) {
        ComplexMatrix l = gaussian(d, d, rng) / std::sqrt(static_cast<double>(d));
        l.bottomLeftCorner(d - k, k).setZero();
        s += l.adjoint() * l;
        ls.push_back(std::move(l));
    }
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    h.topLeftCorner(k, k) = random_hermitian(k, rng);
    h.bottomRightCorner(d - k, d - k) = random_hermitian(d - k, rng);
    h.bottomLeftCorner(d - k, k) = Complex(0.0, 0.5) * s.bottomLeftCorner(d - k, k);
    h.topRightCorner(k, d - k) = h.bottomLeftCorner(d - k, k).adjoint();

    const ComplexMatrix u = random_unitary(d, rng);
    for (auto& l : ls) l = u * l * u.adjoint();
    return LindbladSystem(u * h * u.adjoint(), std::move(ls));
}

/// Strong symmetry: H and every L block diagonal in a random basis.
inline LindbladSystem random_block_diagonal_system(Eigen::Index d, Eigen::Index k, Rng& rng) {
    const int nl = uniform_int(1, 3, rng);
    const ComplexMatrix u = random_unitary(d, rng);
    std::vector<ComplexMatrix> ls;
    for (int a = 0; a < nl; ++a) {
        ComplexMatrix l = ComplexMatrix::Zero(d, d);
        l.topLeftCorner(k, k) = gaussian(k, k, rng);
        l.bottomRightCorner(d - k, d - k) = gaussian(d - k, d - k, rng);
        ls.push_back(u * l * u.adjoint() / std::sqrt(static_cast<double>(d)));
    }
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    h.topLeftCorner(k, k) = random_hermitian(k, rng);
    h.bottomRightCorner(d - k, d - k) = random_hermitian(d - k, rng);
    return LindbladSystem(u * h * u.adjoint(), std::move(ls));
}

enum class Ensemble { Generic, InvariantSubspace, DarkState, BlockDiagonal };

/// Mixed ensemble: d in {2, 3, 4}; roughly 40% generic, 30% invariant subspace, 15% dark state, 15% block diagonal.
inline LindbladSystem random_mixed_system(Rng& rng, Ensemble* kind = nullptr) {
    const Eigen::Index d = uniform_int(2, 4, rng);
    const int r = uniform_int(0, 99, rng);
    Ensemble e;
    LindbladSystem sys;
    if (r < 40) {
        e = Ensemble::Generic;
        sys = random_generic_system(d, rng);
    } else if (r < 70) {
        e = Ensemble::InvariantSubspace;
        sys = random_invariant_subspace_system(d, uniform_int(1, static_cast<int>(d) - 1, rng), rng);
    } else if (r < 85) {
        e = Ensemble::DarkState;
        sys = random_invariant_subspace_system(d, 1, rng);
    } else {
        e = Ensemble::BlockDiagonal;
        sys = random_block_diagonal_system(d, uniform_int(1, static_cast<int>(d) - 1, rng), rng);
    }
    if (kind) *kind = e;
    return sys;
}

// ---------------------------------------------------------------------------
// Oracles that do not go through the library's vectorization or closure code.

/// -i[H, rho] + sum L rho L^dag - 1/2 {L^dag L, rho}, evaluated on matrices.
inline ComplexMatrix lindblad_rhs(const LindbladSystem& sys, const ComplexMatrix& rho) {
    const Complex i(0.0, 1.0);
    ComplexMatrix out = -i * (sys.hamiltonian * rho - rho * sys.hamiltonian);
    for (const auto& l : sys.lindblads) {
        const ComplexMatrix ldl = l.adjoint() * l;
        out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
    }
    return out;
}

/// Heisenberg picture: i[H, A] + sum L^dag A L - 1/2 {L^dag L, A}.
inline ComplexMatrix lindblad_adjoint_rhs(const LindbladSystem& sys, const ComplexMatrix& a) {
    const Complex i(0.0, 1.0);
    ComplexMatrix out = i * (sys.hamiltonian * a - a * sys.hamiltonian);
    for (const auto& l : sys.lindblads) {
        const ComplexMatrix ldl = l.adjoint() * l;
        out += l.adjoint() * a * l - 0.5 * (ldl * a + a * ldl);
    }
    return out;
}

/// Generator matrix assembled column by column from lindblad_rhs on matrix units.
inline ComplexMatrix generator_by_columns(const LindbladSystem& sys) {
    const Eigen::Index d = sys.dim;
    ComplexMatrix m(d * d, d * d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) {
            ComplexMatrix e = ComplexMatrix::Zero(d, d);
            e(i, j) = 1.0;
            const ComplexMatrix out = lindblad_rhs(sys, e);
            m.col(i + j * d) = Eigen::Map<const ComplexVector>(out.data(), d * d);
        }
    return m;
}

/// Numerical rank from a full JacobiSVD with relative cutoff.
inline Eigen::Index svd_rank(const ComplexMatrix& m, double rel = 1e-9) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel * s(0)) ++r;
    return r;
}

/**
 * Naive closure: keep every word as a column, multiply all pairs, and stop
 * when the JacobiSVD rank stops growing. Columns are pruned to a row-echelon
 * spanning set each round so the matrix stays small.
 */
inline Eigen::Index brute_force_algebra_dim(const std::vector<ComplexMatrix>& seeds) {
    const Eigen::Index d = seeds.front().rows();
    std::vector<ComplexMatrix> elems;
    for (const auto& s : seeds)
        if (s.norm() > 1e-12) elems.push_back(s / s.norm());
    auto stacked = [d](const std::vector<ComplexMatrix>& v) {
        ComplexMatrix m(d * d, static_cast<Eigen::Index>(v.size()));
        for (std::size_t k = 0; k < v.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const ComplexVector>(v[k].data(), d * d);
        return m;
    };
    auto prune = [&](const std::vector<ComplexMatrix>& v) {
        // Keep a maximal linearly independent subset, scanning in order.
        std::vector<ComplexMatrix> kept;
        Eigen::Index rank = 0;
        for (const auto& x : v) {
            kept.push_back(x);
            const Eigen::Index r = svd_rank(stacked(kept));
            if (r == rank) {
                kept.pop_back();
            } else {
                rank = r;
            }
        }
        return kept;
    };
    if (elems.empty()) return 0;
    elems = prune(elems);
    Eigen::Index dim = static_cast<Eigen::Index>(elems.size());
    for (;;) {
        std::vector<ComplexMatrix> next = elems;
        for (const auto& a : elems)
            for (const auto& b : elems) {
                ComplexMatrix p = a * b;
                const double n = p.norm();
                if (n > 1e-12) next.push_back(p / n);
            }
        next = prune(next);
        const auto nd = static_cast<Eigen::Index>(next.size());
        if (nd == dim) return dim;
        elems = std::move(next);
        dim = nd;
    }
}

/// exp(t L) applied via the matrix-level generator and Eigen's exponential.
inline ComplexMatrix evolve(const LindbladSystem& sys, const ComplexMatrix& rho, double t) {
    const Eigen::Index d = sys.dim;
    const ComplexMatrix e = (t * generator_by_columns(sys)).exp();
    ComplexVector v = Eigen::Map<const ComplexVector>(rho.data(), d * d);
    ComplexVector out = e * v;
    return Eigen::Map<const ComplexMatrix>(out.data(), d, d);
}

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

inline ComplexVector ket(std::initializer_list<Complex> xs) {
    ComplexVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (Complex x : xs) v(i++) = x;
    return v;
}

}  // namespace davies::test

#endif
