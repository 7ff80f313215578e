#include "davies/channel_markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

namespace davies {

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& rho) const {
    if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("QuantumChannel::apply: dimension mismatch");
    return unvec(matrix * vec(rho), dim);
}

double KrausSet::completeness_residual() const {
    if (operators.empty()) return std::numeric_limits<double>::infinity();
    const Eigen::Index d = operators.front().rows();
    ComplexMatrix s = ComplexMatrix::Zero(d, d);
    for (const auto& m : operators) s += m.adjoint() * m;
    return (s - identity(d)).norm();
}

ComplexMatrix KrausSet::to_superoperator() const {
    if (operators.empty()) throw std::invalid_argument("KrausSet::to_superoperator: empty Kraus set");
    const Eigen::Index d = operators.front().rows();
    ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
    for (const auto& m : operators) s += tensor(m.conjugate(), m);
    return s;
}

std::string StochasticMatrix::label(Eigen::Index i) const {
    if (static_cast<std::size_t>(i) < labels.size() && !labels[static_cast<std::size_t>(i)].empty()) {
        return labels[static_cast<std::size_t>(i)];
    }
    return "b" + std::to_string(i);
}

QuantumChannel channel_from_liouvillian(const LindbladSystem& sys, double t, const ToleranceConfig& tol) {
    if (!std::isfinite(t) || t <= 0.0) throw std::invalid_argument("channel_from_liouvillian: t must be finite and positive");
    const Superoperator gen = build_superoperator(sys);
    QuantumChannel ch{sys.dim, matrix_exp(t * gen.matrix), t};
    if (!ch.matrix.allFinite()) throw NumericalError("channel_from_liouvillian: exponential overflowed");

    const ComplexVector id = vec(identity(sys.dim));
    const double tp_defect = (ch.matrix.adjoint() * id - id).norm();
    if (tp_defect > 1e-8 * std::max(1.0, id.norm())) throw NumericalError("channel_from_liouvillian: trace-preservation audit failed");
    const HermitianEigen ce = eig_hermitian(hermitian_part(choi_matrix(ch)), tol);
    if (ce.values(0) < -1e-8 * std::max(1.0, ce.values(ce.values.size() - 1))) {
        throw NumericalError("channel_from_liouvillian: complete-positivity audit failed");
    }
    return ch;
}

ComplexMatrix choi_matrix(const QuantumChannel& ch) {
    const Eigen::Index d = ch.dim;
    ComplexMatrix c(d * d, d * d);
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index b = 0; b < d; ++b)
                for (Eigen::Index j = 0; j < d; ++j) c(a * d + i, b * d + j) = ch.matrix(a + b * d, i + j * d);
    return c;
}

KrausSet kraus_from_choi(const ComplexMatrix& choi, const ToleranceConfig& tol) {
    const Eigen::Index n = choi.rows();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (choi.cols() != n || d * d != n) throw std::invalid_argument("kraus_from_choi: Choi matrix must be d^2 x d^2");
    const HermitianEigen eig = eig_hermitian(choi, tol);
    const double lmax = eig.values(n - 1);
    if (lmax <= 0.0) throw std::invalid_argument("kraus_from_choi: Choi matrix has no positive eigenvalue");
    if (eig.values(0) < -1e-8 * lmax) throw std::invalid_argument("kraus_from_choi: Choi matrix is not positive semidefinite");

    KrausSet out;
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        const double lambda = eig.values(k);
        if (lambda <= tol.rank_abs * lmax) break;
        // Row-major flattening: M(a, i) = v(a d + i).
        Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m =
            Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                ComplexVector(eig.vectors.col(k)).data(), d, d);
        out.operators.emplace_back(std::sqrt(lambda) * ComplexMatrix(m));
    }
    return out;
}

QuantumChannel channel_from_kraus(const KrausSet& kraus) {
    ComplexMatrix s = kraus.to_superoperator();
    const Eigen::Index d = kraus.operators.front().rows();
    return {d, std::move(s), std::nullopt};
}

StochasticMatrix classical_transition_matrix(const QuantumChannel& ch, const ComplexMatrix& basis, const ToleranceConfig& tol) {
    const Eigen::Index d = ch.dim;
    if (basis.rows() != d || basis.cols() != d) throw std::invalid_argument("classical_transition_matrix: basis has wrong shape");
    if ((basis.adjoint() * basis - identity(d)).norm() > tol.residual) {
        throw std::invalid_argument("classical_transition_matrix: basis is not unitary");
    }
    StochasticMatrix p;
    p.entries.resize(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const ComplexVector bj = basis.col(j);
        const ComplexMatrix out = ch.apply(bj * bj.adjoint());
        for (Eigen::Index i = 0; i < d; ++i) {
            const double v = basis.col(i).dot(out * basis.col(i)).real();
            if (v < -1e-8) throw NumericalError("classical_transition_matrix: negative transition probability");
            p.entries(i, j) = std::clamp(v, 0.0, 1.0);
        }
    }
    const double col_defect = (p.entries.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (col_defect > 1e-8) throw NumericalError("classical_transition_matrix: columns do not sum to one");
    return p;
}

MarkovConnectivity is_irreducible_markov(const StochasticMatrix& p, double support_tol) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
    const Eigen::Index n = p.size();
    Graph g(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            if (i != j && p.entries(i, j) > support_tol) boost::add_edge(static_cast<std::size_t>(j), static_cast<std::size_t>(i), g);

    std::vector<int> comp(static_cast<std::size_t>(n));
    const int ncomp = n > 0 ? boost::strong_components(g, comp.data()) : 0;

    // Renumber components by their smallest node so the output is deterministic.
    std::map<int, std::vector<Eigen::Index>> by_id;
    for (Eigen::Index v = 0; v < n; ++v) by_id[comp[static_cast<std::size_t>(v)]].push_back(v);
    MarkovConnectivity out;
    for (auto& [id, nodes] : by_id) out.components.push_back(nodes);
    std::sort(out.components.begin(), out.components.end());

    for (const auto& c : out.components) {
        const int cid = comp[static_cast<std::size_t>(c.front())];
        bool closed = true;
        for (Eigen::Index v : c) {
            for (Eigen::Index i = 0; i < n && closed; ++i) {
                if (p.entries(i, v) > support_tol && comp[static_cast<std::size_t>(i)] != cid) closed = false;
            }
        }
        if (closed) {
            out.closed_classes.push_back(c);
            if (c.size() == 1) out.absorbing.push_back(c.front());
        }
    }
    out.irreducible = ncomp <= 1;
    return out;
}

ComplexMatrix haar_unitary(Eigen::Index d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix z(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            z(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; ++i) {
        const Complex rii = r(i, i);
        const double a = std::abs(rii);
        if (a > 0.0) q.col(i) *= rii / a;
    }
    return q;
}

ComplexMatrix adapted_basis(const ComplexMatrix& p, const ToleranceConfig& tol) {
    const HermitianEigen eig = eig_hermitian(hermitian_part(p), tol);
    const Eigen::Index d = p.rows();
    ComplexMatrix out(d, d);
    Eigen::Index k = 0;
    for (Eigen::Index i = d - 1; i >= 0; --i)
        if (eig.values(i) > 0.5) out.col(k++) = eig.vectors.col(i);
    for (Eigen::Index i = d - 1; i >= 0; --i)
        if (eig.values(i) <= 0.5) out.col(k++) = eig.vectors.col(i);
    return out;
}

ProbeReport basis_probe(const LindbladSystem& sys, double t, int trials, std::uint64_t seed,
                        const std::optional<ComplexMatrix>& reducing_projection, const ToleranceConfig& tol) {
    if (trials < 1) throw std::invalid_argument("basis_probe: trials must be at least 1");
    const QuantumChannel ch = channel_from_liouvillian(sys, t, tol);
    ProbeReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.t = t;

    auto run = [&](const ComplexMatrix& basis, std::string name) {
        const StochasticMatrix p = classical_transition_matrix(ch, basis, tol);
        const bool irr = is_irreducible_markov(p, tol.support).irreducible;
        if (!irr && !rep.witness_found) {
            rep.witness_found = true;
            rep.witness_basis_index = rep.outcomes.size();
        }
        rep.outcomes.push_back({std::move(name), irr});
    };
    run(identity(sys.dim), "computational");
    for (int k = 0; k < trials; ++k) {
        run(haar_unitary(sys.dim, seed + static_cast<std::uint64_t>(k)), "haar:" + std::to_string(k));
    }
    if (reducing_projection) run(adapted_basis(*reducing_projection, tol), "adapted");
    return rep;
}

std::string export_dot(const StochasticMatrix& p, double threshold) {
    auto quoted = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') q += '\\';
            q += c;
        }
        return q + "\"";
    };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return std::string(buf);
    };
    std::ostringstream os;
    os << "digraph markov {\n";
    for (Eigen::Index i = 0; i < p.size(); ++i) os << "  " << quoted(p.label(i)) << ";\n";
    for (Eigen::Index j = 0; j < p.size(); ++j)
        for (Eigen::Index i = 0; i < p.size(); ++i)
            if (p.entries(i, j) > threshold)
                os << "  " << quoted(p.label(j)) << " -> " << quoted(p.label(i)) << " [label=\"" << fmt(p.entries(i, j)) << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace davies
