#include <cmath>

#include <catch_amalgamated.hpp>

#include "davies/channel_markov.hpp"
#include "davies/irreducibility.hpp"
#include "davies/models.hpp"
#include "support.hpp"

using namespace davies;
using namespace davies::test;

namespace {

ComplexMatrix computational(Eigen::Index d) { return identity(d); }

ComplexMatrix rotated_basis() {
    ComplexMatrix b(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    b << s, s, s, -s;  // columns |->>, |<-
    return b;
}

// Channel superoperator built column by column from a map on matrices.
template <class F>
ComplexMatrix superoperator_of(Eigen::Index d, F&& f) {
    ComplexMatrix m(d * d, d * d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) {
            ComplexMatrix e = ComplexMatrix::Zero(d, d);
            e(i, j) = 1.0;
            const ComplexMatrix out = f(e);
            m.col(i + j * d) = Eigen::Map<const ComplexVector>(out.data(), d * d);
        }
    return m;
}

QuantumChannel channel_of(Eigen::Index d, ComplexMatrix m) {
    QuantumChannel ch;
    ch.dim = d;
    ch.matrix = std::move(m);
    return ch;
}

}  // namespace

TEST_CASE("channel from the Liouvillian", "[channel_markov]") {
    const QuantumChannel tiny = channel_from_liouvillian(make_preset("lind1101"), 1e-12);
    CHECK((tiny.matrix - identity(4)).norm() <= 1e-10);
    CHECK(tiny.time == 1e-12);

    const double t = 0.8;
    const QuantumChannel lg = channel_from_liouvillian(make_preset("loss-gain"), t);
    const StochasticMatrix p = classical_transition_matrix(lg, computational(2));
    const double a = (1.0 + std::exp(-2.0 * t)) / 2.0, b = (1.0 - std::exp(-2.0 * t)) / 2.0;
    CHECK(std::abs(p.entries(0, 0) - a) <= 1e-12);
    CHECK(std::abs(p.entries(1, 0) - b) <= 1e-12);
    CHECK(std::abs(p.entries(0, 1) - b) <= 1e-12);
    CHECK(std::abs(p.entries(1, 1) - a) <= 1e-12);
    const ComplexMatrix coh = lg.apply(pauli::plus());
    CHECK(std::abs(coh(0, 1) - std::exp(-t)) <= 1e-12);

    const QuantumChannel deph = channel_from_liouvillian(make_preset("dephase"), t);
    ComplexMatrix rho(2, 2);
    rho << 0.3, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.7;
    ComplexMatrix expected = rho;
    expected(0, 1) *= std::exp(-2.0 * t);
    expected(1, 0) *= std::exp(-2.0 * t);
    CHECK((deph.apply(rho) - expected).norm() <= 1e-12);

    CHECK_THROWS_AS(channel_from_liouvillian(make_preset("lind1101"), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(channel_from_liouvillian(make_preset("lind1101"), -1.0), std::invalid_argument);
    CHECK_THROWS_AS(channel_from_liouvillian(make_preset("lind1101"), std::nan("")), std::invalid_argument);
}

TEST_CASE("Choi matrix examples", "[channel_markov]") {
    const Eigen::Index d = 3;
    ComplexVector omega = ComplexVector::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) omega(i * d + i) = 1.0;
    const ComplexMatrix id_choi = choi_matrix(channel_of(d, identity(d * d)));
    CHECK((id_choi - omega * omega.adjoint()).norm() <= 1e-14);

    // rho -> Tr(rho) 1/d
    const ComplexMatrix dep = superoperator_of(d, [d](const ComplexMatrix& x) { return ComplexMatrix(x.trace() * identity(d) / double(d)); });
    CHECK((choi_matrix(channel_of(d, dep)) - identity(d * d) / double(d)).norm() <= 1e-14);

    // Single Kraus operator: entries M(a, i) conj(M(b, j)).
    Rng rng(51);
    const ComplexMatrix m = gaussian(d, d, rng);
    const ComplexMatrix single = superoperator_of(d, [&](const ComplexMatrix& x) { return ComplexMatrix(m * x * m.adjoint()); });
    const ComplexMatrix choi = choi_matrix(channel_of(d, single));
    ComplexMatrix oracle(d * d, d * d);
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index b = 0; b < d; ++b)
                for (Eigen::Index j = 0; j < d; ++j) oracle(a * d + i, b * d + j) = m(a, i) * std::conj(m(b, j));
    CHECK((choi - oracle).norm() <= 1e-12 * oracle.norm());
    CHECK(svd_rank(choi) == 1);
}

TEST_CASE("Kraus decomposition examples", "[channel_markov]") {
    const KrausSet id = kraus_from_choi(choi_matrix(channel_of(2, identity(4))));
    REQUIRE(id.operators.size() == 1);
    const ComplexMatrix& m = id.operators.front();
    CHECK(std::abs(std::abs(m(0, 0)) - 1.0) <= 1e-12);
    CHECK((m - m(0, 0) * identity(2)).norm() <= 1e-12);

    Rng rng(52);
    const ComplexMatrix u = random_unitary(3, rng);
    const ComplexMatrix uch = superoperator_of(3, [&](const ComplexMatrix& x) { return ComplexMatrix(u * x * u.adjoint()); });
    const KrausSet ks = kraus_from_choi(choi_matrix(channel_of(3, uch)));
    REQUIRE(ks.operators.size() == 1);
    const ComplexMatrix k = ks.operators.front();
    const Complex phase = k(0, 0) / u(0, 0);
    CHECK(std::abs(std::abs(phase) - 1.0) <= 1e-10);
    CHECK((k - phase * u).norm() <= 1e-10);

    const QuantumChannel lg = channel_from_liouvillian(make_preset("loss-gain"), 1.0);
    const KrausSet lk = kraus_from_choi(choi_matrix(lg));
    CHECK(lk.operators.size() == 4);
    CHECK((channel_from_kraus(lk).matrix - lg.matrix).norm() <= 1e-9);

    ComplexMatrix neg = identity(4);
    neg(0, 0) = -1.0;
    CHECK_THROWS_AS(kraus_from_choi(neg), std::invalid_argument);
    CHECK_THROWS_AS(kraus_from_choi(identity(3)), std::invalid_argument);
}

TEST_CASE("Kraus round trip on random systems", "[channel_markov][property]") {
    Rng rng(53);
    for (int rep = 0; rep < 100; ++rep) {
        const LindbladSystem sys = random_generic_system(uniform_int(2, 4, rng), rng);
        const QuantumChannel ch = channel_from_liouvillian(sys, 1.0);
        const KrausSet ks = kraus_from_choi(choi_matrix(ch));
        CHECK(static_cast<Eigen::Index>(ks.operators.size()) <= sys.dim * sys.dim);
        CHECK(ks.completeness_residual() <= 1e-10);
        CHECK((ks.to_superoperator() - ch.matrix).norm() <= 1e-9);
        // Kraus action against the matrix-level oracle.
        const ComplexMatrix rho = random_density(sys.dim, rng);
        ComplexMatrix out = ComplexMatrix::Zero(sys.dim, sys.dim);
        for (const auto& m : ks.operators) out += m * rho * m.adjoint();
        CHECK((out - evolve(sys, rho, 1.0)).norm() <= 1e-9);
    }
}

TEST_CASE("two-site ferromagnet chain", "[channel_markov]") {
    const double t = 0.5 * std::log(2.0);
    const QuantumChannel ch = channel_from_liouvillian(two_site_ferromagnet(), t);
    const StochasticMatrix p = classical_transition_matrix(ch, computational(4));
    // Order: uu, ud, du, dd.
    Eigen::MatrixXd expected(4, 4);
    expected << 1, 0.25, 0.25, 0,
                0, 0.5, 0, 0,
                0, 0, 0.5, 0,
                0, 0.25, 0.25, 1;
    CHECK((p.entries - expected).cwiseAbs().maxCoeff() <= 1e-9);

    const MarkovConnectivity c = is_irreducible_markov(p);
    CHECK_FALSE(c.irreducible);
    CHECK(c.absorbing == std::vector<Eigen::Index>{0, 3});
    CHECK(c.closed_classes.size() == 2);
    CHECK(c.components.size() == 4);

    const ProbeReport probe = basis_probe(two_site_ferromagnet(), 1.0, 2, 3);
    CHECK(probe.witness_found);
    CHECK(probe.witness_basis_index == std::size_t{0});
    CHECK(probe.verdict() == "reducible");
}

TEST_CASE("driven two-level chains", "[channel_markov]") {
    const LindbladSystem sys = make_preset("sp-driven");
    for (double t : {0.2, 1.0, 3.0}) {
        const QuantumChannel ch = channel_from_liouvillian(sys, t);
        const StochasticMatrix pc = classical_transition_matrix(ch, computational(2));
        CHECK(std::abs(pc.entries(0, 0) - 1.0) <= 1e-9);
        CHECK(std::abs(pc.entries(0, 1) - (1.0 - std::exp(-t))) <= 1e-9);
        CHECK(std::abs(pc.entries(1, 1) - std::exp(-t)) <= 1e-9);
        CHECK(std::abs(pc.entries(1, 0)) <= 1e-9);
        const MarkovConnectivity cc = is_irreducible_markov(pc);
        CHECK_FALSE(cc.irreducible);
        CHECK(cc.absorbing == std::vector<Eigen::Index>{0});

        const StochasticMatrix pr = classical_transition_matrix(ch, rotated_basis());
        const double self = (1.0 + std::exp(-t / 2.0)) / 2.0, cross = (1.0 - std::exp(-t / 2.0)) / 2.0;
        CHECK(std::abs(pr.entries(0, 0) - self) <= 1e-9);
        CHECK(std::abs(pr.entries(1, 1) - self) <= 1e-9);
        CHECK(std::abs(pr.entries(0, 1) - cross) <= 1e-9);
        CHECK(std::abs(pr.entries(1, 0) - cross) <= 1e-9);
        CHECK(is_irreducible_markov(pr).irreducible);
    }
    const ProbeReport probe = basis_probe(sys, 1.0, 3, 11);
    CHECK(probe.witness_found);
    CHECK(probe.witness_basis_index == std::size_t{0});
}

TEST_CASE("Markov connectivity edge cases", "[channel_markov]") {
    StochasticMatrix id;
    id.entries = Eigen::MatrixXd::Identity(3, 3);
    const MarkovConnectivity c = is_irreducible_markov(id);
    CHECK_FALSE(c.irreducible);
    CHECK(c.components.size() == 3);
    CHECK(c.absorbing.size() == 3);

    StochasticMatrix cycle;
    cycle.entries = Eigen::MatrixXd::Zero(3, 3);
    cycle.entries(1, 0) = cycle.entries(2, 1) = cycle.entries(0, 2) = 1.0;
    CHECK(is_irreducible_markov(cycle).irreducible);

    // Edges at or below the support threshold are ignored.
    StochasticMatrix weak;
    weak.entries.resize(2, 2);
    weak.entries << 1.0, 1e-12, 0.0, 1.0 - 1e-12;
    CHECK_FALSE(is_irreducible_markov(weak).irreducible);
    CHECK(is_irreducible_markov(weak, 1e-13).closed_classes.size() == 1);
}

TEST_CASE("transition matrices are stochastic and basis covariant", "[channel_markov][property]") {
    Rng rng(54);
    for (int rep = 0; rep < 60; ++rep) {
        const LindbladSystem sys = random_mixed_system(rng);
        const Eigen::Index d = sys.dim;
        const QuantumChannel ch = channel_from_liouvillian(sys, 1.0);
        const ComplexMatrix u = random_unitary(d, rng);
        const StochasticMatrix p = classical_transition_matrix(ch, u);
        CHECK((p.entries.colwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-10);
        CHECK(p.entries.minCoeff() >= 0.0);
        CHECK(p.entries.maxCoeff() <= 1.0);

        const ComplexMatrix rot = superoperator_of(d, [&](const ComplexMatrix& x) {
            return ComplexMatrix(u.adjoint() * ch.apply(ComplexMatrix(u * x * u.adjoint())) * u);
        });
        const StochasticMatrix q = classical_transition_matrix(channel_of(d, rot), identity(d));
        CHECK((p.entries - q.entries).cwiseAbs().maxCoeff() <= 1e-10);
    }
    CHECK_THROWS_AS(classical_transition_matrix(channel_from_liouvillian(make_preset("lind1101"), 1.0), 2.0 * identity(2)),
                    std::invalid_argument);
}

TEST_CASE("semigroup property", "[channel_markov][property]") {
    Rng rng(55);
    for (int rep = 0; rep < 40; ++rep) {
        const LindbladSystem sys = random_mixed_system(rng);
        const double t1 = std::uniform_real_distribution<double>(0.05, 1.5)(rng);
        const double t2 = std::uniform_real_distribution<double>(0.05, 1.5)(rng);
        const ComplexMatrix a = channel_from_liouvillian(sys, t1).matrix;
        const ComplexMatrix b = channel_from_liouvillian(sys, t2).matrix;
        const ComplexMatrix c = channel_from_liouvillian(sys, t1 + t2).matrix;
        CHECK((a * b - c).norm() <= 1e-8);
    }
}

TEST_CASE("Haar unitaries", "[channel_markov]") {
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        const ComplexMatrix u = haar_unitary(4, seed);
        CHECK((u.adjoint() * u - identity(4)).norm() <= 1e-12);
        CHECK(haar_unitary(4, seed) == u);
    }
    CHECK((haar_unitary(3, 5) - haar_unitary(3, 6)).norm() > 1e-3);
}

TEST_CASE("adapted basis spans the projection first", "[channel_markov]") {
    Rng rng(56);
    const ComplexMatrix v = orthonormal_columns(gaussian(4, 2, rng));
    const ComplexMatrix p = projector_onto(v, 4);
    const ComplexMatrix b = adapted_basis(p);
    CHECK((b.adjoint() * b - identity(4)).norm() <= 1e-10);
    CHECK((p * b.leftCols(2) - b.leftCols(2)).norm() <= 1e-10);
    CHECK((p * b.rightCols(2)).norm() <= 1e-10);
}

TEST_CASE("probe never reports a witness for irreducible examples", "[channel_markov][property]") {
    std::vector<LindbladSystem> systems = {make_preset("lind1101"), make_preset("loss-gain"),
                                           make_preset("ising-boundary"), make_preset("xx-max")};
    for (double h : {0.5, 1.0, 2.0}) systems.push_back(make_preset("lindsphsx", PresetParams{.h = h}));
    for (const auto& sys : systems) {
        REQUIRE(check_davies_algebra(sys).verdict == DaviesVerdict::Irreducible);
        const ProbeReport r = basis_probe(sys, 1.0, 8, 2024);
        CHECK_FALSE(r.witness_found);
        CHECK(r.verdict() == "no_witness");
        CHECK(r.outcomes.size() == 9);
    }
}

TEST_CASE("adapted basis finds a witness the others may miss", "[channel_markov]") {
    Rng rng(57);
    for (int rep = 0; rep < 20; ++rep) {
        const LindbladSystem sys = random_invariant_subspace_system(3, 1, rng);
        const auto w = find_reducing_projection(sys);
        REQUIRE(w);
        const ProbeReport r = basis_probe(sys, 1.0, 2, 9, w->projection);
        CHECK(r.witness_found);
        REQUIRE(r.outcomes.size() == 4);
        CHECK(r.outcomes.back().basis == "adapted");
        CHECK_FALSE(r.outcomes.back().irreducible);
    }
    CHECK_THROWS_AS(basis_probe(make_preset("lind1101"), 1.0, 0, 1), std::invalid_argument);
}

TEST_CASE("DOT export", "[channel_markov]") {
    StochasticMatrix one;
    one.entries = Eigen::MatrixXd::Ones(1, 1);
    CHECK(export_dot(one) == "digraph markov {\n  \"b0\";\n  \"b0\" -> \"b0\" [label=\"1\"];\n}\n");
    CHECK(export_dot(one, 1.1) == "digraph markov {\n  \"b0\";\n}\n");

    const QuantumChannel ch = channel_from_liouvillian(two_site_ferromagnet(), 0.5 * std::log(2.0));
    StochasticMatrix p = classical_transition_matrix(ch, computational(4));
    p.labels = {"uu", "ud", "du", "dd"};
    const std::string dot = export_dot(p);
    CHECK(dot.find("\"ud\" -> \"uu\" [label=\"0.25\"]") != std::string::npos);
    CHECK(dot.find("\"ud\" -> \"ud\" [label=\"0.5\"]") != std::string::npos);
    CHECK(dot.find("\"uu\" -> \"uu\" [label=\"1\"]") != std::string::npos);
    CHECK(dot.find("\"uu\" -> \"ud\"") == std::string::npos);
    CHECK(export_dot(p) == dot);
}
