#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"

namespace davies::cli {

using nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt(Complex z) {
    if (z.imag() == 0.0) return fmt(z.real());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
    return buf;
}

// Rounds away signed zeros and values below 1e-15 so the printout is stable.
double clean(double v) { return std::abs(v) < 1e-15 ? 0.0 : v; }

void print_matrix(std::ostream& out, const ComplexMatrix& m, const std::string& indent) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out << indent;
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out << (c ? "  " : "") << fmt(Complex(clean(m(r, c).real()), clean(m(r, c).imag())));
        }
        out << "\n";
    }
}

ordered_json complex_json(Complex z) { return ordered_json::array({clean(z.real()), clean(z.imag())}); }

ordered_json real_list(const std::vector<double>& v) {
    ordered_json out = ordered_json::array();
    for (double x : v) out.push_back(x);
    return out;
}

Eigen::Index projection_rank(const ComplexMatrix& p) { return static_cast<Eigen::Index>(std::llround(p.trace().real())); }

std::vector<std::string> computational_labels(Eigen::Index d) {
    int n = 0;
    while ((Eigen::Index{1} << n) < d) ++n;
    std::vector<std::string> out;
    if ((Eigen::Index{1} << n) != d || n == 0) return out;
    for (Eigen::Index i = 0; i < d; ++i) {
        std::string s;
        for (int b = n - 1; b >= 0; --b) s += ((i >> b) & 1) ? 'd' : 'u';
        out.push_back(s);
    }
    return out;
}

struct Options {
    bool json = false;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::string preset;
    std::string config;
    PresetParams params;
    double t = 1.0;
    std::string basis = "computational";
    bool probe = false;
    double threshold = -1.0;
};

struct Context {
    ModelConfig cfg;
    LindbladSystem sys;
    ToleranceConfig tol;
    std::uint64_t seed = 0;
};

Context make_context(const Options& o) {
    const bool has_preset = !o.preset.empty();
    const bool has_config = !o.config.empty();
    if (has_preset == has_config) throw ConfigError("exactly one of --preset and --config is required");
    Context ctx;
    if (has_config) {
        ctx.cfg = load_config_file(o.config);
    } else {
        ctx.cfg.preset = o.preset;
    }
    auto merge = [](auto& slot, const auto& v) {
        if (v) slot = v;
    };
    merge(ctx.cfg.params.h, o.params.h);
    merge(ctx.cfg.params.j, o.params.j);
    merge(ctx.cfg.params.delta, o.params.delta);
    merge(ctx.cfg.params.gp, o.params.gp);
    merge(ctx.cfg.params.gm, o.params.gm);
    merge(ctx.cfg.params.n, o.params.n);
    if (o.tol) {
        if (!(*o.tol > 0.0)) throw ConfigError("--tol must be positive");
        ctx.cfg.tolerances.rank_rel = *o.tol;
    }
    if (o.seed) ctx.cfg.seed = o.seed;
    ctx.sys = build_system(ctx.cfg);
    ctx.tol = ctx.cfg.tolerances;
    ctx.seed = ctx.cfg.seed.value_or(0);
    return ctx;
}

ordered_json header(const std::string& command, const Context& ctx) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = command;
    j["model"] = ctx.cfg.describe();
    j["dim"] = ctx.sys.dim;
    j["lindblad_count"] = ctx.sys.lindblads.size();
    return j;
}

void text_header(std::ostream& out, const Context& ctx) {
    const std::size_t nl = ctx.sys.lindblads.size();
    out << "model: " << ctx.cfg.describe() << " (d = " << ctx.sys.dim << ", " << nl << " Lindblad operator"
        << (nl == 1 ? "" : "s") << ")\n";
}

double conservation_residual(const LindbladSystem& sys, const ComplexMatrix& p) {
    return adjoint_superoperator(sys).apply(p).norm();
}

// ---------------------------------------------------------------------------

void print_report_text(std::ostream& out, const ReducibilityReport& r, const LindbladSystem& sys) {
    const Eigen::Index d2 = r.dim * r.dim;
    out << "davies algebra:  " << to_string(r.davies_algebra_verdict) << " (algebra_dim " << r.algebra_dim << "/" << d2
        << ")\n";
    out << "davies steady:   " << to_string(r.davies_steady_verdict) << " (null_dim " << r.null_dim << ", support_rank "
        << r.support_rank << "/" << r.dim << ")\n";
    out << "evans:           " << to_string(r.evans_verdict) << " (commutant_dim " << r.evans_commutant_dim << ")\n";
    out << "frigerio 1:      "
        << (r.frigerio1.applicable ? (r.frigerio1.conclusion ? "applicable, unique steady state" : "applicable") : "not applicable")
        << "\n";
    out << "frigerio 2:      "
        << (r.frigerio2.applicable ? (r.frigerio2.conclusion ? "applicable, irreducible" : "applicable") : "not applicable") << "\n";
    if (r.reducing_projection) {
        const auto& w = *r.reducing_projection;
        out << "reducing projection: rank " << projection_rank(w.projection) << " via " << to_string(w.source)
            << ", max residual " << fmt(w.check.max_residual()) << "\n";
        print_matrix(out, w.projection, "  ");
    } else {
        out << "reducing projection: none\n";
    }
    if (r.conserved_projection) {
        out << "conserved projection: rank " << projection_rank(*r.conserved_projection) << ", ||L^dag(P)|| "
            << fmt(conservation_residual(sys, *r.conserved_projection)) << "\n";
        print_matrix(out, *r.conserved_projection, "  ");
    }
}

int cmd_check(const Context& ctx, const Options& o, std::ostream& out) {
    try {
        const ReducibilityReport r = analyze(ctx.sys, ctx.tol);
        if (o.json) {
            ordered_json j = header("check", ctx);
            const ordered_json body = to_json(r);
            for (const auto& [k, v] : body.items()) j[k] = v;
            if (r.conserved_projection) {
                j["evans"]["conservation_residual"] = conservation_residual(ctx.sys, *r.conserved_projection);
            }
            out << j.dump(2) << "\n";
        } else {
            text_header(out, ctx);
            print_report_text(out, r, ctx.sys);
            out << "verdict: " << to_string(r.davies_algebra_verdict) << "\n";
        }
        return r.davies_algebra_verdict == DaviesVerdict::Irreducible ? kIrreducible : kReducible;
    } catch (const CheckerDisagreement& e) {
        const ReducibilityReport& r = e.report();
        if (o.json) {
            ordered_json j = header("check", ctx);
            const ordered_json body = to_json(r);
            for (const auto& [k, v] : body.items()) j[k] = v;
            j["verdict"] = "disagreement";
            out << j.dump(2) << "\n";
        } else {
            text_header(out, ctx);
            print_report_text(out, r, ctx.sys);
            out << "verdict: disagreement (algebra " << to_string(r.davies_algebra_verdict) << ", steady "
                << to_string(r.davies_steady_verdict) << ")\n";
        }
        return kFailure;
    }
}

int cmd_steady(const Context& ctx, const Options& o, std::ostream& out) {
    const SteadyStateSet s = steady_states(ctx.sys, ctx.tol);
    if (o.json) {
        ordered_json j = header("steady", ctx);
        j["null_dim"] = s.null_dim;
        j["support_rank"] = s.support_rank;
        j["residual"] = s.residual;
        j["state"] = to_json(s.max_support_state);
        ordered_json ev = ordered_json::array();
        for (Eigen::Index i = 0; i < s.state_eigenvalues.size(); ++i) ev.push_back(clean(s.state_eigenvalues(i)));
        j["state_eigenvalues"] = ev;
        out << j.dump(2) << "\n";
    } else {
        text_header(out, ctx);
        out << "null_dim: " << s.null_dim << "\n";
        out << "support_rank: " << s.support_rank << "/" << ctx.sys.dim << "\n";
        out << "residual ||L(rho)||: " << fmt(s.residual) << "\n";
        out << "max-support steady state:\n";
        print_matrix(out, s.max_support_state, "  ");
    }
    return kIrreducible;
}

int cmd_spectrum(const Context& ctx, const Options& o, std::ostream& out) {
    const Spectrum s = spectrum(ctx.sys, ctx.tol);
    if (o.json) {
        ordered_json j = header("spectrum", ctx);
        ordered_json ev = ordered_json::array();
        for (Complex z : s.eigenvalues) ev.push_back(complex_json(z));
        j["eigenvalues"] = ev;
        j["kernel_dim"] = s.kernel_dim;
        j["gap"] = s.gap;
        j["relaxing"] = s.relaxing;
        out << j.dump(2) << "\n";
    } else {
        text_header(out, ctx);
        out << "kernel_dim: " << s.kernel_dim << "\n";
        out << "gap: " << fmt(s.gap) << "\n";
        out << "relaxing: " << (s.relaxing ? "yes" : "no") << "\n";
        out << "eigenvalues:\n";
        for (Complex z : s.eigenvalues) out << "  " << fmt(Complex(clean(z.real()), clean(z.imag()))) << "\n";
    }
    return kIrreducible;
}

int cmd_algebra(const Context& ctx, const Options& o, std::ostream& out) {
    const LindbladSystem& sys = ctx.sys;
    std::vector<ComplexMatrix> lk = sys.lindblads;
    lk.push_back(compute_K(sys));
    const AlgebraClosureResult alg = generate_algebra(lk, ctx.tol);

    std::vector<ComplexMatrix> l_only = sys.lindblads;
    std::vector<ComplexMatrix> evans;
    for (const auto& l : sys.lindblads) {
        evans.push_back(l);
        evans.push_back(l.adjoint());
    }
    evans.push_back(sys.hamiltonian);
    const Eigen::Index c_lk = commutant(lk, ctx.tol).dim;
    const Eigen::Index c_l = l_only.empty() ? sys.dim * sys.dim : commutant(l_only, ctx.tol).dim;
    const Eigen::Index c_evans = commutant(evans, ctx.tol).dim;
    const Eigen::Index d2 = sys.dim * sys.dim;

    if (o.json) {
        ordered_json j = header("algebra", ctx);
        j["algebra_dim"] = alg.dim;
        j["full_dim"] = d2;
        j["is_full"] = alg.is_full;
        j["rounds"] = alg.rounds;
        j["commutant_dims"] = {{"L,K", c_lk}, {"L", c_l}, {"L,L^dag,H", c_evans}};
        out << j.dump(2) << "\n";
    } else {
        text_header(out, ctx);
        out << "algebra generated by {L, K}: dim " << alg.dim << "/" << d2 << (alg.is_full ? " (full)" : "") << ", "
            << alg.rounds << " rounds\n";
        out << "commutant dims: {L, K} " << c_lk << ", {L} " << c_l << ", {L, L^dag, H} " << c_evans << "\n";
    }
    return alg.is_full ? kIrreducible : kReducible;
}

struct NamedBasis {
    std::string name;
    ComplexMatrix unitary;
    std::vector<std::string> labels;
};

std::vector<NamedBasis> parse_bases(const std::string& spec, const Context& ctx) {
    const Eigen::Index d = ctx.sys.dim;
    if (spec == "computational") return {{"computational", identity(d), computational_labels(d)}};
    if (spec.rfind("random:", 0) == 0) {
        int k = 0;
        try {
            std::size_t used = 0;
            k = std::stoi(spec.substr(7), &used);
            if (used != spec.size() - 7) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("--basis random:<k> needs an integer k");
        }
        if (k < 1) throw ConfigError("--basis random:<k> needs k >= 1");
        std::vector<NamedBasis> out;
        for (int i = 0; i < k; ++i) {
            out.push_back({"haar:" + std::to_string(i), haar_unitary(d, ctx.seed + static_cast<std::uint64_t>(i)), {}});
        }
        return out;
    }
    if (spec.rfind("file:", 0) == 0) {
        const std::string path = spec.substr(5);
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open basis file '" + path + "'");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("basis file: ") + e.what());
        }
        const nlohmann::json& m = j.is_object() && j.contains("basis") ? j["basis"] : j;
        ComplexMatrix u = parse_complex_matrix(m, "basis file");
        if (u.rows() != d) throw ConfigError("basis file: dimension does not match the model");
        std::vector<std::string> labels;
        if (j.is_object() && j.contains("labels")) {
            for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
        }
        return {{"file", std::move(u), std::move(labels)}};
    }
    throw ConfigError("--basis must be computational, random:<k> or file:<path>");
}

int cmd_markov(const Context& ctx, const Options& o, std::ostream& out) {
    const double threshold = o.threshold >= 0.0 ? o.threshold : ctx.tol.support;
    if (o.probe) {
        int trials = 4;
        if (o.basis.rfind("random:", 0) == 0) trials = static_cast<int>(parse_bases(o.basis, ctx).size());
        std::optional<ComplexMatrix> p;
        if (auto w = find_reducing_projection(ctx.sys, ctx.tol)) p = w->projection;
        const ProbeReport rep = basis_probe(ctx.sys, o.t, trials, ctx.seed, p, ctx.tol);
        if (o.json) {
            ordered_json j = header("markov", ctx);
            j["probe"] = to_json(rep);
            out << j.dump(2) << "\n";
        } else {
            text_header(out, ctx);
            for (const auto& oc : rep.outcomes) {
                out << "basis " << oc.basis << ": " << (oc.irreducible ? "irreducible" : "reducible") << "\n";
            }
            out << "probe verdict: " << rep.verdict() << "\n";
        }
        return rep.witness_found ? kReducible : kIrreducible;
    }

    const QuantumChannel ch = channel_from_liouvillian(ctx.sys, o.t, ctx.tol);
    bool any_reducible = false;
    ordered_json bases = ordered_json::array();
    if (!o.json) text_header(out, ctx);
    for (auto& b : parse_bases(o.basis, ctx)) {
        StochasticMatrix p = classical_transition_matrix(ch, b.unitary, ctx.tol);
        p.labels = b.labels;
        const MarkovConnectivity mc = is_irreducible_markov(p, threshold);
        any_reducible = any_reducible || !mc.irreducible;
        const std::string dot = export_dot(p, threshold);
        if (o.json) {
            ordered_json jb;
            jb["basis"] = b.name;
            jb["irreducible"] = mc.irreducible;
            jb["components"] = mc.components;
            jb["closed_classes"] = mc.closed_classes;
            ordered_json abs = ordered_json::array();
            for (Eigen::Index a : mc.absorbing) abs.push_back(p.label(a));
            jb["absorbing"] = abs;
            ordered_json rows = ordered_json::array();
            for (Eigen::Index i = 0; i < p.size(); ++i) {
                ordered_json row = ordered_json::array();
                for (Eigen::Index k = 0; k < p.size(); ++k) row.push_back(clean(p.entries(i, k)));
                rows.push_back(row);
            }
            jb["matrix"] = rows;
            jb["dot"] = dot;
            bases.push_back(jb);
        } else {
            out << "basis " << b.name << ": " << (mc.irreducible ? "irreducible" : "reducible");
            if (!mc.absorbing.empty()) {
                out << "; absorbing";
                for (Eigen::Index a : mc.absorbing) out << " " << p.label(a);
            }
            out << "\n" << dot;
        }
    }
    if (o.json) {
        ordered_json j = header("markov", ctx);
        j["t"] = o.t;
        j["seed"] = ctx.seed;
        j["bases"] = bases;
        out << j.dump(2) << "\n";
    }
    return any_reducible ? kReducible : kIrreducible;
}

int cmd_kraus(const Context& ctx, const Options& o, std::ostream& out) {
    const QuantumChannel ch = channel_from_liouvillian(ctx.sys, o.t, ctx.tol);
    const KrausSet ks = kraus_from_choi(choi_matrix(ch), ctx.tol);
    const double round_trip = (channel_from_kraus(ks).matrix - ch.matrix).norm();
    const double completeness = ks.completeness_residual();
    if (o.json) {
        ordered_json j = header("kraus", ctx);
        j["t"] = o.t;
        j["kraus_count"] = ks.operators.size();
        j["completeness_residual"] = completeness;
        j["round_trip_residual"] = round_trip;
        ordered_json ops = ordered_json::array();
        for (const auto& m : ks.operators) ops.push_back(to_json(m));
        j["operators"] = ops;
        out << j.dump(2) << "\n";
    } else {
        text_header(out, ctx);
        out << "t: " << fmt(o.t) << "\n";
        out << "kraus operators: " << ks.operators.size() << "\n";
        out << "completeness residual: " << fmt(completeness) << "\n";
        out << "round-trip residual: " << fmt(round_trip) << "\n";
        for (std::size_t k = 0; k < ks.operators.size(); ++k) {
            out << "M" << k << ":\n";
            print_matrix(out, ks.operators[k], "  ");
        }
    }
    return kIrreducible;
}

int cmd_dark_states(const Context& ctx, const Options& o, std::ostream& out) {
    const std::vector<DarkStateReport> ds = find_dark_states(ctx.sys, ctx.tol);
    if (o.json) {
        ordered_json j = header("dark-states", ctx);
        ordered_json arr = ordered_json::array();
        for (const auto& r : ds) {
            ordered_json e;
            ordered_json st = ordered_json::array();
            for (Eigen::Index i = 0; i < r.state.size(); ++i) st.push_back(complex_json(r.state(i)));
            e["state"] = st;
            ordered_json lev = ordered_json::array();
            for (Complex z : r.lindblad_eigenvalues) lev.push_back(complex_json(z));
            e["lindblad_eigenvalues"] = lev;
            e["k_eigenvalue"] = complex_json(r.k_eigenvalue);
            e["residuals"] = real_list(r.residuals);
            e["liouvillian_residual"] = r.liouvillian_residual;
            arr.push_back(e);
        }
        j["dark_states"] = arr;
        out << j.dump(2) << "\n";
    } else {
        text_header(out, ctx);
        out << "dark states: " << ds.size() << "\n";
        for (std::size_t k = 0; k < ds.size(); ++k) {
            const auto& r = ds[k];
            out << "psi" << k << ":";
            for (Eigen::Index i = 0; i < r.state.size(); ++i) {
                out << " " << fmt(Complex(clean(r.state(i).real()), clean(r.state(i).imag())));
            }
            out << "\n  K eigenvalue " << fmt(r.k_eigenvalue) << ", ||L(psi psi^dag)|| " << fmt(r.liouvillian_residual)
                << "\n";
        }
    }
    return ds.empty() ? kIrreducible : kReducible;
}

}  // namespace

ordered_json to_json(const ComplexMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

ordered_json to_json(const ReducibilityReport& r) {
    ordered_json j;
    j["verdict"] = to_string(r.davies_algebra_verdict);
    j["davies"] = {
        {"algebra", {{"verdict", to_string(r.davies_algebra_verdict)}, {"algebra_dim", r.algebra_dim}}},
        {"steady",
         {{"verdict", to_string(r.davies_steady_verdict)}, {"null_dim", r.null_dim}, {"support_rank", r.support_rank}}},
        {"agree", r.checkers_agree()},
    };
    if (r.reducing_projection) {
        const auto& w = *r.reducing_projection;
        j["reducing_projection"] = {
            {"rank", projection_rank(w.projection)},
            {"source", to_string(w.source)},
            {"lindblad_residuals", real_list(w.check.lindblad_residuals)},
            {"k_residual", w.check.k_residual},
            {"matrix", to_json(w.projection)},
        };
    } else {
        j["reducing_projection"] = nullptr;
    }
    ordered_json ev;
    ev["verdict"] = to_string(r.evans_verdict);
    ev["commutant_dim"] = r.evans_commutant_dim;
    if (r.conserved_projection) {
        ev["conserved_projection"] = to_json(*r.conserved_projection);
    } else {
        ev["conserved_projection"] = nullptr;
    }
    j["evans"] = ev;
    j["frigerio1"] = {{"applicable", r.frigerio1.applicable}, {"conclusion", r.frigerio1.conclusion}};
    j["frigerio2"] = {{"applicable", r.frigerio2.applicable}, {"conclusion", r.frigerio2.conclusion}};
    return j;
}

ordered_json to_json(const ProbeReport& r) {
    ordered_json j;
    j["verdict"] = r.verdict();
    if (r.witness_basis_index) {
        j["witness_basis_index"] = *r.witness_basis_index;
    } else {
        j["witness_basis_index"] = nullptr;
    }
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["t"] = r.t;
    ordered_json outcomes = ordered_json::array();
    for (const auto& oc : r.outcomes) outcomes.push_back({{"basis", oc.basis}, {"irreducible", oc.irreducible}});
    j["outcomes"] = outcomes;
    return j;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Irreducibility checks for Lindblad open quantum systems", "davies"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1, 1);
    app.fallthrough();

    Options o;
    app.add_flag("--json", o.json, "Machine-readable JSON output");
    app.add_option("--tol", o.tol, "Relative rank tolerance");
    app.add_option("--seed", o.seed, "Seed for random bases");
    auto* preset = app.add_option("--preset", o.preset, "Named model");
    auto* config = app.add_option("--config", o.config, "JSON model file")->check(CLI::ExistingFile);
    preset->excludes(config);
    app.add_option("--h", o.params.h, "Field strength");
    app.add_option("--j", o.params.j, "Coupling");
    app.add_option("--delta", o.params.delta, "Anisotropy");
    app.add_option("--gp", o.params.gp, "Gain rate");
    app.add_option("--gm", o.params.gm, "Loss rate");
    app.add_option("--n", o.params.n, "Number of sites");

    using Handler = int (*)(const Context&, const Options&, std::ostream&);
    const std::pair<const char*, std::pair<const char*, Handler>> commands[] = {
        {"check", {"Run every checker and report the verdict", cmd_check}},
        {"steady", {"Steady-state kernel and maximal-support state", cmd_steady}},
        {"spectrum", {"Liouvillian eigenvalues", cmd_spectrum}},
        {"algebra", {"Algebra generated by {L, K} and commutant dimensions", cmd_algebra}},
        {"markov", {"Classical Markov chains of the channel exp(t L)", cmd_markov}},
        {"kraus", {"Kraus decomposition of exp(t L)", cmd_kraus}},
        {"dark-states", {"Common eigenvectors of {L, K}", cmd_dark_states}},
    };
    std::vector<std::pair<CLI::App*, Handler>> subs;
    for (const auto& [name, info] : commands) {
        CLI::App* sub = app.add_subcommand(name, info.first);
        const std::string n = name;
        if (n == "markov" || n == "kraus") {
            sub->add_option("--t", o.t, "Channel time")->check(CLI::PositiveNumber);
        }
        if (n == "markov") {
            sub->add_option("--basis", o.basis, "computational | random:<k> | file:<path>");
            sub->add_flag("--probe", o.probe, "One-sided witness search over several bases");
            sub->add_option("--threshold", o.threshold, "Edge threshold");
        }
        subs.emplace_back(sub, info.second);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o_out, o_err;
        const int code = app.exit(e, o_out, o_err);
        out << o_out.str();
        err << o_err.str();
        return code == 0 ? 0 : kParseError;
    }

    try {
        const Context ctx = make_context(o);
        for (const auto& [sub, handler] : subs) {
            if (sub->parsed()) return handler(ctx, o, out);
        }
        return kParseError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace davies::cli
