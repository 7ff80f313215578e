#include "config.hpp"

#include <fstream>
#include <sstream>

namespace davies::cli {

using nlohmann::json;

namespace {

double number(const json& j, const std::string& what) {
    if (!j.is_number()) throw ConfigError(what + ": expected a number");
    return j.get<double>();
}

Complex complex_entry(const json& j, const std::string& what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw ConfigError(what + ": complex entries must be [re, im] pairs");
    return {number(j[0], what), number(j[1], what)};
}

void read_tolerances(const json& j, ToleranceConfig& tol) {
    if (!j.is_object()) throw ConfigError("tolerances: expected an object");
    const std::pair<const char*, double*> fields[] = {
        {"orthonormality", &tol.orthonormality}, {"hermiticity", &tol.hermiticity}, {"psd", &tol.psd},
        {"rank_rel", &tol.rank_rel},             {"rank_abs", &tol.rank_abs},       {"residual", &tol.residual},
        {"eig", &tol.eig},                       {"support", &tol.support},
    };
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const auto& [name, slot] : fields) {
            if (key == name) {
                const double v = number(value, "tolerances." + key);
                if (!(v > 0.0)) throw ConfigError("tolerances." + key + ": must be positive");
                *slot = v;
                known = true;
            }
        }
        if (!known) throw ConfigError("tolerances: unknown field '" + key + "'");
    }
}

void read_params(const json& j, PresetParams& p) {
    if (!j.is_object()) throw ConfigError("params: expected an object");
    for (const auto& [key, value] : j.items()) {
        if (key == "n") {
            if (!value.is_number_integer()) throw ConfigError("params.n: expected an integer");
            p.n = value.get<int>();
        } else if (key == "h") {
            p.h = number(value, "params.h");
        } else if (key == "j") {
            p.j = number(value, "params.j");
        } else if (key == "delta") {
            p.delta = number(value, "params.delta");
        } else if (key == "gp") {
            p.gp = number(value, "params.gp");
        } else if (key == "gm") {
            p.gm = number(value, "params.gm");
        } else {
            throw ConfigError("params: unknown field '" + key + "'");
        }
    }
}

}  // namespace

ComplexMatrix parse_complex_matrix(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw ConfigError(what + ": expected a non-empty list of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    ComplexMatrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) throw ConfigError(what + ": matrix must be square");
        for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = complex_entry(row[static_cast<std::size_t>(c)], what);
    }
    return m;
}

std::string ModelConfig::describe() const {
    if (preset) return "preset " + normalize_preset_name(*preset);
    return "explicit model";
}

ModelConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    ModelConfig cfg;
    const bool has_preset = j.contains("preset");
    const bool has_explicit = j.contains("explicit");
    if (has_preset == has_explicit) throw ConfigError("config: exactly one of 'preset' and 'explicit' is required");

    for (const auto& [key, value] : j.items()) {
        if (key == "preset") {
            if (!value.is_string()) throw ConfigError("preset: expected a string");
            cfg.preset = value.get<std::string>();
        } else if (key == "params") {
            read_params(value, cfg.params);
        } else if (key == "explicit") {
            if (!value.is_object()) throw ConfigError("explicit: expected an object");
            if (!value.contains("hamiltonian") || !value.contains("lindblads")) {
                throw ConfigError("explicit: 'hamiltonian' and 'lindblads' are required");
            }
            ExplicitModel m;
            m.hamiltonian = parse_complex_matrix(value["hamiltonian"], "explicit.hamiltonian");
            const json& ls = value["lindblads"];
            if (!ls.is_array()) throw ConfigError("explicit.lindblads: expected a list of matrices");
            for (std::size_t k = 0; k < ls.size(); ++k) {
                m.lindblads.push_back(parse_complex_matrix(ls[k], "explicit.lindblads[" + std::to_string(k) + "]"));
            }
            if (value.contains("dim")) {
                if (!value["dim"].is_number_integer()) throw ConfigError("explicit.dim: expected an integer");
                if (value["dim"].get<Eigen::Index>() != m.hamiltonian.rows()) {
                    throw ConfigError("explicit.dim: does not match the Hamiltonian");
                }
            }
            for (const auto& l : m.lindblads) {
                if (l.rows() != m.hamiltonian.rows()) throw ConfigError("explicit: Lindblad and Hamiltonian dimensions differ");
            }
            cfg.explicit_model = std::move(m);
        } else if (key == "tolerances") {
            read_tolerances(value, cfg.tolerances);
        } else if (key == "seed") {
            if (!value.is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
            cfg.seed = value.get<std::uint64_t>();
        } else {
            throw ConfigError("config: unknown field '" + key + "'");
        }
    }
    return cfg;
}

ModelConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return parse_config(j);
}

LindbladSystem build_system(const ModelConfig& cfg) {
    try {
        if (cfg.preset) return make_preset(*cfg.preset, cfg.params);
        if (!cfg.explicit_model) throw ConfigError("config: no model selected");
        LindbladSystem sys(cfg.explicit_model->hamiltonian, cfg.explicit_model->lindblads);
        sys.validate(cfg.tolerances.hermiticity);
        return sys;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace davies::cli
