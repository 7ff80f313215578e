#ifndef DAVIES_TOOLS_CONFIG_HPP
#define DAVIES_TOOLS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "davies/models.hpp"

namespace davies::cli {

/// Malformed configuration or command line; maps to exit code 3.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExplicitModel {
    ComplexMatrix hamiltonian;
    std::vector<ComplexMatrix> lindblads;
};

/**
 * Model selection: exactly one of `preset` / `explicit_model`.
 *
 *   {"preset": "xx-max", "params": {"n": 3, "h": 0.5},
 *    "tolerances": {"rank_rel": 1e-9}, "seed": 7}
 *   {"explicit": {"dim": 2, "hamiltonian": [[[0,0],[1,0]], [[1,0],[0,0]]],
 *                 "lindblads": [[[[0,0],[1,0]], [[0,0],[0,0]]]]}}
 *
 * Complex entries are [re, im] pairs; matrices are lists of rows.
 */
struct ModelConfig {
    std::optional<std::string> preset;
    PresetParams params;
    std::optional<ExplicitModel> explicit_model;
    ToleranceConfig tolerances;
    std::optional<std::uint64_t> seed;

    std::string describe() const;
};

ComplexMatrix parse_complex_matrix(const nlohmann::json& j, const std::string& what);

ModelConfig parse_config(const nlohmann::json& j);
ModelConfig load_config_file(const std::string& path);

/// Throws ConfigError for unknown presets or inconsistent explicit models.
LindbladSystem build_system(const ModelConfig& cfg);

}  // namespace davies::cli

#endif
