#ifndef DAVIES_TOOLS_CLI_HPP
#define DAVIES_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "davies/channel_markov.hpp"
#include "davies/irreducibility.hpp"

namespace davies::cli {

enum ExitCode : int { kIrreducible = 0, kReducible = 1, kFailure = 2, kParseError = 3 };

/// Runs one command line (without argv[0]); returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// JSON views of library results; complex numbers are [re, im] pairs.
nlohmann::ordered_json to_json(const ComplexMatrix& m);
nlohmann::ordered_json to_json(const ReducibilityReport& r);
nlohmann::ordered_json to_json(const ProbeReport& r);

}  // namespace davies::cli

#endif
