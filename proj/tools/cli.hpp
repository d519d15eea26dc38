// cli.hpp — Command dispatch for the qtf executable
//
// Every subcommand reads JSON inputs, builds a JSON report and renders it
// either as JSON (--json) or as an aligned text table. The dispatch lives in a
// library so tests can drive it in-process.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qtf/errors.hpp"

namespace qtf::cli {

using ojson = nlohmann::ordered_json;

enum class Command { kEntropy, kEquilibrium, kGenerator, kEvolve, kClassical, kVerify, kReplay };

enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 2,
    kExitValidation = 3,
    kExitVerification = 4,
};

struct RunConfig {
    Command command = Command::kReplay;
    std::vector<std::string> inputs;
    std::optional<double> t;
    std::uint64_t seed = 0;
    int samples = 100;
    bool dual = false;
    bool json = false;
    std::optional<long> heat;
    std::optional<double> tolerance;
    std::optional<std::string> out;
};

struct Outcome {
    ojson report;
    int code = kExitOk;
};

int exit_code(ErrorKind kind);

/// Runs one command. Throws qtf::Error for invalid inputs.
Outcome execute(const RunConfig& config);

/// Paper-value replay of the three embedded worked examples. A tolerance
/// override replaces every per-quantity tolerance.
Outcome replay_examples(std::optional<double> tolerance);

/// Aligned text rendering with 6 significant digits.
std::string render_table(const ojson& report);

/// Full command line (argv[0] included). Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qtf::cli
