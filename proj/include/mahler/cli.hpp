#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mahler::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInputError = 2,
    kToleranceNotMet = 3,
};

/// Options shared by every subcommand.
struct CliConfig {
    double tol = 1e-9;
    /// QMC points per randomization; sublevel sampling uses 10^6 unless set.
    std::uint64_t samples = std::uint64_t{1} << 16;
    bool samples_given = false;
    int randomizations = 16;
    std::uint64_t seed = 42;
    std::string format = "json";
    std::string output;
};

struct SubcommandInfo {
    std::string_view name;
    std::string_view summary;
    /// Library operations this subcommand exposes; each operation belongs to
    /// exactly one subcommand.
    std::vector<std::string_view> operations;
};

const std::vector<SubcommandInfo>& subcommand_registry();

/// Runs the command line `args` (program name excluded). The report goes to
/// `out` (or the --output file), diagnostics to `err`. Returns an ExitCode.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace mahler::cli
