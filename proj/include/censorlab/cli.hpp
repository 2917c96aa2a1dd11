#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace censorlab::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitSolverFailure = 1,
    kExitUsage = 2,
    kExitVerificationFailure = 3,
};

/// Run the command line `args` (without the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

enum class SweepScale { Linear, Log };

/// A 1-D parameter sweep written as "variable:start:stop:points[:linear|log]".
struct SweepSpec {
    std::string variable;
    double start;
    double stop;
    int points;
    SweepScale scale = SweepScale::Linear;

    [[nodiscard]] std::vector<double> values() const;
};

/// Throws std::invalid_argument on malformed text or if points < 2,
/// start >= stop, or a log sweep starts at a non-positive value.
/// `allowed` lists the accepted variable names; empty accepts any.
[[nodiscard]] SweepSpec parse_sweep(std::string_view text,
                                    const std::vector<std::string>& allowed = {});

}  // namespace censorlab::cli
