#pragma once

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace CLI {
class App;
}

namespace censorlab::cli {

/// Flag combinations CLI11 cannot express on its own. Maps to exit code 2.
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Check failures reported by a command that otherwise ran. Maps to exit code 3.
class VerificationFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Command {
    CLI::App* app;
    std::function<void(std::ostream& out)> run;
};

/// Add every subcommand to `app`. Option storage is owned by the returned runners.
std::vector<Command> register_commands(CLI::App& app);

}  // namespace censorlab::cli
