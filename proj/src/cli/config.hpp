#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace CLI {
class App;
}

namespace censorlab::cli {

/// key=value pairs in file order. Keys are option long names without dashes.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Value of --config PATH or --config=PATH, if present.
std::optional<std::string> find_config_path(const std::vector<std::string>& args);

/// Parse a key=value file. Blank lines and lines starting with '#' or ';' are
/// skipped. Throws std::invalid_argument naming the path and line on error.
ConfigEntries load_config(const std::string& path);

/// Install each entry as the default of every subcommand option with that long
/// name, so command-line flags still take precedence. Throws
/// std::invalid_argument for keys no subcommand accepts or values that fail
/// the option's validation.
void apply_config(CLI::App& app, const ConfigEntries& entries);

}  // namespace censorlab::cli
