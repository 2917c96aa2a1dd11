#include "cli/config.hpp"

#include <fstream>
#include <stdexcept>

#include "CLI11.hpp"

namespace censorlab::cli {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
    static const std::string kFlag = "--config";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == kFlag && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind(kFlag + "=", 0) == 0) return args[i].substr(kFlag.size() + 1);
    }
    return std::nullopt;
}

ConfigEntries load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    ConfigEntries entries;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        const std::string text = trim(line);
        if (text.empty() || text.front() == '#' || text.front() == ';') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key=value");
        }
        std::string key = trim(text.substr(0, eq));
        while (!key.empty() && key.front() == '-') key.erase(0, 1);
        std::string value = trim(text.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (key.empty()) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
        }
        entries.emplace_back(std::move(key), std::move(value));
    }
    return entries;
}

void apply_config(CLI::App& app, const ConfigEntries& entries) {
    for (const auto& [key, value] : entries) {
        bool used = false;
        for (CLI::App* sub : app.get_subcommands({})) {
            CLI::Option* opt = sub->get_option_no_throw("--" + key);
            if (opt == nullptr) continue;
            try {
                opt->default_val(value);
            } catch (const CLI::Error& e) {
                throw std::invalid_argument("config key " + key + ": " + e.what());
            }
            used = true;
        }
        if (!used) throw std::invalid_argument("unknown config key: " + key);
    }
}

}  // namespace censorlab::cli
