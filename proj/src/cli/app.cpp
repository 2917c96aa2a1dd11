#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "censorlab/cli.hpp"
#include "censorlab/params.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace censorlab::cli {
namespace {

double parse_double(std::string_view text) {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: " + s);
    }
    if (used != s.size()) throw std::invalid_argument("not a number: " + s);
    return v;
}

}  // namespace

std::vector<double> SweepSpec::values() const {
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        out[i] = scale == SweepScale::Log
                     ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                     : start + f * (stop - start);
    }
    // Pin the end points against rounding in the interpolation.
    out.front() = start;
    out.back() = stop;
    return out;
}

SweepSpec parse_sweep(std::string_view text, const std::vector<std::string>& allowed) {
    std::vector<std::string_view> parts;
    for (std::size_t pos = 0;;) {
        const auto next = text.find(':', pos);
        parts.push_back(text.substr(pos, next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    if (parts.size() != 4 && parts.size() != 5) {
        throw std::invalid_argument("expected variable:start:stop:points[:linear|log]");
    }
    SweepSpec spec{std::string(parts[0]), parse_double(parts[1]), parse_double(parts[2]), 0};
    if (!allowed.empty() &&
        std::find(allowed.begin(), allowed.end(), spec.variable) == allowed.end()) {
        throw std::invalid_argument("unsupported sweep variable " + spec.variable);
    }
    const auto& p = parts[3];
    const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), spec.points);
    if (ec != std::errc() || ptr != p.data() + p.size()) {
        throw std::invalid_argument("points must be an integer");
    }
    if (parts.size() == 5) {
        if (parts[4] == "log") {
            spec.scale = SweepScale::Log;
        } else if (parts[4] != "linear") {
            throw std::invalid_argument("scale must be linear or log");
        }
    }
    if (spec.points < 2) throw std::invalid_argument("points must be at least 2");
    if (!(spec.start < spec.stop)) throw std::invalid_argument("start must be below stop");
    if (spec.scale == SweepScale::Log && !(spec.start > 0.0)) {
        throw std::invalid_argument("log sweep needs a positive start");
    }
    return spec;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Forward-contract censor, profit and timing calculator", "censor-lab"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value file of option defaults; flags override it");
    const auto commands = register_commands(app);

    try {
        if (const auto path = find_config_path(args)) apply_config(app, load_config(*path));
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    for (const auto& cmd : commands) {
        if (!cmd.app->parsed()) continue;
        try {
            cmd.run(out);
            return kExitOk;
        } catch (const VerificationFailure& e) {
            err << "error: " << e.what() << '\n';
            return kExitVerificationFailure;
        } catch (const UsageError& e) {
            err << "error: " << e.what() << '\n';
            return kExitUsage;
        } catch (const std::domain_error& e) {
            err << "error: " << e.what() << '\n';
            return kExitUsage;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kExitSolverFailure;
        }
    }
    return kExitUsage;
}

}  // namespace censorlab::cli
