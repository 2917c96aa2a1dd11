#include "cli/commands.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "censorlab/asymptotics.hpp"
#include "censorlab/censor.hpp"
#include "censorlab/cli.hpp"
#include "censorlab/mc_oracle.hpp"
#include "censorlab/profit.hpp"
#include "censorlab/statics.hpp"
#include "censorlab/timing.hpp"
#include "cli/output.hpp"

namespace censorlab::cli {
namespace {

struct FormatFlags {
    bool json = false;
    bool csv = false;

    [[nodiscard]] Format format() const {
        if (json) return Format::Json;
        if (csv) return Format::Csv;
        return Format::Table;
    }
};

void add_format_flags(CLI::App* sub, FormatFlags& f) {
    auto* json = sub->add_flag("--json", f.json, "Print JSON");
    auto* csv = sub->add_flag("--csv", f.csv, "Print CSV");
    json->excludes(csv);
}

CLI::Option* add_positive(CLI::App* sub, const std::string& name, std::optional<double>& v,
                          const std::string& help) {
    return sub->add_option(name, v, help)->check(CLI::PositiveNumber);
}

bool flagged(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

// Pick between two parameterizations. A group given on the command line wins
// over one that only came from the config file.
int choose_group(bool a_present, bool a_flagged, bool b_present, bool b_flagged,
                 const std::string& a, const std::string& b) {
    if (a_flagged && b_flagged) throw UsageError("use either " + a + " or " + b + ", not both");
    if (a_flagged && a_present) return 0;
    if (b_flagged && b_present) return 1;
    if (a_present && b_present) throw UsageError("config sets both " + a + " and " + b);
    if (a_present) return 0;
    if (b_present) return 1;
    throw UsageError("need " + a + " or " + b);
}

// (mu, sigma) directly or (mu_bar, sigma2_bar, theta).
struct PriceFlags {
    std::optional<double> mu, sigma, mu_bar, sigma2_bar, theta;
    CLI::Option *o_mu{}, *o_sigma{}, *o_mu_bar{}, *o_sigma2_bar{}, *o_theta{};

    void add(CLI::App* sub) {
        o_mu = add_positive(sub, "--mu", mu, "Horizon drift mu");
        o_sigma = add_positive(sub, "--sigma", sigma, "Horizon volatility sigma");
        o_mu_bar = add_positive(sub, "--mu-bar", mu_bar, "Drift per unit time");
        o_sigma2_bar = add_positive(sub, "--sigma2-bar", sigma2_bar, "Variance per unit time");
        o_theta = add_positive(sub, "--theta", theta, "Horizon");
        for (auto* a : {o_mu, o_sigma}) {
            for (auto* b : {o_mu_bar, o_sigma2_bar, o_theta}) a->excludes(b);
        }
    }

    [[nodiscard]] bool has_model() const { return mu_bar && sigma2_bar; }

    [[nodiscard]] ModelParams model() const {
        if (!has_model()) throw UsageError("--mu-bar and --sigma2-bar are required");
        return ModelParams::from_variance(*mu_bar, *sigma2_bar);
    }

    [[nodiscard]] ScaledParams scaled() const {
        const int group = choose_group(
            mu && sigma, flagged(o_mu) || flagged(o_sigma), has_model() && theta,
            flagged(o_mu_bar) || flagged(o_sigma2_bar) || flagged(o_theta), "--mu/--sigma",
            "--mu-bar/--sigma2-bar/--theta");
        if (group == 0) return ScaledParams(*mu, *sigma);
        return ScaledParams::at_horizon(model(), *theta);
    }
};

Record censor_record(const ScaledParams& p, const CensorSolution& c) {
    return Record{{"mu", p.mu()},
                  {"sigma", p.sigma()},
                  {"w", c.w},
                  {"b_tilde", number(c.b_tilde)},
                  {"log_b_tilde", c.log_b_tilde},
                  {"u", c.u},
                  {"residual", c.residual},
                  {"iterations", c.iterations}};
}

// ---- censor ---------------------------------------------------------------

Command register_censor(CLI::App& app) {
    struct Opts {
        PriceFlags price;
        double tol = kDefaultCensorTol;
        FormatFlags fmt;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("censor", "Solve the normal censor W, censor price and forward quantity");
    o->price.add(sub);
    sub->add_option("--tol", o->tol, "Residual tolerance on |F(W, sigma) - e^-mu|")
        ->check(CLI::Range(1e-300, 1e-8));
    add_format_flags(sub, o->fmt);
    return {sub, [o](std::ostream& out) {
                const auto p = o->price.scaled();
                emit(out, o->fmt.format(), {censor_record(p, solve_normal_censor(p, o->tol))});
            }};
}

// ---- profit ---------------------------------------------------------------

Command register_profit(CLI::App& app) {
    struct Opts {
        PriceFlags price;
        std::string sweep;
        FormatFlags fmt;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("profit", "Expected profit, myopic benchmark and value of waiting");
    o->price.add(sub);
    sub->add_option("--sweep", o->sweep,
                    "Sweep var:start:stop:points[:log]; var is theta (needs --mu-bar, "
                    "--sigma2-bar), mu (needs --sigma) or sigma (needs --mu)");
    add_format_flags(sub, o->fmt);
    return {sub, [o](std::ostream& out) {
                auto point = [](double mu, double sigma) {
                    const auto c = solve_normal_censor(mu, sigma);
                    return Record{{"mu", mu},
                                  {"sigma", sigma},
                                  {"w", c.w},
                                  {"b_tilde", number(c.b_tilde)},
                                  {"g", number(expected_profit(mu, sigma, c))},
                                  {"myopic", number(std::exp(sigma * sigma - mu))},
                                  {"waiting_value", value_of_waiting(mu, sigma)}};
                };
                if (o->sweep.empty()) {
                    const auto p = o->price.scaled();
                    emit(out, o->fmt.format(), {point(p.mu(), p.sigma())});
                    return;
                }
                SweepSpec spec;
                try {
                    spec = parse_sweep(o->sweep, {"theta", "mu", "sigma"});
                } catch (const std::invalid_argument& e) {
                    throw UsageError(std::string("--sweep: ") + e.what());
                }
                std::vector<Record> rows;
                if (spec.variable == "theta") {
                    const auto model = o->price.model();
                    for (double t : spec.values()) {
                        const auto pp = profit_point(t, model);
                        rows.push_back(Record{{"theta", t},
                                              {"g_bar", number(pp.g)},
                                              {"myopic", number(pp.myopic)},
                                              {"waiting_value", pp.waiting_value}});
                    }
                } else if (spec.variable == "mu") {
                    if (!o->price.sigma) throw UsageError("--sweep mu needs --sigma");
                    for (double m : spec.values()) rows.push_back(point(m, *o->price.sigma));
                } else {
                    if (!o->price.mu) throw UsageError("--sweep sigma needs --mu");
                    for (double s : spec.values()) rows.push_back(point(*o->price.mu, s));
                }
                emit(out, o->fmt.format(), rows, true);
            }};
}

// ---- timing ---------------------------------------------------------------

Command register_timing(CLI::App& app) {
    struct Opts {
        std::optional<double> mu_bar, sigma2_bar, alpha;
        std::string which_case;
        double tol = kDefaultFocTol;
        FormatFlags fmt;
        CLI::Option *o_mu_bar{}, *o_sigma2_bar{}, *o_alpha{}, *o_case{};
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("timing", "Optimal re-stocking date");
    o->o_mu_bar = add_positive(sub, "--mu-bar", o->mu_bar, "Drift per unit time");
    o->o_sigma2_bar = add_positive(sub, "--sigma2-bar", o->sigma2_bar, "Variance per unit time");
    o->o_alpha = add_positive(sub, "--alpha", o->alpha, "Rate in the closed-form cases");
    o->o_case = sub->add_option("--case", o->which_case, "Closed-form case: i or ii")
                    ->check(CLI::IsMember({"i", "ii"}));
    sub->add_option("--tol", o->tol, "FOC residual tolerance")->check(CLI::PositiveNumber);
    for (auto* a : {o->o_alpha, o->o_case}) {
        for (auto* b : {o->o_mu_bar, o->o_sigma2_bar}) a->excludes(b);
    }
    add_format_flags(sub, o->fmt);
    return {sub, [o](std::ostream& out) {
                const int group = choose_group(
                    o->mu_bar && o->sigma2_bar, flagged(o->o_mu_bar) || flagged(o->o_sigma2_bar),
                    o->alpha.has_value(), flagged(o->o_alpha) || flagged(o->o_case),
                    "--mu-bar/--sigma2-bar", "--alpha/--case");
                Record rec;
                if (group == 0) {
                    const auto params = ModelParams::from_variance(*o->mu_bar, *o->sigma2_bar);
                    const auto t = solve_foc(params, o->tol);
                    rec = Record{{"mu_bar", *o->mu_bar},
                                 {"sigma2_bar", *o->sigma2_bar},
                                 {"branch", to_string(t.branch)},
                                 {"theta_star", t.theta_star},
                                 {"r_value", *t.r_value},
                                 {"foc_residual", t.foc_residual},
                                 {"is_smallest_root", t.is_smallest_root}};
                } else if (o->which_case.empty()) {
                    throw UsageError("--alpha needs --case i or --case ii");
                } else if (o->which_case == "i") {
                    const double theta = theta_case_i(*o->alpha);
                    rec = Record{{"alpha", *o->alpha},
                                 {"branch", to_string(TimingBranch::CaseI)},
                                 {"theta_star", theta},
                                 {"residual", case_i_residual(*o->alpha, theta)}};
                } else {
                    const auto t = theta_case_ii(*o->alpha);
                    rec = Record{{"alpha", *o->alpha},
                                 {"branch", to_string(TimingBranch::CaseII)},
                                 {"theta_star", t.exact},
                                 {"approx", t.approx ? Record(*t.approx) : Record("unavailable")},
                                 {"residual", case_ii_residual(*o->alpha, t.exact)}};
                }
                emit(out, o->fmt.format(), {rec});
            }};
}

// ---- figures --------------------------------------------------------------

std::string figure_file(Regime r) {
    switch (r) {
        case Regime::LowVar: return "figure1_regime_i.csv";
        case Regime::MidVar: return "figure2_regime_ii.csv";
        case Regime::HighVar: return "figure3_regime_iii.csv";
        case Regime::Critical: return "figure4_regime_iv.csv";
    }
    return "figure.csv";
}

Command register_figures(CLI::App& app) {
    struct Opts {
        double mu_bar = 0.05;
        std::optional<double> sigma2_bar;
        double theta_min = 1e-2;
        double theta_max = 2000.0;
        int points = 400;
        double eps = 1e-12;
        std::string out_dir = ".";
        FormatFlags fmt;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("figures", "Write g_bar against its long-horizon approximation, one CSV per regime");
    sub->add_option("--mu-bar", o->mu_bar, "Drift per unit time")->check(CLI::PositiveNumber);
    add_positive(sub, "--sigma2-bar", o->sigma2_bar,
                 "Single variance (default: 0.6, 1.4, 3 and 2 times mu_bar)");
    sub->add_option("--theta-min", o->theta_min, "Smallest horizon")->check(CLI::PositiveNumber);
    sub->add_option("--theta-max", o->theta_max, "Largest horizon")->check(CLI::PositiveNumber);
    sub->add_option("--points", o->points, "Log-spaced horizons per file")->check(CLI::Range(2, 1000000));
    sub->add_option("--eps", o->eps, "Tolerance on |sigma2_bar - 2 mu_bar| for the critical regime")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out-dir", o->out_dir, "Directory for the CSV files");
    add_format_flags(sub, o->fmt);
    return {sub, [o](std::ostream& out) {
                if (!(o->theta_max > o->theta_min)) {
                    throw UsageError("--theta-max must exceed --theta-min");
                }
                std::vector<double> variances;
                if (o->sigma2_bar) {
                    variances = {*o->sigma2_bar};
                } else {
                    for (double f : {0.6, 1.4, 3.0, 2.0}) variances.push_back(f * o->mu_bar);
                }
                const SweepSpec spec{"theta", o->theta_min, o->theta_max, o->points, SweepScale::Log};
                const auto thetas = spec.values();

                std::error_code ec;
                std::filesystem::create_directories(o->out_dir, ec);
                std::vector<Record> summary;
                for (double s2 : variances) {
                    const auto params = ModelParams::from_variance(o->mu_bar, s2);
                    const Regime regime = classify_regime(params, o->eps);
                    std::vector<Record> rows;
                    double worst_tail_gap = 0.0;
                    double g_last = 1.0;
                    for (double t : thetas) {
                        const double g = g_bar(t, params);
                        const double gap = theta_asymptotic_gap(t, params, o->eps);
                        rows.push_back(Record{{"theta", t},
                                              {"g_bar_exact", number(g)},
                                              {"g_asymptotic", number(g_asymptotic_theta(t, params, o->eps).value)},
                                              {"regime", to_string(regime)},
                                              {"gap", gap}});
                        if (t >= o->theta_max / 10.0) {
                            worst_tail_gap = std::max(worst_tail_gap, std::fabs(gap / g));
                        }
                        g_last = g;
                    }
                    const auto path = std::filesystem::path(o->out_dir) / figure_file(regime);
                    std::ofstream file(path, std::ios::binary);
                    if (!file) throw std::runtime_error("cannot write " + path.string());
                    write_csv(file, rows);
                    if (!file) throw std::runtime_error("error writing " + path.string());
                    summary.push_back(Record{{"file", path.string()},
                                             {"regime", to_string(regime)},
                                             {"mu_bar", o->mu_bar},
                                             {"sigma2_bar", s2},
                                             {"rows", rows.size()},
                                             {"g_bar_at_theta_max", number(g_last)},
                                             {"max_rel_gap_last_decade", worst_tail_gap}});
                }
                emit(out, o->fmt.format(), summary, true);
            }};
}

// ---- statics --------------------------------------------------------------

Record partials_record(double mu, double sigma) {
    const auto d = censor_partials(mu, sigma);
    return Record{{"mu", mu},
                  {"sigma", sigma},
                  {"db_dmu", number(d.db_dmu)},
                  {"db_dsigma", number(d.db_dsigma)},
                  {"dw_dmu", d.dw_dmu},
                  {"dw_dsigma", d.dw_dsigma},
                  {"hazard_residual", hazard_identity_residual(mu, sigma)}};
}

Command register_statics(CLI::App& app) {
    struct Opts {
        std::optional<double> kappa, mu_bar, sigma2_bar, mu, sigma;
        std::string omega_sweep, sweep;
        bool shape = false;
        int points = 400;
        FormatFlags fmt;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("statics", "Comparative statics of the censor");
    add_positive(sub, "--kappa", o->kappa, "Solve the stationarity system for mu_bar / sigma2_bar");
    add_positive(sub, "--mu-bar", o->mu_bar, "Drift per unit time (horizon of the peak, --shape)");
    add_positive(sub, "--sigma2-bar", o->sigma2_bar, "Variance per unit time (--shape)");
    add_positive(sub, "--mu", o->mu, "Drift for partial derivatives");
    add_positive(sub, "--sigma", o->sigma, "Volatility for partial derivatives");
    sub->add_option("--omega-sweep", o->omega_sweep, "Export omega(sigma) on start:stop:points");
    sub->add_option("--sweep", o->sweep, "Partials along mu:... (needs --sigma) or sigma:... (needs --mu)");
    sub->add_flag("--shape", o->shape, "Classify the censor time path (needs --mu-bar, --sigma2-bar)");
    sub->add_option("--points", o->points, "Grid points for --shape")->check(CLI::Range(3, 1000000));
    add_format_flags(sub, o->fmt);
    return {sub, [o](std::ostream& out) {
                const int modes = int(o->kappa.has_value()) + int(!o->omega_sweep.empty()) +
                                  int(!o->sweep.empty()) + int(o->shape);
                if (modes > 1) {
                    throw UsageError("choose one of --kappa, --omega-sweep, --sweep, --shape");
                }
                const Format fmt = o->fmt.format();
                if (o->kappa) {
                    const auto s = stationarity_solve(*o->kappa, o->mu_bar);
                    std::string message = "stationary point found: censor unimodal";
                    if (!s.exists) {
                        message = *o->kappa < 0.5
                                      ? "no stationary point (kappa<1/2): censor increasing"
                                      : "no stationary point found for sigma up to 50: censor increasing";
                    }
                    emit(out, fmt,
                         {Record{{"kappa", s.kappa},
                                 {"exists", s.exists},
                                 {"sigma_star", number(s.sigma_star)},
                                 {"mu_star", number(s.mu_star)},
                                 {"theta_star_b", s.theta_star_b ? number(*s.theta_star_b) : Record()},
                                 {"residual", number(s.residual)},
                                 {"message", message}}});
                    return;
                }
                if (!o->omega_sweep.empty()) {
                    SweepSpec spec;
                    try {
                        spec = parse_sweep("sigma:" + o->omega_sweep);
                    } catch (const std::invalid_argument& e) {
                        throw UsageError(std::string("--omega-sweep: ") + e.what());
                    }
                    if (!(spec.start > 0.0)) throw UsageError("--omega-sweep: sigma must be positive");
                    std::vector<Record> rows;
                    for (double s : spec.values()) {
                        rows.push_back(Record{{"sigma", s}, {"omega", omega_curve(s)}});
                    }
                    emit(out, fmt, rows, true);
                    return;
                }
                if (!o->sweep.empty()) {
                    SweepSpec spec;
                    try {
                        spec = parse_sweep(o->sweep, {"mu", "sigma"});
                    } catch (const std::invalid_argument& e) {
                        throw UsageError(std::string("--sweep: ") + e.what());
                    }
                    std::vector<Record> rows;
                    for (double v : spec.values()) {
                        if (spec.variable == "mu") {
                            if (!o->sigma) throw UsageError("--sweep mu needs --sigma");
                            rows.push_back(partials_record(v, *o->sigma));
                        } else {
                            if (!o->mu) throw UsageError("--sweep sigma needs --mu");
                            rows.push_back(partials_record(*o->mu, v));
                        }
                    }
                    emit(out, fmt, rows, true);
                    return;
                }
                if (o->shape) {
                    if (!(o->mu_bar && o->sigma2_bar)) {
                        throw UsageError("--shape needs --mu-bar and --sigma2-bar");
                    }
                    const auto params = ModelParams::from_variance(*o->mu_bar, *o->sigma2_bar);
                    const auto r = censor_shape_check(params, o->points);
                    emit(out, fmt,
                         {Record{{"mu_bar", *o->mu_bar},
                                 {"sigma2_bar", *o->sigma2_bar},
                                 {"kappa", params.kappa()},
                                 {"shape", to_string(r.shape)},
                                 {"peak_theta", r.peak_theta},
                                 {"peak_b", number(std::exp(r.peak_log_b))},
                                 {"grid_ratio", r.grid_ratio},
                                 {"direction_changes", r.direction_changes}}});
                    return;
                }
                if (o->mu && o->sigma) {
                    emit(out, fmt, {partials_record(*o->mu, *o->sigma)});
                    return;
                }
                throw UsageError(
                    "choose one of --kappa, --omega-sweep, --sweep, --shape or --mu with --sigma");
            }};
}

// ---- mc-check -------------------------------------------------------------

Command register_mc_check(CLI::App& app) {
    struct Opts {
        double mu_bar = 0.05;
        double sigma2_bar = 0.07;
        double theta = 1.0;
        std::int64_t n = 1'000'000;
        std::uint64_t seed = 12345;
        double se_mult = kDefaultSeMultiplier;
        bool strict = false;
        FormatFlags fmt;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("mc-check", "Cross-check the closed forms against Monte Carlo and brute force");
    sub->add_option("--mu-bar", o->mu_bar, "Drift per unit time")->check(CLI::PositiveNumber);
    sub->add_option("--sigma2-bar", o->sigma2_bar, "Variance per unit time")->check(CLI::PositiveNumber);
    sub->add_option("--theta", o->theta, "Horizon")->check(CLI::PositiveNumber);
    sub->add_option("--n", o->n, "Monte Carlo sample size (at least 10000 unless --strict)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", o->seed, "Random seed")->envname("CENSOR_LAB_SEED");
    sub->add_option("--se-mult", o->se_mult, "Tolerance in standard errors")->check(CLI::PositiveNumber);
    sub->add_flag("--strict", o->strict,
                  "Allow samples below 10000 and still enforce the standard-error tolerance");
    add_format_flags(sub, o->fmt);
    return {sub, [o](std::ostream& out) {
                if (o->n < kMartingaleMinSamples && !o->strict) {
                    throw UsageError("--n must be at least 10000 (pass --strict to run smaller samples)");
                }
                const auto params = ModelParams::from_variance(o->mu_bar, o->sigma2_bar);
                const auto scaled = ScaledParams::at_horizon(params, o->theta);
                const auto censor = solve_normal_censor(scaled);
                const auto sample = sample_prices(scaled, o->n, o->seed);

                std::vector<Record> rows;
                bool all_passed = true;
                auto stat_row = [&](const char* name, const McEstimate& est, double target) {
                    const double dev = std::fabs(est.mean - target) / est.std_error;
                    const bool ok = est.agrees_with(target, o->se_mult);
                    all_passed = all_passed && ok;
                    rows.push_back(Record{{"check", name},
                                          {"estimate", est.mean},
                                          {"target", target},
                                          {"std_error", est.std_error},
                                          {"deviation", number(dev)},
                                          {"tolerance", o->se_mult},
                                          {"unit", "std_error"},
                                          {"passed", ok}});
                };
                stat_row("martingale", mc_censored_mean(sample, censor.b_tilde), 1.0);
                stat_row("profit", mc_expected_profit(sample, censor.b_tilde),
                         expected_profit(scaled.mu(), scaled.sigma(), censor));

                const auto bf = brute_force_optimal_u(scaled);
                const double dev = std::fabs(bf.u_star - censor.u);
                const bool ok = dev <= bf.u_step;
                all_passed = all_passed && ok;
                rows.push_back(Record{{"check", "brute_force_u"},
                                      {"estimate", bf.u_star},
                                      {"target", censor.u},
                                      {"std_error", nullptr},
                                      {"deviation", dev},
                                      {"tolerance", bf.u_step},
                                      {"unit", "u"},
                                      {"passed", ok}});
                emit(out, o->fmt.format(), rows, true);
                if (!all_passed) throw VerificationFailure("mc-check: at least one check failed");
            }};
}

}  // namespace

std::vector<Command> register_commands(CLI::App& app) {
    return {register_censor(app), register_profit(app),  register_timing(app),
            register_figures(app), register_statics(app), register_mc_check(app)};
}

}  // namespace censorlab::cli
