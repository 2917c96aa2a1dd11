// Acceptance gate: one PASS/FAIL line per criterion, details indented below it.
// Exits 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "censorlab/asymptotics.hpp"
#include "censorlab/censor.hpp"
#include "censorlab/cli.hpp"
#include "censorlab/mc_oracle.hpp"
#include "censorlab/profit.hpp"
#include "censorlab/statics.hpp"
#include "censorlab/timing.hpp"
#include "json.hpp"

using namespace censorlab;

namespace {

constexpr std::uint64_t kSeed = 12345;
constexpr Eigen::Index kSamples = 1'000'000;
constexpr double kCriticalEps = 1e-12;

struct Report {
    bool pass = true;
    std::vector<std::string> notes;

    // Record a sub-check; returns ok so callers can chain.
    bool check(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
        return ok;
    }
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    return v;
}

struct Triple {
    double mu_bar, sigma2_bar;
};

std::vector<Triple> nine_triples() {
    std::vector<Triple> t;
    for (double m : {0.02, 0.05, 0.2}) {
        for (double s2 : {0.03, 0.07, 0.15}) t.push_back({m, s2});
    }
    return t;
}

Report censor_identity() {
    Report r;
    const auto t0 = std::chrono::steady_clock::now();
    for (auto [m, s2] : nine_triples()) {
        const auto p = ScaledParams::at_horizon(ModelParams::from_variance(m, s2), 1.0);
        const auto c = solve_normal_censor(p);
        const double res = censor_identity_residual(p.mu(), p.sigma(), c.w);
        const auto est = mc_censored_mean(sample_prices(p, kSamples, kSeed), c.b_tilde);
        const double z = (est.mean - 1.0) / est.std_error;
        r.check(res <= 1e-10 && est.agrees_with(1.0),
                fmt("mu_bar=%.2f s2=%.2f identity=%.2e mc=%.6f z=%+.2f", m, s2, res, est.mean, z));
    }
    const double secs = seconds_since(t0);
    r.check(secs < 10.0, fmt("runtime %.2f s (limit 10 s)", secs));
    return r;
}

Report profit_oracle() {
    Report r;
    for (auto [m, s2] : nine_triples()) {
        const auto p = ScaledParams::at_horizon(ModelParams::from_variance(m, s2), 1.0);
        const auto c = solve_normal_censor(p);
        const double g = expected_profit(p.mu(), p.sigma(), c);
        const auto est = mc_expected_profit(sample_prices(p, kSamples, kSeed), c.b_tilde);
        r.check(est.agrees_with(g), fmt("mu_bar=%.2f s2=%.2f g=%.6f mc=%.6f z=%+.2f", m, s2, g,
                                         est.mean, (est.mean - g) / est.std_error));
    }
    return r;
}

Report initial_slope() {
    Report r;
    const double h = 1e-6;
    for (double s2 : {0.03, 0.07, 0.15}) {
        const auto p = ModelParams::from_variance(0.05, s2);
        const double slope = profit_point(h, p).waiting_value / h;
        const double rel = slope / s2 - 1.0;
        r.check(std::fabs(rel) <= 1e-3,
                fmt("s2=%.2f slope=%.8f rel=%+.4f%% (limit 0.1%%)", s2, slope, 100 * rel));
    }
    return r;
}

Report long_horizon_regimes() {
    Report r;
    const char* names[] = {"i", "ii", "iii", "iv"};
    const double variances[] = {0.03, 0.07, 0.15, 0.10};
    for (int k = 0; k < 4; ++k) {
        const auto p = ModelParams::from_variance(0.05, variances[k]);
        std::string ladder;
        double prev = std::numeric_limits<double>::infinity();
        bool decreasing = true;
        for (double theta : {100.0, 200.0, 400.0, 800.0}) {
            const double scaled =
                std::fabs(theta_asymptotic_gap(theta, p, kCriticalEps)) * std::sqrt(theta);
            decreasing = decreasing && scaled < prev;
            prev = scaled;
            ladder += fmt(" %.4g", scaled);
        }
        r.check(decreasing, fmt("regime (%s) s2=%.2f |gap|*sqrt(theta) at 100..800:", names[k],
                                variances[k]) + ladder);
    }
    double prev = 0.0;
    std::string peaks;
    bool moving_out = true;
    for (double s2 : {0.02, 0.03, 0.04, 0.045}) {
        const auto peak = g_bar_argmax(ModelParams::from_variance(0.05, s2));
        moving_out = moving_out && peak.interior && peak.theta > prev;
        prev = peak.theta;
        peaks += fmt(" %.4g", peak.theta);
    }
    r.check(moving_out, "regime (i) argmax for s2=0.02..0.045:" + peaks);
    return r;
}

Report censor_expansions() {
    Report r;
    double prev = std::numeric_limits<double>::infinity();
    bool shrinking = true;
    std::string ladder;
    for (double sigma : {0.1, 0.05, 0.02, 0.01}) {
        const double err =
            std::fabs(solve_normal_censor(0.05, sigma).w - w_small_sigma(0.05, sigma).value) / sigma;
        shrinking = shrinking && err < prev;
        prev = err;
        ladder += fmt(" %.3g", err);
    }
    r.check(shrinking, "small sigma |W - approx|/sigma:" + ladder);

    const double mu_hat = large_sigma_shift(0.05);
    prev = std::numeric_limits<double>::infinity();
    bool bounded = true;
    ladder.clear();
    for (double sigma : {10.0, 20.0, 40.0}) {
        const double err = std::fabs(solve_normal_censor(0.05, sigma).w -
                                     w_large_sigma(0.05, sigma).value) * (sigma - mu_hat);
        bounded = bounded && err <= 0.5 && err <= prev;
        prev = err;
        ladder += fmt(" %.3g", err);
    }
    r.check(bounded, "large sigma |W - approx|*(sigma - mu_hat):" + ladder);
    return r;
}

Report comparative_statics() {
    Report r;
    int nodes = 0, bad_mu = 0, bad_sigma = 0, bad_w = 0;
    double worst_hazard = 0.0, min_dw = std::numeric_limits<double>::infinity();
    for (double mu : log_grid(0.02, 0.5, 10)) {
        for (double sigma : log_grid(0.05, 5.0, 10)) {
            const auto d = censor_partials(mu, sigma);
            bad_mu += d.db_dmu >= 0.0;
            bad_sigma += d.db_dsigma <= 0.0;
            bad_w += d.dw_dsigma <= 1.0;
            min_dw = std::min(min_dw, d.dw_dsigma);
            worst_hazard = std::max(worst_hazard, hazard_identity_residual(mu, sigma));
            ++nodes;
        }
    }
    r.check(nodes >= 100, fmt("%d grid nodes, mu in [0.02, 0.5], sigma in [0.05, 5]", nodes));
    r.check(bad_mu == 0, fmt("db/dmu < 0 violated at %d nodes", bad_mu));
    r.check(bad_sigma == 0, fmt("db/dsigma > 0 violated at %d nodes", bad_sigma));
    r.check(worst_hazard <= 1e-4, fmt("max hazard identity residual %.2e", worst_hazard));
    r.check(bad_w == 0, fmt("dW/dsigma > 1 violated at %d nodes (min %.4f)", bad_w, min_dw));
    return r;
}

Report stationary_anchors() {
    Report r;
    const auto half = stationarity_solve(0.5);
    r.check(half.exists && std::fabs(half.sigma_star - 4.331) <= 0.01,
            half.exists ? fmt("kappa=0.5 sigma*=%.4f (target 4.331 +- 0.01)", half.sigma_star)
                        : fmt("kappa=0.5 no root up to sigma=%.0f; residual at cap %.3e",
                              kStationaritySigmaCap,
                              stationarity_residual(0.5, kStationaritySigmaCap)));

    const auto sweep = omega_sweep(0.05, 10.0, 996);
    r.check(std::fabs(sweep.peak_omega - 0.051) <= 0.005 &&
                std::fabs(sweep.peak_sigma - 2.547) <= 0.05,
            fmt("omega max %.5f at sigma=%.3f (target 0.051 at 2.547)", sweep.peak_omega,
                sweep.peak_sigma));

    const double mu_bar = 0.05;
    const auto low = censor_shape_check(ModelParams::from_variance(mu_bar, mu_bar / 0.25));
    r.check(low.shape == CensorShape::Increasing,
            fmt("kappa=0.25 shape %s", std::string(to_string(low.shape)).c_str()));
    for (double kappa : {0.5, 1.0}) {
        const auto p = ModelParams::from_variance(mu_bar, mu_bar / kappa);
        const auto shape = censor_shape_check(p);
        const auto st = stationarity_solve(kappa, mu_bar);
        std::string line = fmt("kappa=%.2f shape %s", kappa, std::string(to_string(shape.shape)).c_str());
        bool ok = shape.shape == CensorShape::Unimodal;
        if (st.exists) {
            const double target = st.sigma_star * st.sigma_star / p.sigma2_bar();
            const bool near = std::fabs(std::log(shape.peak_theta / target)) <= std::log(shape.grid_ratio);
            ok = ok && near;
            line += fmt(", peak theta %.4g vs sigma*^2/s2 %.4g", shape.peak_theta, target);
        } else {
            ok = false;
            line += ", no stationary point to compare";
        }
        r.check(ok, line);
    }
    return r;
}

Report timing() {
    Report r;
    constexpr int n = 10'000;
    for (double s2 : {0.01, 0.03, 0.07, 0.15}) {
        const auto p = ModelParams::from_variance(0.05, s2);
        const auto s = solve_foc(p);
        double best = -1.0, arg = 0.0;
        for (int i = 1; i < n; ++i) {
            const double t = double(i) / n;
            const double v = revenue(t, p);
            if (v > best) {
                best = v;
                arg = t;
            }
        }
        const bool local_max = revenue(s.theta_star - 1e-4, p) < *s.r_value &&
                               revenue(s.theta_star + 1e-4, p) < *s.r_value;
        r.check(local_max && std::fabs(s.theta_star - arg) <= 1.0 / n,
                fmt("s2=%.2f theta*=%.6f grid argmax=%.4f residual=%.1e", s2, s.theta_star, arg,
                    s.foc_residual));
    }
    double worst = 0.0;
    double prev_i = 1.0, prev_ii = 0.0;
    bool dir_i = true, dir_ii = true;
    for (double alpha : {0.01, 0.1, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        const double ti = theta_case_i(alpha);
        const double tii = theta_case_ii(alpha).exact;
        worst = std::max({worst, std::fabs(case_i_residual(alpha, ti)),
                          std::fabs(case_ii_residual(alpha, tii))});
        dir_i = dir_i && ti < prev_i;
        dir_ii = dir_ii && tii > prev_ii;
        prev_i = ti;
        prev_ii = tii;
    }
    r.check(worst <= 1e-12, fmt("closed-form residual max %.1e", worst));
    r.check(dir_i, "case i decreasing in alpha");
    r.check(dir_ii, "case ii exact increasing in alpha");
    return r;
}

Report brute_force() {
    Report r;
    const auto t0 = std::chrono::steady_clock::now();
    for (auto [mu, sigma] :
         {std::pair{0.05, 0.3}, {0.02, 0.1}, {0.2, 0.6}, {0.5, 1.0}, {0.05, 0.7}}) {
        const ScaledParams p(mu, sigma);
        const auto bf = brute_force_optimal_u(p);
        const double b = censor_price(mu, sigma);
        const double u = 1.0 / (b * b);
        const bool same = bf.u_star == brute_force_optimal_u(p).u_star;
        r.check(std::fabs(bf.u_star - u) <= bf.u_step && same,
                fmt("mu=%.2f sigma=%.2f u*=%.3f b^-2=%.4f step=%.3f", mu, sigma, bf.u_star, u,
                    bf.u_step));
    }
    const double secs = seconds_since(t0);
    r.check(secs < 30.0, fmt("runtime %.2f s (limit 30 s)", secs));
    return r;
}

std::vector<double> csv_column(const std::filesystem::path& path, int column) {
    std::ifstream in(path);
    std::vector<double> out;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string cell;
        for (int i = 0; i <= column; ++i) std::getline(row, cell, ',');
        out.push_back(std::stod(cell));
    }
    return out;
}

Report figures() {
    Report r;
    const auto dir = std::filesystem::temp_directory_path() / "censorlab_acceptance_figures";
    std::filesystem::remove_all(dir);
    std::ostringstream out, err;
    const int code = cli::run({"figures", "--out-dir", dir.string(), "--json"}, out, err);
    if (!r.check(code == 0, fmt("figures exit code %d", code))) return r;
    const auto summary = nlohmann::json::parse(out.str());
    if (!r.check(summary.size() == 4, fmt("%zu files written", summary.size()))) return r;

    for (const auto& row : summary) {
        const std::filesystem::path file = row["file"].get<std::string>();
        const auto regime = row["regime"].get<std::string>();
        const auto g = csv_column(file, 1);
        const double tail_gap = row["max_rel_gap_last_decade"].get<double>();
        const double g_end = row["g_bar_at_theta_max"].get<double>();
        const auto& theta = csv_column(file, 0);
        const std::size_t last_decade =
            std::lower_bound(theta.begin(), theta.end(), theta.back() / 10.0) - theta.begin();
        if (regime == "low_var") {
            const auto peak = std::max_element(g.begin(), g.end()) - g.begin();
            const bool hump = peak > 0 && std::size_t(peak) + 1 < g.size() && g[peak] > g.front() &&
                              g[peak] > g.back();
            r.check(std::fabs(g_end - 1.0) <= 0.01 && hump,
                    fmt("%s: g_bar(theta_max)=%.6f, interior max %.4f at theta=%.4g",
                        file.filename().c_str(), g_end, g[peak], theta[peak]));
        } else {
            bool rising = true;
            for (std::size_t i = last_decade + 1; i < g.size(); ++i) rising = rising && g[i] > g[i - 1];
            r.check(tail_gap < 0.01 && rising,
                    fmt("%s: max relative gap over last decade %.2e, rising=%d",
                        file.filename().c_str(), tail_gap, int(rising)));
        }
    }
    std::filesystem::remove_all(dir);
    return r;
}

struct Criterion {
    const char* name;
    std::function<Report()> run;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"C1 censor identity and MC martingale", censor_identity},
        {"C2 expected profit vs MC", profit_oracle},
        {"C3 initial slope of g_bar equals variance", initial_slope},
        {"C4 long-horizon regimes", long_horizon_regimes},
        {"C5 small and large sigma censor expansions", censor_expansions},
        {"C6 comparative statics on grid", comparative_statics},
        {"C7 stationary point, omega curve and shapes", stationary_anchors},
        {"C8 timing", timing},
        {"C9 brute-force forward quantity", brute_force},
        {"C10 regime figures", figures},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Report rep;
        try {
            rep = c.run();
        } catch (const std::exception& e) {
            rep.check(false, std::string("exception: ") + e.what());
        }
        std::printf("%s  %s\n", rep.pass ? "PASS" : "FAIL", c.name);
        for (const auto& note : rep.notes) std::printf("        %s\n", note.c_str());
        failed += !rep.pass;
    }
    std::printf("%d of %zu criteria passed\n", int(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
