#include "censorlab/statics.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "censorlab/censor.hpp"
#include "censorlab/detail/roots.hpp"
#include "censorlab/special_fn.hpp"

namespace censorlab {
namespace {

constexpr double kOmegaLo = -0.5;
constexpr double kOmegaHi = 1.5;
constexpr int kOmegaScan = 64;

double log_b(double mu, double sigma) { return solve_normal_censor(mu, sigma).log_b_tilde; }
double w_of(double mu, double sigma) { return solve_normal_censor(mu, sigma).w; }

// b dlog(b)/dx keeps the difference finite where b itself is huge.
double db_from_log(double mu, double sigma, double dlog) {
    return std::exp(log_b(mu, sigma)) * dlog;
}

double step_or_default(double h, double x) { return h > 0.0 ? h : kRelativeStep * x; }

double omega_objective(double w, double sigma) {
    return -0.5 * sigma * hazard(sigma - w) - censor_log_F(w, sigma);
}

}  // namespace

CensorPartials censor_partials(double mu, double sigma, double rel_step) {
    if (!(rel_step > 0.0)) throw std::domain_error("censor_partials: step must be positive");
    const double hm = rel_step * mu;
    const double hs = rel_step * sigma;
    const auto mu_up = solve_normal_censor(mu + hm, sigma);
    const auto mu_dn = solve_normal_censor(mu - hm, sigma);
    const auto s_up = solve_normal_censor(mu, sigma + hs);
    const auto s_dn = solve_normal_censor(mu, sigma - hs);
    const double b = solve_normal_censor(mu, sigma).b_tilde;
    return CensorPartials{
        .db_dmu = b * (mu_up.log_b_tilde - mu_dn.log_b_tilde) / (2.0 * hm),
        .db_dsigma = b * (s_up.log_b_tilde - s_dn.log_b_tilde) / (2.0 * hs),
        .dw_dmu = (mu_up.w - mu_dn.w) / (2.0 * hm),
        .dw_dsigma = (s_up.w - s_dn.w) / (2.0 * hs),
    };
}

double db_dmu(double mu, double sigma, double h) {
    h = step_or_default(h, mu);
    if (!(h < mu)) throw std::domain_error("db_dmu: step must be smaller than mu");
    return db_from_log(mu, sigma, (log_b(mu + h, sigma) - log_b(mu - h, sigma)) / (2.0 * h));
}

double db_dsigma(double mu, double sigma, double h) {
    h = step_or_default(h, sigma);
    if (!(h < sigma)) throw std::domain_error("db_dsigma: step must be smaller than sigma");
    return db_from_log(mu, sigma, (log_b(mu, sigma + h) - log_b(mu, sigma - h)) / (2.0 * h));
}

double hazard_identity_residual(double mu, double sigma, double rel_step) {
    const double h = rel_step * sigma;
    const double w = w_of(mu, sigma);
    const double dw = (w_of(mu, sigma + h) - w_of(mu, sigma - h)) / (2.0 * h);
    return std::fabs(w + sigma * dw - sigma - hazard(w));
}

double omega_curve(double sigma) {
    detail::require_positive(sigma, "sigma");
    auto f = [sigma](double w) { return omega_objective(w, sigma); };

    // The root must be the only sign change on the bracket.
    const Eigen::ArrayXd nodes = Eigen::ArrayXd::LinSpaced(kOmegaScan + 1, kOmegaLo, kOmegaHi);
    int changes = 0;
    double lo = kOmegaLo;
    double hi = kOmegaHi;
    double prev = f(nodes[0]);
    for (Eigen::Index i = 1; i < nodes.size(); ++i) {
        const double cur = f(nodes[i]);
        if ((prev < 0.0) != (cur < 0.0)) {
            ++changes;
            lo = nodes[i - 1];
            hi = nodes[i];
        }
        prev = cur;
    }
    if (changes != 1) {
        throw SolverError("omega_curve: expected exactly one root in [-0.5, 1.5] at sigma=" +
                          std::to_string(sigma) + ", found " + std::to_string(changes));
    }
    return detail::bisect(f, lo, hi).x;
}

OmegaSweep omega_sweep(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > lo && n >= 2)) {
        throw std::domain_error("omega_sweep: need 0 < lo < hi and n >= 2");
    }
    OmegaSweep out{};
    out.within_unit_bracket = true;
    out.peak_omega = -std::numeric_limits<double>::infinity();
    const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(n, lo, hi);
    for (double s : grid) {
        const double w = omega_curve(s);
        out.sigma.push_back(s);
        out.omega.push_back(w);
        out.within_unit_bracket = out.within_unit_bracket && w >= 0.0 && w <= 1.0;
        if (w > out.peak_omega) {
            out.peak_omega = w;
            out.peak_sigma = s;
        }
    }
    return out;
}

double stationarity_residual(double kappa, double sigma) {
    const double mu = kappa * sigma * sigma;
    const double w = w_of(mu, sigma);
    return mu - 0.5 * sigma * hazard(sigma - w);
}

StationaritySolution stationarity_solve(double kappa, std::optional<double> mu_bar) {
    detail::require_positive(kappa, "kappa");
    if (mu_bar) detail::require_positive(*mu_bar, "mu_bar");
    StationaritySolution out{.kappa = kappa,
                             .exists = false,
                             .sigma_star = std::numeric_limits<double>::quiet_NaN(),
                             .mu_star = std::numeric_limits<double>::quiet_NaN(),
                             .theta_star_b = std::nullopt,
                             .residual = std::numeric_limits<double>::quiet_NaN()};
    if (kappa < 0.5) return out;

    // sigma_star lies between 1/(kappa sqrt(2 pi)) and 1/sqrt(2 kappa - 1).
    const double under = 1.0 / (kappa * std::sqrt(2.0 * std::numbers::pi));
    const double over =
        kappa > 0.5 ? 1.0 / std::sqrt(2.0 * kappa - 1.0) : kStationaritySigmaCap;
    const double lo = 0.5 * under;
    const double hi = std::min(2.0 * over, kStationaritySigmaCap);
    auto f = [kappa](double s) { return stationarity_residual(kappa, s); };
    if (f(lo) * f(hi) > 0.0) return out;

    const double sigma = detail::bisect(f, lo, hi).x;
    out.exists = true;
    out.sigma_star = sigma;
    out.mu_star = kappa * sigma * sigma;
    out.residual = std::fabs(f(sigma));
    if (mu_bar) out.theta_star_b = out.mu_star / *mu_bar;
    return out;
}

std::string_view to_string(CensorShape shape) noexcept {
    switch (shape) {
        case CensorShape::Increasing: return "increasing";
        case CensorShape::Unimodal: return "unimodal";
        case CensorShape::Irregular: return "irregular";
    }
    return "unknown";
}

ShapeReport censor_shape_check(const ModelParams& params, int points, double theta_min,
                               double theta_max) {
    if (!(theta_min > 0.0 && theta_max > theta_min && points >= 3)) {
        throw std::domain_error("censor_shape_check: bad grid");
    }
    const Eigen::ArrayXd theta =
        Eigen::ArrayXd::LinSpaced(points, std::log(theta_min), std::log(theta_max)).exp();
    Eigen::ArrayXd lb(points);
    for (int i = 0; i < points; ++i) lb[i] = censor_time_path(params, theta[i]).log_b_tilde;

    Eigen::Index peak = 0;
    lb.maxCoeff(&peak);

    // Count reversals, ignoring steps lost to rounding.
    int changes = 0;
    int direction = 0;
    for (int i = 1; i < points; ++i) {
        const double d = lb[i] - lb[i - 1];
        const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (direction != 0 && s != direction) ++changes;
        direction = s;
    }

    CensorShape shape = CensorShape::Irregular;
    if (changes == 0 && peak == points - 1) shape = CensorShape::Increasing;
    if (changes == 1 && peak > 0 && peak < points - 1) shape = CensorShape::Unimodal;
    return ShapeReport{
        .shape = shape,
        .peak_theta = theta[peak],
        .peak_log_b = lb[peak],
        .grid_ratio = std::pow(theta_max / theta_min, 1.0 / (points - 1)),
        .direction_changes = changes,
    };
}

}  // namespace censorlab
