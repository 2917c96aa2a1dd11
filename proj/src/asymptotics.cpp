#include "censorlab/asymptotics.hpp"

#include <Eigen/Core>
#include <cmath>
#include <numbers>
#include <string>
#include <stdexcept>

#include "censorlab/censor.hpp"
#include "censorlab/profit.hpp"
#include "censorlab/special_fn.hpp"

namespace censorlab {
namespace {

constexpr std::string_view kOrderSigma = "o(sigma)";
constexpr std::string_view kOrderOneOverSigma = "o(1/sigma)";
constexpr std::string_view kOrderInvSqrtTheta = "o(1/sqrt(theta))";
constexpr std::string_view kOrderLogOverSqrtTheta = "O(log(theta)/sqrt(theta))";
constexpr std::string_view kOrderSqrtTheta = "o(sqrt(theta))";
constexpr std::string_view kOrderRelative = "(1 + o(1)) on the correction";

void require_theta(double theta, const char* where) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw std::domain_error(std::string(where) + ": theta must be positive and finite");
    }
}

double golden_max(const auto& f, double lo, double hi, int iterations = 80) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < iterations && (b - a) > 1e-12 * std::fabs(a + b); ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc > fd ? c : d;
}

}  // namespace

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::LowVar: return "low_var";
        case Regime::MidVar: return "mid_var";
        case Regime::HighVar: return "high_var";
        case Regime::Critical: return "critical";
    }
    return "unknown";
}

std::string_view to_string(Limit limit) noexcept {
    switch (limit) {
        case Limit::SigmaToZero: return "sigma->0+";
        case Limit::SigmaToInfinity: return "sigma->inf";
        case Limit::ThetaToZero: return "theta->0+";
        case Limit::ThetaToInfinity: return "theta->inf";
    }
    return "unknown";
}

AsymptoticEstimate w_small_sigma(double mu, double sigma) {
    detail::require_positive(mu, "mu");
    detail::require_positive(sigma, "sigma");
    return {-mu / sigma + 0.5 * sigma, Limit::SigmaToZero, kOrderSigma};
}

double large_sigma_shift(double mu) {
    detail::require_positive(mu, "mu");
    return -inv_norm_cdf(std::exp(-mu));
}

AsymptoticEstimate w_large_sigma(double mu, double sigma) {
    detail::require_positive(sigma, "sigma");
    const double mu_hat = large_sigma_shift(mu);
    if (!(sigma > mu_hat + 1.0)) {
        throw std::domain_error("w_large_sigma: requires sigma > mu_hat + 1");
    }
    const double gap = sigma - mu_hat;
    return {gap - 1.0 / gap, Limit::SigmaToInfinity, kOrderRelative};
}

Regime classify_regime(const ModelParams& params, double eps) {
    if (!(eps >= 0.0)) throw std::domain_error("classify_regime: eps must be non-negative");
    const double s2 = params.sigma2_bar();
    const double mu = params.mu_bar();
    if (std::fabs(s2 - 2.0 * mu) <= eps) return Regime::Critical;
    if (s2 < mu) return Regime::LowVar;
    if (s2 < 2.0 * mu) return Regime::MidVar;
    return Regime::HighVar;
}

AsymptoticEstimate g_asymptotic_theta(double theta, const ModelParams& params, double eps) {
    require_theta(theta, "g_asymptotic_theta");
    const double growth = (params.sigma2_bar() - params.mu_bar()) * theta;
    double value = 1.0;
    switch (classify_regime(params, eps)) {
        case Regime::LowVar: value = 1.0; break;
        case Regime::MidVar: value = 1.0 + std::exp(growth); break;
        case Regime::HighVar: value = std::exp(growth); break;
        case Regime::Critical: {
            const double mt = params.mu_bar() * theta;
            value = 0.25 + std::exp(mt) * norm_cdf(std::sqrt(2.0 * mt));
            break;
        }
    }
    return {value, Limit::ThetaToInfinity, kOrderInvSqrtTheta};
}

double theta_asymptotic_gap(double theta, const ModelParams& params, double eps) {
    require_theta(theta, "theta_asymptotic_gap");
    const auto scaled = ScaledParams::at_horizon(params, theta);
    const Regime regime = classify_regime(params, eps);
    if (regime == Regime::LowVar) return value_of_waiting(scaled.mu(), scaled.sigma());

    const auto censor = solve_normal_censor(scaled);
    // g - e^{sigma^2 - mu}
    const double excess = profit_excess_over_myopic(scaled.mu(), scaled.sigma(), censor);
    switch (regime) {
        case Regime::MidVar: return excess - 1.0;
        case Regime::HighVar: return excess;
        case Regime::Critical: {
            const double mt = params.mu_bar() * theta;
            const double growth = std::exp(mt);
            // e^{sigma^2 - mu} - e^{mu_bar theta}; zero at exact equality.
            const double offset =
                growth * std::expm1((params.sigma2_bar() - 2.0 * params.mu_bar()) * theta);
            return excess + offset - 0.25 + growth * norm_cdf_complement(std::sqrt(2.0 * mt));
        }
        case Regime::LowVar: break;
    }
    return excess;
}

AsymptoticEstimate g_asymptotic_sigma(double mu, double sigma, Limit direction) {
    detail::require_positive(mu, "mu");
    detail::require_positive(sigma, "sigma");
    switch (direction) {
        case Limit::SigmaToZero: {
            const double lower = std::exp(-mu);
            return {lower + (1.0 - lower) * norm_cdf(mu / sigma), direction, kOrderSigma};
        }
        case Limit::SigmaToInfinity:
            return {std::exp(sigma * sigma - mu), direction, kOrderOneOverSigma};
        default: break;
    }
    throw std::domain_error("g_asymptotic_sigma: direction must be a sigma limit");
}

AsymptoticEstimate w_bar_asymptotic(double theta, const ModelParams& params, double eps) {
    require_theta(theta, "w_bar_asymptotic");
    const double s = params.sigma_bar();
    const double drift = params.mu_bar() - 0.5 * params.sigma2_bar();
    const double root_theta = std::sqrt(theta);
    if (drift > eps) {
        return {-(drift / s) * root_theta, Limit::ThetaToInfinity, kOrderSqrtTheta};
    }
    if (drift < -eps) {
        return {(s - std::sqrt(2.0 * params.mu_bar())) * root_theta, Limit::ThetaToInfinity,
                kOrderLogOverSqrtTheta};
    }
    return {std::numbers::ln2 / (s * root_theta), Limit::ThetaToInfinity, kOrderInvSqrtTheta};
}

OriginLimitDiagnostics w_bar_origin_limits(const ModelParams& params,
                                           std::vector<double> theta_grid) {
    OriginLimitDiagnostics out{};
    out.w_bar_increasing = true;
    out.sqrt_scaled_decreasing = true;
    for (double theta : theta_grid) {
        require_theta(theta, "w_bar_origin_limits");
        const double w = censor_time_path(params, theta).w;
        const double scaled = std::sqrt(theta) * w;
        if (!out.theta.empty()) {
            if (!(theta < out.theta.back())) {
                throw std::domain_error("w_bar_origin_limits: theta grid must decrease");
            }
            out.w_bar_increasing = out.w_bar_increasing && w > out.w_bar.back();
            out.sqrt_scaled_decreasing =
                out.sqrt_scaled_decreasing && scaled < out.sqrt_theta_w_bar.back();
        }
        out.theta.push_back(theta);
        out.w_bar.push_back(w);
        out.sqrt_theta_w_bar.push_back(scaled);
    }
    return out;
}

ProfitPeak g_bar_argmax(const ModelParams& params, double theta_max, int points,
                        double theta_min) {
    require_theta(theta_min, "g_bar_argmax");
    if (!(theta_max > theta_min) || points < 3) {
        throw std::domain_error("g_bar_argmax: need theta_max > theta_min and points >= 3");
    }
    const Eigen::ArrayXd log_theta =
        Eigen::ArrayXd::LinSpaced(points, std::log(theta_min), std::log(theta_max));
    const Eigen::ArrayXd theta = log_theta.exp();
    Eigen::ArrayXd g(points);
    for (int i = 0; i < points; ++i) g[i] = g_bar(theta[i], params);

    Eigen::Index best = 0;
    g.maxCoeff(&best);
    const bool interior = best > 0 && best < points - 1;
    if (!interior) return {theta[best], g[best], false};

    auto f = [&params](double t) { return g_bar(t, params); };
    const double t = golden_max(f, theta[best - 1], theta[best + 1]);
    const double gt = f(t);
    if (gt >= g[best]) return {t, gt, true};
    return {theta[best], g[best], true};
}

}  // namespace censorlab
