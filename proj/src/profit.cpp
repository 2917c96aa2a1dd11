#include "censorlab/profit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "censorlab/detail/quadrature.hpp"
#include "censorlab/special_fn.hpp"

namespace censorlab {
namespace {

// Below this g - 1 is formed from the integral instead of by subtraction.
constexpr double kDirectWaitingFloor = 1e-8;

// e^{sigma^2 - mu} Phi(W + sigma) = E[1/b; b <= b_tilde].
double uncensored_part(double mu, double sigma, double w) {
    return std::exp(sigma * sigma - mu + log_norm_cdf(w + sigma));
}

// h(b_tilde) Pr[b > b_tilde] = Phi(-W) / b_tilde.
double censored_part(const CensorSolution& censor) {
    return std::exp(log_norm_cdf_complement(censor.w) - censor.log_b_tilde);
}

// E[(B-1)^2/B] with B = b ^ b_tilde and log b ~ N(nu, sigma^2). With z = W - t,
// (b - 1)^2 / b = 4 sinh^2((log b_tilde - sigma t) / 2) on the uncensored part.
double waiting_value_integral(double sigma, const CensorSolution& censor) {
    const double w = censor.w;
    const double log_b = censor.log_b_tilde;
    auto integrand = [&](double t) {
        const double s = std::sinh(0.5 * (log_b - sigma * t));
        return 4.0 * s * s * norm_pdf(w - t);
    };
    const double upper = w < -1.0 ? 45.0 / -w : w + 12.0;
    const double scale = norm_pdf(w) * 4.0 * std::pow(std::sinh(0.5 * std::max(log_b, sigma)), 2);
    const double uncensored = detail::adaptive_simpson(integrand, 0.0, upper, 1e-12 * scale);
    const double s = std::sinh(0.5 * log_b);
    return uncensored + 4.0 * s * s * norm_cdf_complement(w);
}

}  // namespace

double indirect_profit(double b) {
    if (!(b > 0.0)) throw std::domain_error("indirect_profit: b must be positive");
    return 1.0 / b;
}

double expected_profit(double mu, double sigma, const CensorSolution& censor) {
    return uncensored_part(mu, sigma, censor.w) + censored_part(censor);
}

double expected_profit(double mu, double sigma) {
    return expected_profit(mu, sigma, solve_normal_censor(mu, sigma));
}

double profit_excess_over_myopic(double mu, double sigma, const CensorSolution& censor) {
    const double above_censor =
        std::exp(sigma * sigma - mu + log_norm_cdf_complement(censor.w + sigma));
    return censored_part(censor) - above_censor;
}

double g_bar(double theta, const ModelParams& params) {
    if (!(theta >= 0.0)) throw std::domain_error("g_bar: theta must be non-negative");
    if (theta == 0.0) return 1.0;
    const auto scaled = ScaledParams::at_horizon(params, theta);
    return expected_profit(scaled.mu(), scaled.sigma());
}

double myopic_profit(double theta, const ModelParams& params) {
    if (!(theta >= 0.0)) throw std::domain_error("myopic_profit: theta must be non-negative");
    return std::exp((params.sigma2_bar() - params.mu_bar()) * theta);
}

double value_of_waiting(double mu, double sigma) {
    const auto censor = solve_normal_censor(mu, sigma);
    const double direct = expected_profit(mu, sigma, censor) - 1.0;
    if (direct >= kDirectWaitingFloor) return direct;
    return waiting_value_integral(sigma, censor);
}

ProfitPoint profit_point(double theta, const ModelParams& params) {
    if (theta == 0.0) return ProfitPoint{.theta = 0.0, .g = 1.0, .myopic = 1.0, .waiting_value = 0.0};
    const double g = g_bar(theta, params);
    const auto scaled = ScaledParams::at_horizon(params, theta);
    return ProfitPoint{
        .theta = theta,
        .g = g,
        .myopic = myopic_profit(theta, params),
        .waiting_value = value_of_waiting(scaled.mu(), scaled.sigma()),
    };
}

}  // namespace censorlab
