#pragma once

#include <string_view>
#include <vector>

#include "censorlab/params.hpp"

namespace censorlab {

enum class Limit { SigmaToZero, SigmaToInfinity, ThetaToZero, ThetaToInfinity };

/// Long-horizon behaviour of g_bar, by sigma_bar^2 against mu_bar and 2 mu_bar.
enum class Regime {
    LowVar,   // sigma_bar^2 < mu_bar
    MidVar,   // mu_bar <= sigma_bar^2 < 2 mu_bar
    HighVar,  // sigma_bar^2 > 2 mu_bar
    Critical  // |sigma_bar^2 - 2 mu_bar| <= eps
};

[[nodiscard]] std::string_view to_string(Regime regime) noexcept;
[[nodiscard]] std::string_view to_string(Limit limit) noexcept;

/// A leading-order approximation, the limit it is valid in and the order of
/// the neglected remainder.
struct AsymptoticEstimate {
    double value;
    Limit direction;
    std::string_view error_order;
};

/// W ~ -mu/sigma + sigma/2 as sigma -> 0+.
[[nodiscard]] AsymptoticEstimate w_small_sigma(double mu, double sigma);

/// W ~ sigma - mu_hat - 1/(sigma - mu_hat) as sigma -> inf, mu_hat = -Phi^{-1}(e^{-mu}).
/// Throws std::domain_error unless sigma > mu_hat + 1.
[[nodiscard]] AsymptoticEstimate w_large_sigma(double mu, double sigma);

/// mu_hat = -Phi^{-1}(e^{-mu}); negative for mu < ln 2.
[[nodiscard]] double large_sigma_shift(double mu);

/// Exact equality for Critical unless eps > 0.
[[nodiscard]] Regime classify_regime(const ModelParams& params, double eps = 0.0);

/// Regime-matched long-horizon form of g_bar(theta). The critical regime uses
/// 1/4 + e^{mu_bar theta} Phi(sqrt(2 mu_bar theta)).
[[nodiscard]] AsymptoticEstimate g_asymptotic_theta(double theta, const ModelParams& params,
                                                    double eps = 0.0);

/// g_bar(theta) - g_asymptotic_theta(theta), formed without subtracting two
/// numbers of size e^{(sigma_bar^2 - mu_bar) theta}.
[[nodiscard]] double theta_asymptotic_gap(double theta, const ModelParams& params,
                                          double eps = 0.0);

/// Limits of g as sigma -> 0 (e^{-mu} + (1 - e^{-mu}) Phi(mu/sigma)) and sigma -> inf (myopic).
/// direction must be SigmaToZero or SigmaToInfinity.
[[nodiscard]] AsymptoticEstimate g_asymptotic_sigma(double mu, double sigma, Limit direction);

/// Long-horizon form of W_bar(theta) = W(mu_bar theta, sigma_bar sqrt(theta)).
/// Branch by the sign of mu_bar - sigma_bar^2 / 2, with |.| <= eps treated as zero.
[[nodiscard]] AsymptoticEstimate w_bar_asymptotic(double theta, const ModelParams& params,
                                                  double eps = 0.0);

/// Small-horizon behaviour of W_bar on a decreasing theta grid.
struct OriginLimitDiagnostics {
    std::vector<double> theta;
    std::vector<double> w_bar;
    std::vector<double> sqrt_theta_w_bar;
    /// W_bar strictly increases as theta shrinks.
    bool w_bar_increasing;
    /// sqrt(theta) W_bar strictly decreases as theta shrinks.
    bool sqrt_scaled_decreasing;
};

[[nodiscard]] OriginLimitDiagnostics w_bar_origin_limits(
    const ModelParams& params, std::vector<double> theta_grid = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6});

/// Location and value of the largest g_bar on a log grid over [theta_min, theta_max],
/// refined by golden-section search around the best node.
struct ProfitPeak {
    double theta;
    double g;
    /// True when the best node is not an end point of the grid.
    bool interior;
};

[[nodiscard]] ProfitPeak g_bar_argmax(const ModelParams& params, double theta_max = 2000.0,
                                      int points = 2000, double theta_min = 1e-2);

}  // namespace censorlab
