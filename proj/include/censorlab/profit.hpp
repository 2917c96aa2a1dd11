#pragma once

#include "censorlab/censor.hpp"
#include "censorlab/params.hpp"

namespace censorlab {

/// Expected profit per unit time after re-stocking at horizon theta.
struct ProfitPoint {
    double theta;
    double g;
    /// Profit without a forward contract, e^{(sigma_bar^2 - mu_bar) theta}.
    double myopic;
    /// g - h(1) = g - 1, computed without cancellation (see value_of_waiting).
    double waiting_value;
};

/// Indirect profit h(b) = max_x [2 sqrt(x) - b x] = 1 / b.
[[nodiscard]] double indirect_profit(double b);

/// Closed-form g(mu, sigma) = E[h(b ^ b_tilde)]:
///   e^{sigma^2 - mu} Phi(W + sigma) + e^{-mu - sigma W + sigma^2/2} Phi(-W).
/// Both terms are assembled in log space so sigma up to ~26 stays finite.
[[nodiscard]] double expected_profit(double mu, double sigma);
[[nodiscard]] double expected_profit(double mu, double sigma, const CensorSolution& censor);

/// g(mu, sigma) - e^{sigma^2 - mu}, without forming either large quantity.
/// This is the part of g not explained by the uncensored (myopic) profit.
[[nodiscard]] double profit_excess_over_myopic(double mu, double sigma,
                                               const CensorSolution& censor);

/// g_bar(theta) = g(mu_bar theta, sigma_bar sqrt(theta)); g_bar(0) = 1.
[[nodiscard]] double g_bar(double theta, const ModelParams& params);

[[nodiscard]] double myopic_profit(double theta, const ModelParams& params);

/// g(mu, sigma) - 1 > 0. Falls back to the non-negative integral
/// E[(B - 1)^2 / B], B = b ^ b_tilde, where g itself rounds to 1.
[[nodiscard]] double value_of_waiting(double mu, double sigma);

[[nodiscard]] ProfitPoint profit_point(double theta, const ModelParams& params);

}  // namespace censorlab
