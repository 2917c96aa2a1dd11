#pragma once

#include <stdexcept>
#include <string>

namespace censorlab {

/// Raised when an iterative solver fails to bracket or converge on inputs
/// that satisfy its preconditions. Indicates a numerical defect, not bad input.
class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Drift and volatility of the price process db/b = mu_bar dt + sigma_bar dw.
class ModelParams {
  public:
    ModelParams(double mu_bar, double sigma_bar);

    /// Build from the variance sigma_bar^2, the form the regime conditions use.
    static ModelParams from_variance(double mu_bar, double sigma2_bar);

    [[nodiscard]] double mu_bar() const noexcept { return mu_bar_; }
    [[nodiscard]] double sigma_bar() const noexcept { return sigma_bar_; }
    [[nodiscard]] double sigma2_bar() const noexcept { return sigma_bar_ * sigma_bar_; }
    /// Dispersion parameter mu_bar / sigma_bar^2.
    [[nodiscard]] double kappa() const noexcept { return mu_bar_ / sigma2_bar(); }

  private:
    double mu_bar_;
    double sigma_bar_;
};

/// Horizon-scaled parameters: mu = mu_bar * theta, sigma = sigma_bar * sqrt(theta).
/// nu (the log-mean of the price) is always derived, never stored.
class ScaledParams {
  public:
    /// Direct (mu, sigma) pair with a nominal unit horizon.
    ScaledParams(double mu, double sigma);

    static ScaledParams at_horizon(const ModelParams& params, double theta);

    [[nodiscard]] double mu() const noexcept { return mu_; }
    [[nodiscard]] double sigma() const noexcept { return sigma_; }
    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] double nu() const noexcept { return mu_ - 0.5 * sigma_ * sigma_; }

  private:
    ScaledParams(double mu, double sigma, double theta);

    double mu_;
    double sigma_;
    double theta_;
};

namespace detail {
// Throws std::domain_error naming `what` unless value is finite and > 0.
void require_positive(double value, const char* what);
}  // namespace detail

}  // namespace censorlab
