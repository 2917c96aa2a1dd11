#include "censorlab/params.hpp"

#include <cmath>

namespace censorlab {

namespace detail {
void require_positive(double value, const char* what) {
    if (!(std::isfinite(value) && value > 0.0)) {
        throw std::domain_error(std::string(what) + " must be finite and positive, got " +
                                std::to_string(value));
    }
}
}  // namespace detail

ModelParams::ModelParams(double mu_bar, double sigma_bar)
    : mu_bar_(mu_bar), sigma_bar_(sigma_bar) {
    detail::require_positive(mu_bar, "mu_bar");
    detail::require_positive(sigma_bar, "sigma_bar");
}

ModelParams ModelParams::from_variance(double mu_bar, double sigma2_bar) {
    detail::require_positive(sigma2_bar, "sigma2_bar");
    return ModelParams(mu_bar, std::sqrt(sigma2_bar));
}

ScaledParams::ScaledParams(double mu, double sigma) : ScaledParams(mu, sigma, 1.0) {}

ScaledParams::ScaledParams(double mu, double sigma, double theta)
    : mu_(mu), sigma_(sigma), theta_(theta) {
    detail::require_positive(mu, "mu");
    detail::require_positive(sigma, "sigma");
    detail::require_positive(theta, "theta");
}

ScaledParams ScaledParams::at_horizon(const ModelParams& params, double theta) {
    detail::require_positive(theta, "theta");
    return ScaledParams(params.mu_bar() * theta, params.sigma_bar() * std::sqrt(theta), theta);
}

}  // namespace censorlab
