#include "censorlab/censor.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "censorlab/detail/roots.hpp"
#include "censorlab/special_fn.hpp"

namespace censorlab {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;

// log of e^{sigma w - sigma^2/2} Phi(-w).
double log_second_term(double w, double sigma) {
    if (w > 0.0) {
        // phi(sigma - w) * Mills(w): no large exponent is ever formed.
        const double d = sigma - w;
        return -0.5 * d * d - kHalfLog2Pi + std::log(mills_ratio(w));
    }
    return sigma * w - 0.5 * sigma * sigma + log_norm_cdf_complement(w);
}

double log_add_exp(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a + std::log1p(std::exp(b - a));
}

// log b_tilde. For W < 0 the definitional sigma W + nu cancels badly (b_tilde
// is within e^{-W^2/2} of 1), so it is recovered from the censor identity
//   b_tilde Phi(-W) = 1 - e^{mu} Phi(W - sigma)
// where both sides are small perturbations of 1 handled by log1p.
double log_censor_price(double mu, double sigma, double w) {
    if (w < 0.0) {
        const double lower_mass = std::exp(mu + log_norm_cdf(w - sigma));
        if (lower_mass < 1.0) {
            return std::log1p(-lower_mass) - std::log1p(-norm_cdf(w));
        }
    }
    return sigma * w + mu - 0.5 * sigma * sigma;
}

// Asymptotic seed for the root: small-sigma expansion or, when it applies,
// the large-sigma expansion around sigma - mu_hat.
double seed_normal_censor(double mu, double sigma) {
    const double small = -mu / sigma + 0.5 * sigma;
    const double target = std::exp(-mu);
    if (sigma <= 1.0 || !(target > 0.0)) return small;
    const double mu_hat = -inv_norm_cdf(target);
    const double gap = sigma - mu_hat;
    if (gap <= 1.0) return small;
    const double large = gap - 1.0 / gap;
    const double g_small = std::fabs(censor_log_F(small, sigma) + mu);
    const double g_large = std::fabs(censor_log_F(large, sigma) + mu);
    return g_large < g_small ? large : small;
}

}  // namespace

double censor_log_F(double w, double sigma) {
    return log_add_exp(log_norm_cdf(w - sigma), log_second_term(w, sigma));
}

double censor_F(double w, double sigma) {
    if (w == std::numeric_limits<double>::infinity()) return 1.0;
    if (w == -std::numeric_limits<double>::infinity()) return 0.0;
    return norm_cdf(w - sigma) + std::exp(log_second_term(w, sigma));
}

CensorSolution solve_normal_censor(double mu, double sigma, double tol) {
    detail::require_positive(mu, "mu");
    detail::require_positive(sigma, "sigma");
    if (!(tol > 0.0 && tol <= 1e-8)) {
        throw std::domain_error("solve_normal_censor: tol must lie in (0, 1e-8]");
    }

    // log F + mu is increasing in w with a single root; solving in log space
    // keeps full relative accuracy when e^{-mu} is tiny.
    auto g = [mu, sigma](double w) { return censor_log_F(w, sigma) + mu; };

    const double w0 = seed_normal_censor(mu, sigma);
    const double half_width = std::max(1.0, 1e-3 * std::fabs(w0));
    const auto br = detail::expand_bracket(g, w0 - half_width, w0 + half_width);
    const auto root = detail::brent(g, br, 0.0, kCensorIterationCap);

    const double w = root.x;
    const double residual = std::fabs(censor_F(w, sigma) - std::exp(-mu));
    if (!(residual <= tol)) {
        std::ostringstream msg;
        msg << "solve_normal_censor: residual " << residual << " exceeds tolerance " << tol
            << " at mu=" << mu << ", sigma=" << sigma;
        throw SolverError(msg.str());
    }
    // b_tilde >= 1; rounding can leave a negative denormal when b_tilde - 1 underflows.
    const double log_b = std::max(0.0, log_censor_price(mu, sigma, w));
    return CensorSolution{
        .w = w,
        .b_tilde = std::exp(log_b),
        .log_b_tilde = log_b,
        .u = std::exp(-2.0 * log_b),
        .residual = residual,
        .iterations = br.evaluations + root.iterations,
    };
}

CensorSolution solve_normal_censor(const ScaledParams& scaled, double tol) {
    return solve_normal_censor(scaled.mu(), scaled.sigma(), tol);
}

double censor_price(double mu, double sigma) { return solve_normal_censor(mu, sigma).b_tilde; }

CensorSolution censor_time_path(const ModelParams& params, double theta) {
    return solve_normal_censor(ScaledParams::at_horizon(params, theta));
}

double optimal_forward_quantity(double b_tilde) {
    if (!(b_tilde > 0.0)) {
        throw std::domain_error("optimal_forward_quantity: b_tilde must be positive");
    }
    return 1.0 / (b_tilde * b_tilde);
}

double censor_identity_residual(double mu, double sigma, double w) {
    const double log_b = sigma * w + mu - 0.5 * sigma * sigma;
    const double lower = std::exp(mu + log_norm_cdf(w - sigma));
    const double upper = std::exp(log_b + log_norm_cdf_complement(w));
    return std::fabs(lower + upper - 1.0);
}

}  // namespace censorlab
