#pragma once

#include "censorlab/params.hpp"

namespace censorlab {

/// Default tolerance on |F(W, sigma) - e^{-mu}|.
inline constexpr double kDefaultCensorTol = 1e-12;
inline constexpr int kCensorIterationCap = 200;

/// Solved censor for one (mu, sigma).
///
/// w is the normal censor W(mu, sigma), the root of e^{-mu} = F(W, sigma).
/// b_tilde = exp(sigma W + mu - sigma^2 / 2) is the censor price: the largest
/// spot price at which topping up inventory is exercised. For sigma above
/// roughly 37 b_tilde exceeds the double range; log_b_tilde stays finite and
/// b_tilde saturates to +inf (u then underflows to 0).
struct CensorSolution {
    double w;
    double b_tilde;
    double log_b_tilde;
    /// Optimal forward quantity b_tilde^{-2} for f(x) = 2 sqrt(x).
    double u;
    /// |F(w, sigma) - e^{-mu}| at the returned w.
    double residual;
    int iterations;
};

/// F(w, sigma) = Phi(w - sigma) + e^{sigma w - sigma^2/2} Phi(-w).
/// Uses the hazard form phi(sigma - w) M(w) for the second term when w > 0,
/// so nothing overflows for any finite (w, sigma).
[[nodiscard]] double censor_F(double w, double sigma);

/// log F(w, sigma); finite even where F underflows.
[[nodiscard]] double censor_log_F(double w, double sigma);

/// Solve e^{-mu} = F(W, sigma) for W. Requires mu, sigma > 0 and 0 < tol <= 1e-8.
/// Throws std::domain_error on bad input and SolverError if the root cannot be
/// reached within the iteration cap.
[[nodiscard]] CensorSolution solve_normal_censor(double mu, double sigma,
                                                 double tol = kDefaultCensorTol);

[[nodiscard]] CensorSolution solve_normal_censor(const ScaledParams& scaled,
                                                 double tol = kDefaultCensorTol);

/// Censor price b_tilde(mu, sigma) > 1.
[[nodiscard]] double censor_price(double mu, double sigma);

/// The censor along the time path: b_bar(theta) = b_tilde(mu_bar theta, sigma_bar sqrt(theta)).
[[nodiscard]] CensorSolution censor_time_path(const ModelParams& params, double theta);

/// u = I(b) = b^{-2}, the inverse of f'(x) = x^{-1/2}.
[[nodiscard]] double optimal_forward_quantity(double b_tilde);

/// |e^{mu} Phi(W - sigma) + b Phi(-W) - 1| with b = exp(sigma W + mu - sigma^2/2)
/// evaluated from its definition (independent of the stored log_b_tilde).
/// This is the right-censored price martingale normalised to b_0 = 1.
[[nodiscard]] double censor_identity_residual(double mu, double sigma, double w);

}  // namespace censorlab
