#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "censorlab/params.hpp"

namespace censorlab {

/// Central-difference partials of the solved censor at one (mu, sigma).
struct CensorPartials {
    double db_dmu;
    double db_dsigma;
    double dw_dmu;
    double dw_dsigma;
};

/// Relative finite-difference step used when the caller passes h <= 0.
inline constexpr double kRelativeStep = 1e-6;

/// All four partials with steps h_mu = rel mu and h_sigma = rel sigma.
[[nodiscard]] CensorPartials censor_partials(double mu, double sigma,
                                             double rel_step = kRelativeStep);

/// d b_tilde / d mu by central difference with absolute step h (h <= 0: relative default).
[[nodiscard]] double db_dmu(double mu, double sigma, double h = 0.0);

/// d b_tilde / d sigma, as above.
[[nodiscard]] double db_dsigma(double mu, double sigma, double h = 0.0);

/// |W + sigma dW/dsigma - sigma - H(W)| with dW/dsigma from a central difference.
[[nodiscard]] double hazard_identity_residual(double mu, double sigma,
                                              double rel_step = kRelativeStep);

/// The unique w with exp(-sigma H(sigma - w) / 2) = F(w, sigma). Solved by
/// bisection on [-0.5, 1.5]; throws SolverError if the bracket holds no root
/// or more than one sign change.
[[nodiscard]] double omega_curve(double sigma);

struct OmegaSweep {
    std::vector<double> sigma;
    std::vector<double> omega;
    double peak_sigma;
    double peak_omega;
    /// Every root fell inside [0, 1].
    bool within_unit_bracket;
};

/// omega_curve on n evenly spaced sigma in [lo, hi].
[[nodiscard]] OmegaSweep omega_sweep(double lo, double hi, int n);

/// kappa sigma^2 - sigma H(sigma - W(kappa sigma^2, sigma)) / 2.
[[nodiscard]] double stationarity_residual(double kappa, double sigma);

struct StationaritySolution {
    double kappa;
    bool exists;
    double sigma_star;
    double mu_star;
    /// mu_star / mu_bar when a drift was supplied.
    std::optional<double> theta_star_b;
    /// |mu_star - sigma_star H(sigma_star - W(mu_star, sigma_star)) / 2|.
    double residual;
};

/// Largest sigma searched when no finite over-estimate of sigma_star exists.
inline constexpr double kStationaritySigmaCap = 50.0;

/// Stationary point of the censor time path in (sigma, mu) coordinates.
/// exists = false for kappa < 1/2, and whenever no sign change is found in
/// the search bracket.
[[nodiscard]] StationaritySolution stationarity_solve(double kappa,
                                                      std::optional<double> mu_bar = {});

enum class CensorShape { Increasing, Unimodal, Irregular };

[[nodiscard]] std::string_view to_string(CensorShape shape) noexcept;

struct ShapeReport {
    CensorShape shape;
    /// Grid location of the largest censor price.
    double peak_theta;
    double peak_log_b;
    /// Ratio between neighbouring grid points.
    double grid_ratio;
    /// Number of rise/fall reversals of b_bar along the grid.
    int direction_changes;
};

/// Censor time path b_bar(theta) on a log grid theta in [1e-3, 1e3].
[[nodiscard]] ShapeReport censor_shape_check(const ModelParams& params, int points = 400,
                                             double theta_min = 1e-3, double theta_max = 1e3);

}  // namespace censorlab
