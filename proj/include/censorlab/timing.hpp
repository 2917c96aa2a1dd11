#pragma once

#include <optional>
#include <string_view>

#include "censorlab/params.hpp"

namespace censorlab {

enum class TimingBranch { Exact, CaseI, CaseII };

[[nodiscard]] std::string_view to_string(TimingBranch branch) noexcept;

/// Optimal re-stocking date on (0, 1).
struct TimingSolution {
    double theta_star;
    /// R(theta_star); only set for the exact branch.
    std::optional<double> r_value;
    /// |(g_bar - 1) / g_bar' - (1 - theta)| at theta_star.
    double foc_residual;
    TimingBranch branch;
    /// theta_star came from the first sign change of R' on the scan grid.
    bool is_smallest_root;
};

inline constexpr double kDefaultFocTol = 1e-7;
inline constexpr int kFocScanPoints = 256;
inline constexpr double kFocEndpointMargin = 1e-9;

/// R(theta) = theta + (1 - theta) g_bar(theta) on [0, 1].
[[nodiscard]] double revenue(double theta, const ModelParams& params);

/// Central difference of g_bar with step 1e-6 max(theta, 1), shrunk near 0.
[[nodiscard]] double g_bar_derivative(double theta, const ModelParams& params);

/// R'(theta) = 1 - g_bar + (1 - theta) g_bar'.
[[nodiscard]] double revenue_derivative(double theta, const ModelParams& params);

/// |(g_bar - 1) / g_bar' - (1 - theta)|.
[[nodiscard]] double foc_residual(double theta, const ModelParams& params);

/// Smallest interior stationary point of R, checked to be a local maximum.
/// Throws SolverError if R' has no + to - sign change on (0, 1), if the
/// residual exceeds tol, or if the two-sided probe fails.
[[nodiscard]] TimingSolution solve_foc(const ModelParams& params, double tol = kDefaultFocTol);

/// Stationary point when g_bar - 1 is proportional to theta e^{-alpha theta}:
/// theta = 1/2 - (alpha/4) / (1 + sqrt(1 + alpha^2/4)). Requires alpha > 0.
[[nodiscard]] double theta_case_i(double alpha);

/// theta / (1 - alpha theta) - (1 - theta).
[[nodiscard]] double case_i_residual(double alpha, double theta);

struct CaseIiTiming {
    /// Root on (0, 1) of (1 - e^{-alpha theta}) / alpha = 1 - theta.
    double exact;
    /// 1 / (1 + sqrt(1 - alpha/2)); empty for alpha > 2.
    std::optional<double> approx;
};

/// Stationary point when g_bar = e^{alpha theta}. Requires alpha > 0.
[[nodiscard]] CaseIiTiming theta_case_ii(double alpha);

/// (1 - e^{-alpha theta}) / alpha - (1 - theta).
[[nodiscard]] double case_ii_residual(double alpha, double theta);

}  // namespace censorlab
