#include "censorlab/timing.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "censorlab/detail/roots.hpp"
#include "censorlab/profit.hpp"

namespace censorlab {
namespace {

constexpr double kLocalMaxProbe = 1e-4;

void require_unit_interval(double theta, const char* where) {
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw std::domain_error(std::string(where) + ": theta must lie in [0, 1]");
    }
}

void require_alpha(double alpha, const char* where) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::domain_error(std::string(where) + ": alpha must be positive");
    }
}

}  // namespace

std::string_view to_string(TimingBranch branch) noexcept {
    switch (branch) {
        case TimingBranch::Exact: return "exact";
        case TimingBranch::CaseI: return "case_i";
        case TimingBranch::CaseII: return "case_ii";
    }
    return "unknown";
}

double revenue(double theta, const ModelParams& params) {
    require_unit_interval(theta, "revenue");
    if (theta == 1.0) return 1.0;
    return theta + (1.0 - theta) * g_bar(theta, params);
}

double g_bar_derivative(double theta, const ModelParams& params) {
    if (!(theta > 0.0)) throw std::domain_error("g_bar_derivative: theta must be positive");
    const double h = std::min(1e-6 * std::max(theta, 1.0), 0.5 * theta);
    return (g_bar(theta + h, params) - g_bar(theta - h, params)) / (2.0 * h);
}

double revenue_derivative(double theta, const ModelParams& params) {
    return 1.0 - g_bar(theta, params) + (1.0 - theta) * g_bar_derivative(theta, params);
}

double foc_residual(double theta, const ModelParams& params) {
    const double slope = g_bar_derivative(theta, params);
    return std::fabs((g_bar(theta, params) - 1.0) / slope - (1.0 - theta));
}

TimingSolution solve_foc(const ModelParams& params, double tol) {
    if (!(tol > 0.0)) throw std::domain_error("solve_foc: tol must be positive");
    auto r_prime = [&params](double t) { return revenue_derivative(t, params); };

    const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(kFocScanPoints, kFocEndpointMargin,
                                                          1.0 - kFocEndpointMargin);
    double prev_t = grid[0];
    double prev_f = r_prime(prev_t);
    std::optional<std::pair<double, double>> bracket;
    for (Eigen::Index i = 1; i < grid.size() && !bracket; ++i) {
        const double f = r_prime(grid[i]);
        if (prev_f > 0.0 && f <= 0.0) bracket = {prev_t, grid[i]};
        prev_t = grid[i];
        prev_f = f;
    }
    if (!bracket) throw SolverError("solve_foc: R' has no sign change on (0, 1)");

    const double theta = detail::bisect(r_prime, bracket->first, bracket->second).x;
    const double residual = foc_residual(theta, params);
    if (!(residual <= tol)) {
        std::ostringstream msg;
        msg << "solve_foc: residual " << residual << " exceeds tolerance " << tol;
        throw SolverError(msg.str());
    }

    const double r = revenue(theta, params);
    const double lo = std::max(theta - kLocalMaxProbe, 0.0);
    const double hi = std::min(theta + kLocalMaxProbe, 1.0);
    if (!(revenue(lo, params) < r && revenue(hi, params) < r)) {
        throw SolverError("solve_foc: stationary point is not a local maximum");
    }
    return TimingSolution{
        .theta_star = theta,
        .r_value = r,
        .foc_residual = residual,
        .branch = TimingBranch::Exact,
        .is_smallest_root = true,
    };
}

double theta_case_i(double alpha) {
    require_alpha(alpha, "theta_case_i");
    // 1/2 - (1/alpha)(sqrt(1 + alpha^2/4) - 1), rationalised to avoid cancellation.
    return 0.5 - 0.25 * alpha / (1.0 + std::sqrt(1.0 + 0.25 * alpha * alpha));
}

double case_i_residual(double alpha, double theta) {
    return theta / (1.0 - alpha * theta) - (1.0 - theta);
}

double case_ii_residual(double alpha, double theta) {
    return -std::expm1(-alpha * theta) / alpha - (1.0 - theta);
}

CaseIiTiming theta_case_ii(double alpha) {
    require_alpha(alpha, "theta_case_ii");
    auto f = [alpha](double t) { return case_ii_residual(alpha, t); };
    const detail::Bracket br{0.0, 1.0, f(0.0), f(1.0), 2};
    const double exact = detail::brent(f, br).x;

    std::optional<double> approx;
    if (alpha <= 2.0) approx = 1.0 / (1.0 + std::sqrt(1.0 - 0.5 * alpha));
    return {exact, approx};
}

}  // namespace censorlab
