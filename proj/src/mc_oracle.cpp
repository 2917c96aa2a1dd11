#include "censorlab/mc_oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "censorlab/censor.hpp"
#include "censorlab/special_fn.hpp"

namespace censorlab {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix_finalize(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Lognormal quantile midpoints exp(nu + sigma Phi^{-1}((j + 1/2) / n)).
Eigen::ArrayXd quantile_prices(const ScaledParams& scaled, int nodes) {
    if (nodes < 2) throw std::domain_error("quantile_prices: need at least 2 nodes");
    Eigen::ArrayXd z(nodes);
    for (int j = 0; j < nodes; ++j) z[j] = inv_norm_cdf((j + 0.5) / nodes);
    return (scaled.nu() + scaled.sigma() * z).exp();
}

double objective_on_nodes(const Eigen::ArrayXd& b, const Eigen::ArrayXd& target, double u) {
    // target = b^-2, the unconstrained optimum of 2 sqrt(x) - b x.
    const Eigen::ArrayXd topped = target.max(u);
    const Eigen::ArrayXd z = (target - u).max(0.0);
    return (2.0 * topped.sqrt() - b * z).mean() - u;
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t index) const noexcept {
    return splitmix_finalize(seed_ + (index + 1) * kGolden);
}

double CounterRng::uniform(std::uint64_t index) const noexcept {
    return (static_cast<double>(bits(index) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t index) const { return inv_norm_cdf(uniform(index)); }

bool McEstimate::agrees_with(double target, double k) const noexcept {
    return std::fabs(mean - target) <= k * std_error;
}

McEstimate summarize(const Eigen::ArrayXd& draws) {
    const Eigen::Index n = draws.size();
    if (n < 1) throw std::domain_error("summarize: empty sample");
    const double mean = draws.mean();
    if (n == 1) return {mean, std::numeric_limits<double>::infinity(), n};
    const double var = (draws - mean).square().sum() / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

PriceSample sample_prices(const ScaledParams& scaled, Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw std::domain_error("sample_prices: n must be at least 1");
    const CounterRng rng(seed);
    Eigen::ArrayXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z[i] = rng.normal(static_cast<std::uint64_t>(i));
    return PriceSample{(scaled.nu() + scaled.sigma() * z).exp(), seed};
}

McEstimate mc_censored_mean(const PriceSample& sample, double beta) {
    if (!(beta > 0.0)) throw std::domain_error("mc_censored_mean: beta must be positive");
    return summarize(sample.values.min(beta));
}

McEstimate mc_expected_profit(const PriceSample& sample, double b_tilde) {
    if (!(b_tilde > 1.0)) throw std::domain_error("mc_expected_profit: b_tilde must exceed 1");
    return summarize(sample.values.inverse().max(1.0 / b_tilde));
}

McEstimate mc_martingale_check(const ScaledParams& scaled, Eigen::Index n, std::uint64_t seed) {
    if (n < kMartingaleMinSamples) {
        throw std::domain_error("mc_martingale_check: n must be at least 10000");
    }
    const double b_tilde = solve_normal_censor(scaled).b_tilde;
    return mc_censored_mean(sample_prices(scaled, n, seed), b_tilde);
}

double brute_force_objective(const ScaledParams& scaled, double u, int price_nodes) {
    if (!(u >= 0.0)) throw std::domain_error("brute_force_objective: u must be non-negative");
    const Eigen::ArrayXd b = quantile_prices(scaled, price_nodes);
    return objective_on_nodes(b, b.square().inverse(), u);
}

BruteForceResult brute_force_optimal_u(const ScaledParams& scaled, BruteForceGrid grid) {
    if (grid.u_steps < 200) throw std::domain_error("brute_force_optimal_u: need >= 200 u steps");
    const Eigen::ArrayXd b = quantile_prices(scaled, grid.price_nodes);
    const Eigen::ArrayXd target = b.square().inverse();
    const double step = 1.0 / grid.u_steps;

    BruteForceResult out{};
    out.u_step = step;
    out.objective_star = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= grid.u_steps; ++k) {
        const double u = k * step;
        const double j = objective_on_nodes(b, target, u);
        if (k == 0) out.objective_at_zero = j;
        if (k == grid.u_steps) out.objective_at_one = j;
        if (j > out.objective_star) {
            out.objective_star = j;
            out.u_star = u;
        }
    }
    return out;
}

}  // namespace censorlab
