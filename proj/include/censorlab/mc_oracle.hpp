#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "censorlab/params.hpp"

namespace censorlab {

/// Standard-error multiplier for MC agreement checks (about 99.7% coverage).
inline constexpr double kDefaultSeMultiplier = 3.0;

/// Counter-based SplitMix64 stream: draw i is mix(seed + (i + 1) * 0x9E3779B97F4A7C15),
/// mapped to the open unit interval as ((x >> 11) + 0.5) * 2^-53. Any draw can be
/// regenerated independently of the others.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    [[nodiscard]] std::uint64_t bits(std::uint64_t index) const noexcept;
    [[nodiscard]] double uniform(std::uint64_t index) const noexcept;
    /// Inverse-CDF standard normal.
    [[nodiscard]] double normal(std::uint64_t index) const;

  private:
    std::uint64_t seed_;
};

/// Terminal prices b = exp(nu + sigma Z).
struct PriceSample {
    Eigen::ArrayXd values;
    std::uint64_t seed;

    [[nodiscard]] Eigen::Index n() const noexcept { return values.size(); }
};

struct McEstimate {
    double mean;
    /// Sample standard deviation (n - 1 denominator) over sqrt(n).
    double std_error;
    Eigen::Index n;

    /// |mean - target| <= k std_error.
    [[nodiscard]] bool agrees_with(double target, double k = kDefaultSeMultiplier) const noexcept;
};

[[nodiscard]] McEstimate summarize(const Eigen::ArrayXd& draws);

/// Throws std::domain_error for n < 1.
[[nodiscard]] PriceSample sample_prices(const ScaledParams& scaled, Eigen::Index n,
                                        std::uint64_t seed);

/// E[b ^ beta]; beta may be +inf.
[[nodiscard]] McEstimate mc_censored_mean(const PriceSample& sample, double beta);

/// E[1 / (b ^ b_tilde)]; b_tilde = +inf gives the uncensored E[1/b].
[[nodiscard]] McEstimate mc_expected_profit(const PriceSample& sample, double b_tilde);

/// Smallest sample size accepted by mc_martingale_check.
inline constexpr Eigen::Index kMartingaleMinSamples = 10'000;

/// Solve the censor, then estimate E[b ^ b_tilde], which should equal 1.
[[nodiscard]] McEstimate mc_martingale_check(const ScaledParams& scaled, Eigen::Index n,
                                             std::uint64_t seed);

struct BruteForceGrid {
    /// Number of steps on the u grid over [0, 1].
    int u_steps = 200;
    /// Quantile midpoints of the lognormal law.
    int price_nodes = 10'000;
};

struct BruteForceResult {
    double u_star;
    double u_step;
    double objective_star;
    double objective_at_zero;
    double objective_at_one;
};

/// Expected profit of forward quantity u when the top-up z(b) = max(0, b^-2 - u)
/// is chosen after the price is seen: E[2 sqrt(z + u) - b z] - u.
[[nodiscard]] double brute_force_objective(const ScaledParams& scaled, double u,
                                           int price_nodes = BruteForceGrid{}.price_nodes);

/// Grid argmax of brute_force_objective over u in [0, 1]. Never uses the censor.
[[nodiscard]] BruteForceResult brute_force_optimal_u(const ScaledParams& scaled,
                                                     BruteForceGrid grid = {});

}  // namespace censorlab
