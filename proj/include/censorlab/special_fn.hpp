#pragma once

// Standard-normal primitives shared by every other module.
//
// All functions are pure. Tail quantities are evaluated without forming
// 1 - Phi(x), so relative accuracy holds far into the upper tail
// (down to the bottom of the normal double range, x ~ 37.5).

namespace censorlab {

/// Standard normal density e^{-x^2/2} / sqrt(2 pi).
[[nodiscard]] double norm_pdf(double x) noexcept;

/// Standard normal CDF. Saturates to 0 / 1 at -inf / +inf.
[[nodiscard]] double norm_cdf(double x) noexcept;

/// Upper tail 1 - Phi(x), computed without cancellation.
[[nodiscard]] double norm_cdf_complement(double x) noexcept;

/// log(1 - Phi(x)); finite for every finite x (no underflow in the tail).
[[nodiscard]] double log_norm_cdf_complement(double x) noexcept;

/// log Phi(x).
[[nodiscard]] double log_norm_cdf(double x) noexcept;

/// Mills ratio (1 - Phi(x)) / phi(x). Continued fraction for x >= 8.
[[nodiscard]] double mills_ratio(double x) noexcept;

/// Normal hazard rate H(x) = phi(x) / Phi(-x), the reciprocal Mills ratio.
/// Always > max(x, 0); tends to 0 as x -> -inf.
[[nodiscard]] double hazard(double x) noexcept;

/// Inverse of norm_cdf on (0, 1). Throws std::domain_error outside.
[[nodiscard]] double inv_norm_cdf(double p);

}  // namespace censorlab
