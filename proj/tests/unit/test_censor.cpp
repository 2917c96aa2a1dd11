#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "censorlab/asymptotics.hpp"
#include "censorlab/censor.hpp"
#include "censorlab/special_fn.hpp"
#include "oracles.hpp"

using namespace censorlab;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    return v;
}

}  // namespace

TEST(Params, ScaledParamsDeriveNu) {
    const auto p = ModelParams::from_variance(0.05, 0.07);
    EXPECT_NEAR(p.sigma_bar(), std::sqrt(0.07), 1e-16);
    const auto s = ScaledParams::at_horizon(p, 4.0);
    EXPECT_DOUBLE_EQ(s.mu(), 0.2);
    EXPECT_DOUBLE_EQ(s.sigma(), 2.0 * std::sqrt(0.07));
    EXPECT_EQ(s.nu(), s.mu() - 0.5 * s.sigma() * s.sigma());
    EXPECT_EQ(s.theta(), 4.0);
    EXPECT_EQ(ScaledParams(0.1, 0.2).theta(), 1.0);
}

TEST(Params, RejectNonPositive) {
    EXPECT_THROW(ModelParams(0.0, 0.1), std::domain_error);
    EXPECT_THROW(ModelParams(0.05, -0.1), std::domain_error);
    EXPECT_THROW(ModelParams::from_variance(0.05, 0.0), std::domain_error);
    EXPECT_THROW(ScaledParams(0.1, 0.0), std::domain_error);
    EXPECT_THROW(ScaledParams::at_horizon(ModelParams(0.05, 0.2), 0.0), std::domain_error);
}

TEST(CensorF, ZeroVolatilityIsOne) {
    for (double w : {-5.0, -1.0, 0.0, 0.7, 3.0}) EXPECT_NEAR(censor_F(w, 0.0), 1.0, 1e-15);
}

TEST(CensorF, Limits) {
    EXPECT_EQ(censor_F(-std::numeric_limits<double>::infinity(), 1.0), 0.0);
    EXPECT_EQ(censor_F(std::numeric_limits<double>::infinity(), 1.0), 1.0);
    // Far left only the second term survives: e^{sigma w - sigma^2/2}.
    EXPECT_NEAR(censor_F(-38.0, 1.0), std::exp(-38.5), 1e-12 * std::exp(-38.5));
    EXPECT_NEAR(censor_F(60.0, 1.0), 1.0, 1e-15);
}

TEST(CensorF, LargeSigmaShiftedArgument) {
    // F(sigma - 1, sigma) = Phi-bar(1) + e^{sigma^2/2 - sigma} Phi-bar(sigma - 1); the second
    // term is phi(1)/(sigma - 1) (1 - (sigma - 1)^-2 + ...) by the tail series.
    for (double sigma : {50.0, 500.0}) {
        const double x = sigma - 1.0;
        const double x2 = x * x;
        const double tail =
            oracle::gauss_pdf(1.0) / x * (1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2));
        EXPECT_NEAR(censor_F(x, sigma), norm_cdf_complement(1.0) + tail, 1e-13) << sigma;
    }
}

TEST(CensorF, StrictlyIncreasing) {
    for (double sigma : {0.01, 0.3, 1.0, 5.0, 20.0, 50.0}) {
        double prev_f = censor_F(-40.0, sigma);
        double prev_log = censor_log_F(-40.0, sigma);
        for (double w = -39.9; w <= 40.0; w += 0.1) {
            const double f = censor_F(w, sigma);
            const double lf = censor_log_F(w, sigma);
            ASSERT_GE(f, 0.0);
            ASSERT_TRUE(std::isfinite(lf));
            ASSERT_LE(f, 1.0 + 1e-15);
            EXPECT_GE(f, prev_f) << "sigma=" << sigma << " w=" << w;
            // Strict where F is not rounded to 1.
            if (f < 1.0 - 1e-14) EXPECT_GT(lf, prev_log) << "sigma=" << sigma << " w=" << w;
            prev_f = f;
            prev_log = lf;
        }
    }
}

TEST(CensorF, LogFormAgreesWithDirect) {
    for (double sigma : {0.1, 1.0, 4.0}) {
        for (double w = -5.0; w <= 5.0; w += 0.5) {
            EXPECT_NEAR(std::exp(censor_log_F(w, sigma)), censor_F(w, sigma),
                        1e-14 * censor_F(w, sigma));
        }
    }
}

TEST(SolveNormalCensor, MatchesReferenceValues) {
    // mpmath, 40 digits.
    struct Case {
        double mu, sigma, w, log_b;
    };
    const Case cases[] = {
        {0.05, 0.3, 0.83022080615666371236, 0.25406624184699910893},
        {0.5, 2.0, 1.8220379237578364535, 2.1440758475156729069},
        {0.02, 0.1, 0.5653554702400509387, 0.071535547024005096453},
        {2.0, 5.0, 3.6769326850444476969, 7.8846634252222384843},
        {0.05, 6.0, 7.5104910179130494694, 27.112946107478296819},
    };
    for (const auto& c : cases) {
        const auto s = solve_normal_censor(c.mu, c.sigma);
        EXPECT_NEAR(s.w, c.w, 1e-13 * std::max(1.0, std::fabs(c.w))) << c.mu << "," << c.sigma;
        EXPECT_NEAR(s.log_b_tilde, c.log_b, 1e-12 * std::max(1.0, c.log_b));
    }
}

TEST(SolveNormalCensor, MatchesBisectionOracle) {
    for (double mu : {0.01, 0.05, 0.3, 1.0}) {
        for (double sigma : {0.05, 0.3, 1.0, 3.0}) {
            const double ref = oracle::censor_w(mu, sigma);
            EXPECT_NEAR(solve_normal_censor(mu, sigma).w, ref, 1e-9) << mu << "," << sigma;
        }
    }
}

TEST(SolveNormalCensor, SolutionFields) {
    const auto s = solve_normal_censor(0.05, 0.3);
    EXPECT_GT(s.b_tilde, 1.0);
    EXPECT_NEAR(s.b_tilde, std::exp(0.3 * s.w + 0.05 - 0.045), 1e-14);
    EXPECT_DOUBLE_EQ(s.u, 1.0 / (s.b_tilde * s.b_tilde));
    EXPECT_LE(s.residual, kDefaultCensorTol);
    EXPECT_GT(s.iterations, 0);
    EXPECT_LE(s.iterations, 2 * kCensorIterationCap);
}

TEST(SolveNormalCensor, ResidualAndPriceOnFullGrid) {
    for (double mu : log_grid(1e-3, 5.0, 15)) {
        for (double sigma : log_grid(1e-3, 50.0, 15)) {
            CensorSolution s{};
            ASSERT_NO_THROW(s = solve_normal_censor(mu, sigma)) << mu << "," << sigma;
            EXPECT_LE(s.residual, kDefaultCensorTol) << mu << "," << sigma;
            EXPECT_TRUE(std::isfinite(s.w));
            // log b_tilde ~ e^{-(mu/sigma)^2/2} underflows past mu/sigma ~ 38, and
            // b_tilde itself rounds to 1 once that is below machine epsilon.
            if (mu / sigma <= 5.0) EXPECT_GT(s.b_tilde, 1.0) << mu << "," << sigma;
            if (mu / sigma <= 30.0) {
                EXPECT_GT(s.log_b_tilde, 0.0) << mu << "," << sigma;
            } else {
                EXPECT_GE(s.log_b_tilde, 0.0) << mu << "," << sigma;
            }
        }
    }
}

TEST(SolveNormalCensor, CensoredMartingaleIdentity) {
    for (double mu : {0.02, 0.05, 0.2, 1.0}) {
        for (double sigma : {0.01, 0.1, std::sqrt(0.07), 1.0, 5.0, 20.0}) {
            const auto s = solve_normal_censor(mu, sigma);
            EXPECT_LE(censor_identity_residual(mu, sigma, s.w), 1e-10) << mu << "," << sigma;
            // b_tilde Phi(-W) < 1; both factors round to 1 when mu/sigma is large.
            const double lhs = s.log_b_tilde + log_norm_cdf_complement(s.w);
            if (mu / sigma <= 5.0) {
                EXPECT_LT(lhs, 0.0) << mu << "," << sigma;
            } else {
                EXPECT_LE(lhs, 0.0) << mu << "," << sigma;
            }
        }
    }
}

TEST(SolveNormalCensor, SmallSigmaExpansion) {
    const double sigma = 0.01;
    const double w = solve_normal_censor(0.05, sigma).w;
    EXPECT_LE(std::fabs(w - (-0.05 / sigma + 0.5 * sigma)), 0.01 * sigma);
    // sigma W -> -mu.
    EXPECT_LE(std::fabs(1e-3 * solve_normal_censor(0.05, 1e-3).w + 0.05), 0.01);
}

TEST(SolveNormalCensor, LargeSigmaExpansion) {
    const double sigma = 40.0;
    const double mu_hat = -inv_norm_cdf(std::exp(-0.05));
    const double approx = sigma - mu_hat - 1.0 / (sigma - mu_hat);
    EXPECT_LE(std::fabs(solve_normal_censor(0.05, sigma).w - approx) * (sigma - mu_hat), 0.1);
}

TEST(CensorPrice, TendsToOneFromAbove) {
    double prev = std::numeric_limits<double>::infinity();
    for (double sigma : {0.1, 0.05, 0.02, 0.01}) {
        const double b = censor_price(0.05, sigma);
        EXPECT_GT(b, 1.0);
        EXPECT_LT(b, prev);
        prev = b;
    }
    EXPECT_LT(censor_price(0.05, 0.01) - 1.0, 1e-6);
}

TEST(CensorPrice, OverflowKeepsLogFinite) {
    const auto s = solve_normal_censor(0.05, 45.0);
    EXPECT_TRUE(std::isfinite(s.log_b_tilde));
    EXPECT_GT(s.log_b_tilde, 700.0);
    EXPECT_EQ(s.b_tilde, std::numeric_limits<double>::infinity());
    EXPECT_EQ(s.u, 0.0);
}

TEST(CensorTimePath, DelegatesToScaledParams) {
    const auto p = ModelParams::from_variance(0.05, 0.07);
    const auto a = censor_time_path(p, 0.5);
    const auto b = solve_normal_censor(0.025, std::sqrt(0.07) * std::sqrt(0.5));
    EXPECT_EQ(a.w, b.w);
    EXPECT_EQ(a.b_tilde, b.b_tilde);
}

TEST(CensorTimePath, IncreasingWhenVarianceDominates) {
    const auto p = ModelParams::from_variance(0.05, 0.2);
    double prev = 0.0;
    for (double theta : log_grid(1e-3, 1e3, 60)) {
        const double lb = censor_time_path(p, theta).log_b_tilde;
        EXPECT_GT(lb, prev) << "theta=" << theta;
        prev = lb;
    }
}

TEST(CensorTimePath, InteriorPeakWhenDriftDominates) {
    const auto p = ModelParams::from_variance(0.05, 0.05);
    const double early = censor_time_path(p, 0.01).log_b_tilde;
    const double mid = censor_time_path(p, 7.0).log_b_tilde;
    const double late = censor_time_path(p, 1000.0).log_b_tilde;
    EXPECT_GT(mid, early);
    EXPECT_GT(mid, late);
}

TEST(OptimalForwardQuantity, Algebra) {
    EXPECT_EQ(optimal_forward_quantity(1.0), 1.0);
    EXPECT_EQ(optimal_forward_quantity(2.0), 0.25);
    const double u = optimal_forward_quantity(censor_price(0.05, 0.3));
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_THROW((void)optimal_forward_quantity(0.0), std::domain_error);
    EXPECT_THROW((void)optimal_forward_quantity(-1.0), std::domain_error);
}

TEST(SolveNormalCensor, DomainErrors) {
    EXPECT_THROW((void)solve_normal_censor(0.0, 0.3), std::domain_error);
    EXPECT_THROW((void)solve_normal_censor(0.05, 0.0), std::domain_error);
    EXPECT_THROW((void)solve_normal_censor(-0.05, 0.3), std::domain_error);
    EXPECT_THROW((void)solve_normal_censor(0.05, 0.3, 1e-6), std::domain_error);
    EXPECT_THROW((void)solve_normal_censor(0.05, 0.3, 0.0), std::domain_error);
    EXPECT_THROW((void)solve_normal_censor(std::nan(""), 0.3), std::domain_error);
}
