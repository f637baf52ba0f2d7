#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "polyhelix/fd.hpp"

using namespace polyhelix;

TEST(Fd, ClassicalWeights) {
    const auto w = fornberg_weights(1, {-1, 0, 1});
    EXPECT_NEAR(w[0], -0.5, 1e-15);
    EXPECT_NEAR(w[1], 0.0, 1e-15);
    EXPECT_NEAR(w[2], 0.5, 1e-15);
    const auto w2 = fornberg_weights(2, {-1, 0, 1});
    EXPECT_NEAR(w2[0], 1.0, 1e-15);
    EXPECT_NEAR(w2[1], -2.0, 1e-15);
    EXPECT_NEAR(w2[2], 1.0, 1e-15);
    EXPECT_THROW((void)fornberg_weights(3, {0, 1, 2}), std::invalid_argument);
}

TEST(Fd, WeightsAnnihilateLowPowers) {
    // the m-th derivative stencil is exact on polynomials of degree < m + 8
    for (int m = 1; m <= 7; ++m) {
        const auto w = central_weights(m);
        const int p = central_half_width(m);
        for (int deg = 0; deg < m + 8; ++deg) {
            double s = 0.0, mag = 0.0;
            for (int k = -p; k <= p; ++k) {
                const double t = w[static_cast<std::size_t>(k + p)] * std::pow(k, deg);
                s += t;
                mag += std::abs(t);
            }
            const double want = deg == m ? std::tgamma(m + 1.0) : 0.0;
            EXPECT_NEAR(s, want, 1e-13 * mag) << "m=" << m << " deg=" << deg;
        }
    }
}

TEST(Fd, DerivativeOfSine) {
    const double h = 1e-3;
    std::vector<double> f;
    for (int i = 0; i <= 3000; ++i) f.push_back(std::sin(i * h));
    for (int m = 1; m <= 3; ++m) {
        const auto d = fd_derivative(f, h, m);
        double err = 0.0;
        int valid = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (!std::isfinite(d[i])) continue;
            ++valid;
            const double x = static_cast<double>(i) * h;
            const double exact = m == 1 ? std::cos(x) : m == 2 ? -std::sin(x) : -std::cos(x);
            err = std::max(err, std::abs(d[i] - exact));
        }
        // rounding grows like eps / H^m with H = 0.01
        EXPECT_LT(err, 1e-16 * std::pow(100.0, m) * 100) << m;
        EXPECT_GT(valid, 2800);
        EXPECT_FALSE(std::isfinite(d.front()));
    }
}

TEST(Fd, StrideKeepsSpacing) {
    EXPECT_EQ(fd_stride(1e-3), 10);
    EXPECT_EQ(fd_stride(0.01), 1);
    EXPECT_EQ(fd_stride(0.05), 1);
    EXPECT_EQ(fd_stride(3e-3), 4);
    EXPECT_THROW((void)fd_stride(0.0), std::invalid_argument);
}

TEST(Fd, SpectralExactOnTrig) {
    const std::size_t N = 128;
    const double P = 2 * std::numbers::pi;
    std::vector<double> f(N);
    for (std::size_t j = 0; j < N; ++j) {
        const double x = P * static_cast<double>(j) / N;
        f[j] = std::cos(3 * x) + 0.5 * std::sin(7 * x);
    }
    const auto d6 = spectral_derivative(f, P, 6);
    for (std::size_t j = 0; j < N; ++j) {
        const double x = P * static_cast<double>(j) / N;
        EXPECT_NEAR(d6[j], -729 * std::cos(3 * x) - 0.5 * 117649 * std::sin(7 * x), 1e-7);
    }
}

TEST(Fd, SpectralNoiseFloorAndRandomPeriod) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.5, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double P = U(rng);
        const std::size_t N = 64 + 2 * static_cast<std::size_t>(trial);
        std::vector<double> f(N);
        for (std::size_t j = 0; j < N; ++j) f[j] = std::sin(2 * std::numbers::pi * static_cast<double>(j) / N);
        const auto d = spectral_derivative(f, P, 1);
        const double w = 2 * std::numbers::pi / P;
        for (std::size_t j = 0; j < N; ++j)
            EXPECT_NEAR(d[j], w * std::cos(2 * std::numbers::pi * static_cast<double>(j) / N), 1e-11 * w);
    }
}
