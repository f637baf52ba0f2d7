#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "polyhelix/spherecurves.hpp"

using namespace polyhelix;

namespace {

TrigCurve hyperbola_curve() { return hyperbola_points_at(2.0).at(0).curve(); }

/// Random unit-speed curve with `blocks` blocks and maybe a constant block.
TrigCurve random_curve(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.2, 1.0), f(0.3, 3.0);
    std::uniform_int_distribution<int> nb(1, 3), coin(0, 1);
    const int n = nb(rng);
    const bool constant = coin(rng) == 1;
    std::vector<TrigBlock> blocks;
    double total = 0;
    for (int i = 0; i < n; ++i) {
        blocks.push_back({f(rng) + i * 3.1, u(rng)});
        total += blocks.back().weight;
    }
    double w0 = constant ? u(rng) : 0.0;
    total += w0;
    for (auto& b : blocks) b.weight /= total;
    w0 /= total;
    // rescale frequencies to unit speed
    double m1 = 0;
    for (const auto& b : blocks) m1 += b.weight * b.freq * b.freq;
    for (auto& b : blocks) b.freq /= std::sqrt(m1);
    return TrigCurve(blocks, w0);
}

} // namespace

TEST(SphereCurves, DerivativeNorms) {
    const TrigCurve c = hyperbola_curve();
    for (int l = 0; l <= 5; ++l) {
        const TrigVec d = derivative(c, l);
        for (double s : {0.0, 0.7, 3.3}) EXPECT_NEAR(norm(d(s)) * norm(d(s)), c.moment(l) + (l == 0 ? 0.0 : 0.0), 1e-11);
    }
    const TrigVec g2 = derivative(curves::biharmonic_circle(), 2);
    EXPECT_NEAR(norm(g2(1.1)) * norm(g2(1.1)), 2.0, 1e-14);
    const TrigCurve geo = curves::great_circle();
    const auto sum = derivative(geo, 2) + derivative(geo, 0);
    EXPECT_LT(sup_norm(sum, geo), 1e-15);
    EXPECT_THROW((void)derivative(geo, -1), std::invalid_argument);
}

TEST(SphereCurves, Identities) {
    EXPECT_LT(sphere_identities_check(curves::biharmonic_circle()), 1e-12);
    EXPECT_LT(sphere_identities_check(curves::tri_planar()), 1e-12);
    const TrigCurve slow({{1.0, 0.5}}, 0.5);
    EXPECT_NEAR(sphere_identities_check(slow), 0.5, 1e-14);
    std::mt19937 rng(3);
    for (int i = 0; i < 50; ++i) EXPECT_LT(sphere_identities_check(random_curve(rng)), 1e-11);
}

TEST(SphereCurves, BiharmonicResidual) {
    EXPECT_LT(biharmonic_residual(curves::biharmonic_circle()), 1e-12);
    EXPECT_LT(biharmonic_residual(curves::biharmonic_two_freq(1.5)), 1e-12);
    EXPECT_LT(biharmonic_residual(curves::great_circle()), 1e-15);
    EXPECT_GT(biharmonic_residual(curves::tri_planar()), 0.1);
    EXPECT_THROW((void)biharmonic_residual(TrigCurve({{1.0, 0.5}}, 0.5)), std::invalid_argument);
}

TEST(SphereCurves, FourHarmonicResidual) {
    EXPECT_LT(fourharmonic_residual(curves::four_planar()), 1e-10);
    EXPECT_LT(fourharmonic_residual(curves::great_circle()), 1e-12);
    EXPECT_GT(fourharmonic_residual(curves::biharmonic_circle()), 0.1);
}

TEST(SphereCurves, IntrinsicTau) {
    EXPECT_LT(intrinsic_tau_residual(curves::tri_planar(), 3), 1e-10);
    EXPECT_LT(intrinsic_tau_residual(hyperbola_curve(), 3), 1e-9);
    EXPECT_LT(intrinsic_tau_residual(curves::four_planar(), 4), 1e-9);
    EXPECT_LT(intrinsic_tau_residual(curves::biharmonic_circle(), 2), 1e-10);
    EXPECT_GT(intrinsic_tau_residual(curves::biharmonic_circle(), 4), 0.1);
    EXPECT_GT(intrinsic_tau_residual(curves::tri_planar(), 2), 0.1);
    EXPECT_THROW((void)intrinsic_tau_residual(curves::tri_planar(), 5), std::invalid_argument);
}

TEST(SphereCurvesProperty, BiharmonicConsistency) {
    std::mt19937 rng(17);
    int agree = 0;
    std::vector<TrigCurve> sweep;
    for (int i = 0; i < 90; ++i) sweep.push_back(random_curve(rng));
    for (double a2 : {0.2, 0.7, 1.2, 1.5, 1.9}) sweep.push_back(curves::biharmonic_two_freq(a2));
    for (int i = 0; i < 5; ++i) sweep.push_back(curves::biharmonic_circle());
    for (const auto& c : sweep) {
        const double t = intrinsic_tau_residual(c, 2), b = biharmonic_residual(c);
        const bool both_small = t < 1e-9 && b < 1e-9, both_large = t > 1e-3 && b > 1e-3;
        agree += both_small || both_large;
    }
    EXPECT_EQ(agree, 100);
}

TEST(SphereCurvesProperty, FirstCurvatureFromSecondDerivative) {
    std::mt19937 rng(23);
    for (int i = 0; i < 30; ++i) {
        const TrigCurve c = random_curve(rng);
        const auto k = geodesic_curvatures_truncated(c, 1);
        EXPECT_NEAR(k.values[0] * k.values[0], c.moment(2) - 1.0, 1e-10);
    }
}

TEST(SphereCurves, Lagrangians) {
    // r = 2 single block: a^4 (alpha^2 - alpha^4)
    const TrigCurve circle = curves::biharmonic_circle();
    const auto L2 = lagrangian(circle, 2);
    EXPECT_NEAR(L2.reduced, 1.0, 1e-14);
    EXPECT_NEAR(L2.density, 1.0, 1e-13);
    EXPECT_LT(L2.density_spread, 1e-12);
    EXPECT_LT(L2.stationarity, 1e-12);
    // dL/dalpha at alpha^2 = 1/2 with a^2 = 2 held fixed
    auto L2_at = [](double alpha) {
        std::array<double, 5> S{};
        for (int l = 1; l < 5; ++l) S[l] = alpha * alpha * std::pow(2.0, l);
        return reduced_lagrangian(S, 2);
    };
    const double al = std::sqrt(0.5), ha = 1e-5;
    EXPECT_NEAR(L2_at(al), 16.0 * (0.5 - 0.25) / 4.0, 1e-14);
    EXPECT_NEAR((L2_at(al + ha) - L2_at(al - ha)) / (2 * ha), 0.0, 1e-8);

    const auto L3 = lagrangian(curves::tri_planar(), 3);
    EXPECT_NEAR(L3.density, L3.reduced, 1e-12);
    EXPECT_LT(L3.stationarity, 1e-10);
    // finite-difference weight gradient agrees with the analytic one
    auto reduced_at = [](double w) {
        const double a = std::sqrt(3.0);
        std::array<double, 5> S{};
        for (int l = 1; l < 5; ++l) S[l] = w * std::pow(a, 2 * l);
        return reduced_lagrangian(S, 3);
    };
    const double h = 1e-5;
    EXPECT_NEAR((reduced_at(1.0 / 3 + h) - reduced_at(1.0 / 3 - h)) / (2 * h), 0.0, 1e-8);

    const TrigCurve hyp = hyperbola_curve();
    for (int r : {2, 3, 4}) {
        const auto L = lagrangian(hyp, r);
        EXPECT_NEAR(L.density, L.reduced, 1e-11) << r;
        EXPECT_LT(L.density_spread, 1e-11) << r;
    }
    const auto L3h = lagrangian(hyp, 3);
    EXPECT_LT(L3h.stationarity, 1e-10);
    EXPECT_NEAR(*L3h.lambda, hyperbola_points_at(2.0)[0].lambda, 1e-12);
    EXPECT_THROW((void)lagrangian(hyp, 5), std::invalid_argument);
}

TEST(SphereCurves, FirstVariation) {
    const auto bump = [](const TrigCurve& c, std::uint64_t seed) { return random_bump(c.dim() + 1, seed); };
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        EXPECT_LT(std::abs(first_variation(curves::biharmonic_circle(), 2, bump(curves::biharmonic_circle(), seed))), 1e-5);
        EXPECT_LT(std::abs(first_variation(curves::tri_planar(), 3, bump(curves::tri_planar(), seed))), 1e-5);
        EXPECT_LT(std::abs(first_variation(curves::four_planar(), 4, bump(curves::four_planar(), seed))), 1e-5);
        EXPECT_LT(std::abs(first_variation(hyperbola_curve(), 3, bump(hyperbola_curve(), seed))), 1e-5);
    }
    EXPECT_GT(std::abs(first_variation(curves::tri_planar(), 2, bump(curves::tri_planar(), 1))), 1e-2);
    // perturbed frequencies are not critical
    for (double a : {1.5, std::sqrt(3.0) * 1.03}) {
        const TrigCurve c = curves::small_circle(a);
        EXPECT_GT(std::abs(first_variation(c, a < 1.6 ? 2 : 3, bump(c, 1))), 1e-3);
    }
    Bump short_dir{1.0, 1.0, {1.0}};
    EXPECT_THROW((void)first_variation(curves::tri_planar(), 3, short_dir), std::invalid_argument);
}

TEST(SphereCurves, Hyperbola) {
    const auto at0 = hyperbola_roots(0.0);
    EXPECT_NEAR(at0[1], 3.0, 1e-15);
    const auto pts = solve_tri_hyperbola(4000);
    ASSERT_FALSE(pts.empty());
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LE(pts[i - 1].y, pts[i].y);
    // geodesic x = y = 1 excluded
    for (const auto& p : hyperbola_points_at(1.0)) EXPECT_GT(std::abs(p.x - 1.0), 1e-9);
    const auto y2 = hyperbola_points_at(2.0);
    ASSERT_EQ(y2.size(), 1u);
    EXPECT_NEAR(y2[0].x, std::sqrt(2.0) - 1, 1e-15);
    EXPECT_NEAR(y2[0].alpha1sq, 1.0 / (3 - std::sqrt(2.0)), 1e-15);
    EXPECT_NEAR(y2[0].alpha3sq, 0.36940, 1e-5);
    for (std::size_t i = 0; i < pts.size(); i += 97) {
        const auto& p = pts[i];
        EXPECT_NEAR(p.x * p.x + p.y * p.y - 4 * (p.x + p.y) + 3 * p.x * p.y + 3, 0.0, 1e-12);
        EXPECT_NEAR(p.x * p.alpha1sq + p.y * p.alpha3sq, 1.0, 1e-12);
        EXPECT_LT(intrinsic_tau_residual(p.curve(), 3), 1e-8) << "y=" << p.y;
    }
    EXPECT_THROW((void)solve_tri_hyperbola(0), std::invalid_argument);
}

TEST(SphereCurves, LambdaSystem) {
    for (double a1 : {0.3, 0.5, 0.9}) {
        const double a3 = 1 - a1;
        const double lam = hyperbola_lambda(1.0, 1.0, a1, a3);
        const auto r = lambda_system_residual(1.0, 1.0, a1, a3, lam);
        for (double v : r) EXPECT_NEAR(v, 0.0, 1e-14);
    }
    const auto p = hyperbola_points_at(2.0)[0];
    for (double v : lambda_system_residual(p.x, p.y, p.alpha1sq, p.alpha3sq, p.lambda)) EXPECT_LT(std::abs(v), 1e-10);
    EXPECT_THROW((void)lambda_system_residual(3.0, 0.0, 1.0 / 3, 2.0 / 3, 0.0), std::invalid_argument);
}

TEST(SphereCurves, GeodesicCurvatures) {
    EXPECT_NEAR(geodesic_curvatures(curves::biharmonic_circle(), 1).values[0], 1.0, 1e-10);
    try {
        (void)geodesic_curvatures(curves::tri_planar(), 2);
        FAIL() << "expected a degenerate frame";
    } catch (const FrameDegeneracyError& e) {
        EXPECT_EQ(e.index(), 2);
        ASSERT_EQ(e.partial().size(), 1u);
        EXPECT_NEAR(e.partial()[0], std::sqrt(2.0), 1e-10);
    }
    const auto four = geodesic_curvatures_truncated(curves::four_planar(), 2);
    EXPECT_NEAR(four.values[0], std::sqrt(3.0), 1e-10);
    EXPECT_EQ(four.values[1], 0.0);
    const auto hyp = geodesic_curvatures(hyperbola_curve(), 2);
    EXPECT_NEAR(hyp.values[0] * hyp.values[0], 2 - std::sqrt(2.0), 1e-10);
    EXPECT_NEAR(hyp.values[1] * hyp.values[1], 2 * std::sqrt(2.0) - 2, 1e-10);
    EXPECT_LT(hyp.variation, 1e-10);
    EXPECT_THROW((void)geodesic_curvatures(curves::tri_planar(), 3), std::invalid_argument);
}

TEST(SphereCurves, CommonPeriod) {
    EXPECT_NEAR(*curves::biharmonic_circle().common_period(), 2 * std::numbers::pi / std::sqrt(2.0), 1e-14);
    const TrigCurve two({{1.0 / std::sqrt(2.5), 0.5}, {2.0 / std::sqrt(2.5), 0.5}}, 0.0);
    EXPECT_NEAR(*two.common_period(), 2 * std::numbers::pi * std::sqrt(2.5), 1e-12);
    EXPECT_FALSE(hyperbola_curve().common_period().has_value());
    EXPECT_NEAR(hyperbola_curve().window(), 64 * std::numbers::pi, 1e-12);
}
