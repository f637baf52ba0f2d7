#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "polyhelix/odelab.hpp"

using namespace polyhelix;

namespace {

double dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

} // namespace

TEST(Profile, Parse) {
    const auto p = CurvatureProfile::parse("k1=1/s,k2=2/s");
    ASSERT_EQ(p.size(), 2u);
    EXPECT_DOUBLE_EQ(p(0, 2.0), 0.5);
    EXPECT_DOUBLE_EQ(p(1, 4.0), 0.5);
    const auto q = CurvatureProfile::parse("k1=3/s^2");
    EXPECT_DOUBLE_EQ(q(0, 3.0), 1.0 / 3.0);
    const auto r = CurvatureProfile::parse("k2=0.5*s - 1, k1 = 2");
    EXPECT_DOUBLE_EQ(r(0, 7.0), 2.0);
    EXPECT_DOUBLE_EQ(r(1, 4.0), 1.0);
    EXPECT_EQ(CurvatureProfile::parse("k3=1").size(), 3u);
    EXPECT_THROW((void)CurvatureProfile::parse("k1=1/t"), std::invalid_argument);
    EXPECT_THROW((void)CurvatureProfile::parse("x=1"), std::invalid_argument);
    EXPECT_THROW((void)CurvatureProfile::parse("k1=1,k1=2"), std::invalid_argument);
    EXPECT_THROW((void)CurvatureProfile::parse("k1=2//s"), std::invalid_argument);
}

TEST(Profile, LaurentCalculus) {
    const Laurent a = Laurent::monomial(2.0, -1) + Laurent(3.0);
    EXPECT_DOUBLE_EQ(a.derivative()(2.0), -0.5);
    EXPECT_DOUBLE_EQ((a * a)(1.0), 25.0);
    EXPECT_TRUE(Laurent(3.0).derivative().is_zero());
    EXPECT_EQ(Laurent::monomial(1.0, -2).str(), "1/s^2");
}

TEST(Integrate, CircleCloses) {
    const double L = 2 * std::numbers::pi;
    const auto c = integrate_frenet(CurvatureProfile::constant({1.0, 0.0}), 3, 0, L, L / 2000);
    EXPECT_LT(dist(c.positions.front(), c.positions.back()), 1e-8);
    EXPECT_EQ(c.size(), 2001u);
}

TEST(Integrate, HelixKeepsFrame) {
    const auto c = integrate_frenet(CurvatureProfile::constant({1.0, 1.0}), 4, 0, 10, 1e-3);
    EXPECT_LT(c.gram_defect, 1e-9);
    const auto far = integrate_frenet(CurvatureProfile::constant({1.0, 1.0}), 4, 0, 100, 1e-2);
    EXPECT_LT(far.gram_defect, 1e-8);
}

TEST(Integrate, StepHalvingOrder) {
    const double L = 2 * std::numbers::pi;
    IntegrateOptions o;
    o.error_control = false;
    double prev = 0.0;
    for (int n : {32, 64, 128}) {
        const auto c = integrate_frenet(CurvatureProfile::constant({1.0}), 2, 0, L, L / n, o);
        const auto& p = c.positions.back();
        const double err = std::hypot(p[0] - std::sin(L), p[1] - (1 - std::cos(L)));
        if (prev > 0) {
            EXPECT_GE(prev / err, 8.0);
        }
        prev = err;
    }
}

TEST(Integrate, SingularSpanRejected) {
    const auto p = CurvatureProfile::parse("k1=1/s");
    EXPECT_THROW((void)integrate_frenet(p, 3, 0.0, 1.0, 1e-2), SingularityError);
    EXPECT_THROW((void)integrate_frenet(p, 3, 0.05, 1.0, 1e-2), SingularityError);
    EXPECT_NO_THROW((void)integrate_frenet(p, 3, 0.1, 1.0, 1e-2));
    EXPECT_THROW((void)integrate_frenet(CurvatureProfile::constant({1, 1, 1}), 3, 0, 1, 1e-2), std::invalid_argument);
}

TEST(Integrate, CurvatureRoundTrip) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(0.2, 2.0);
    for (int t = 0; t < 5; ++t) {
        const double k1 = U(rng), k2 = U(rng);
        const auto c = integrate_frenet(CurvatureProfile::constant({k1, k2}), 3, 0, 5, 1e-3);
        const auto rec = recover_curvatures(c, 2);
        EXPECT_NEAR(rec.mean[0], k1, 1e-6);
        EXPECT_NEAR(rec.mean[1], k2, 1e-6);
        EXPECT_LT(rec.spread[0], 1e-6);
    }
}

TEST(CurvatureOde, Examples) {
    const auto grid = uniform_grid(1, 3, 101);
    EXPECT_LT(curvature_ode_residual(CurvatureProfile::parse("k1=1/s,k2=2/s"), 0.0, grid), 1e-13);
    EXPECT_EQ(curvature_ode_residual(CurvatureProfile::constant({1.5, 0.0}), -std::pow(1.5, 4), grid), 0.0);
    const double alpha = 1.2, beta = std::sqrt(4 - alpha * alpha);
    const auto vals = curvature_ode_values(CurvatureProfile::power_law({alpha, beta}, 1), 0.0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(vals[i] * std::pow(grid[i], 4), alpha * alpha, 1e-12);
}

TEST(Monitor, TriPlanarSphere) {
    const auto c = curves::tri_planar();
    const auto rep = conservation_monitor_tri(sample_trig_curve(c, 512), 1.0);
    EXPECT_EQ(rep.method, "spectral");
    EXPECT_LT(rep.drift, 1e-6);
    // k1^2 = 2, so |nabla^2 T|^2 = k1^4 and Q = -4
    EXPECT_NEAR(rep.c1, -4.0, 1e-9);
}

TEST(Monitor, HyperbolaCurveUsesFd) {
    const auto pts = hyperbola_points_at(2.0);
    ASSERT_FALSE(pts.empty());
    const auto s = sample_trig_curve(pts[0].curve(), 512);
    EXPECT_FALSE(s.periodic);
    const auto rep = conservation_monitor_tri(s, 1.0);
    EXPECT_EQ(rep.method, "fd-positions");
    EXPECT_LT(rep.drift, 1e-6);
}

TEST(Monitor, FlatPowerLaw) {
    const auto c = integrate_frenet(CurvatureProfile::parse("k1=1/s,k2=2/s"), 3, 1, 3, 1e-3);
    const auto rep = conservation_monitor_tri(c, 0.0);
    EXPECT_EQ(rep.method, "fd-tangent");
    EXPECT_LT(rep.drift, 1e-5);
    EXPECT_LT(std::abs(rep.c1), 1e-5);
    // alpha^2 + beta^2 = 4 gives Q = alpha^2 / s^4, not constant
    const auto off = conservation_monitor_tri(integrate_frenet(CurvatureProfile::parse("k1=1/s,k2=1.7320508075688772/s"), 3, 1, 3, 1e-3), 0.0);
    EXPECT_GT(off.drift, 0.1);
}

TEST(Monitor, GreatCircleAndMisuse) {
    const auto g = sample_trig_curve(curves::great_circle(), 256);
    EXPECT_LT(std::abs(conservation_monitor_tri(g, 1.0).c1), 1e-12);
    EXPECT_LT(std::abs(conservation_monitor_four(g, 1.0).c1), 1e-12);
    EXPECT_THROW((void)conservation_monitor_tri(sample_trig_curve(curves::great_circle(), 32), 1.0), InsufficientSamplesError);
    EXPECT_THROW((void)conservation_monitor_four(sample_trig_curve(curves::great_circle(), 64), 1.0), InsufficientSamplesError);
    EXPECT_THROW((void)conservation_monitor_tri(g, -1.0), std::invalid_argument);
}

TEST(Monitor, FourHarmonic) {
    const auto rep = conservation_monitor_four(sample_trig_curve(curves::four_planar(), 512), 1.0);
    EXPECT_LT(rep.drift, 1e-5);
    // the biharmonic circle has constant curvature too, so its invariant is also constant
    const auto bi = conservation_monitor_four(sample_trig_curve(curves::biharmonic_circle(), 512), 1.0);
    EXPECT_LT(bi.drift, 1e-6);
    EXPECT_GT(std::abs(bi.c1 - rep.c1), 1.0);
}

TEST(Monitor, SphereMatchesIntrinsicCurvature) {
    // on a small circle of curvature k, |nabla T|^2 = k^2 and |nabla^2 T|^2 = k^4
    for (double a : {1.2, 1.5, 2.5}) {
        const auto c = curves::small_circle(a);
        const double k2 = a * a - 1;
        const auto rep = conservation_monitor_tri(sample_trig_curve(c, 256), 1.0);
        EXPECT_NEAR(rep.c1, -k2 * k2, 1e-8) << a;
    }
}

TEST(Conjecture, OrderThreeScan) {
    const auto scan = conjecture_scan(3, 1.0, parse_grid("0:4:21"));
    ASSERT_EQ(scan.rows.size(), 21u);
    for (std::size_t i = 1; i < scan.rows.size(); ++i) EXPECT_LT(scan.rows[i - 1].beta, scan.rows[i].beta);
    const auto& at2 = scan.rows[10];
    EXPECT_NEAR(at2.beta, 2.0, 1e-12);
    EXPECT_LT(at2.exact_tangential, 1e-9);
    EXPECT_LT(at2.law_residual, 1e-12);
    EXPECT_EQ(scan.argmin_tangential, 10u);
    for (const auto& r : scan.rows) {
        EXPECT_NEAR(r.fd_residual, r.exact_full, 1e-4 * r.exact_full);
        if (r.beta == 0.0) {
            EXPECT_GT(r.law_residual, 1.0);
        }
    }
}

TEST(Conjecture, SixthDerivativeClosedForm) {
    // s^5 gamma^(6) = [-10 a^2 (rho - 5), a (rho^2 - 35 rho + 24), 10 a b (rho - 5)]
    const double a = 1.0, b = 2.0, rho = a * a + b * b;
    const auto tower = flat_tower(CurvatureProfile::power_law({a, b}, 1), 3, 6);
    const double s = 1.7, s5 = std::pow(s, 5);
    EXPECT_NEAR(tower[5][0](s) * s5, -10 * a * a * (rho - 5), 1e-10);
    EXPECT_NEAR(tower[5][1](s) * s5, a * (rho * rho - 35 * rho + 24), 1e-10);
    EXPECT_NEAR(tower[5][2](s) * s5, 10 * a * b * (rho - 5), 1e-10);
}

TEST(Conjecture, OrderFourTable) {
    const auto scan = conjecture_scan(4, 1.0, parse_grid("0:2:5"));
    ASSERT_EQ(scan.rows.size(), 5u);
    for (const auto& r : scan.rows) {
        ASSERT_EQ(r.term_powers.size(), 3u);
        EXPECT_EQ(r.term_powers[0], std::vector<int>{-9});
        EXPECT_NEAR(r.fd_residual, r.exact_full, 1e-3 * r.exact_full);
    }
    EXPECT_THROW((void)conjecture_scan(5, 1.0, {1.0}), std::invalid_argument);
}

TEST(Csv, RoundTrip) {
    const auto c = integrate_frenet(CurvatureProfile::constant({1.0, 0.3}), 3, 0, 1, 1e-2);
    std::stringstream ss;
    write_samples_csv(ss, c);
    const auto back = read_samples_csv(ss);
    ASSERT_EQ(back.size(), c.size());
    EXPECT_EQ(back.dim(), 3u);
    EXPECT_NEAR(back.h, c.h, 1e-15);
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(back.positions[i], c.positions[i]);
    std::stringstream bad("s,x1\n0,1\n0.1,2\n0.3,3\n");
    EXPECT_THROW((void)read_samples_csv(bad), std::invalid_argument);
    std::stringstream nohead("0,1\n");
    EXPECT_THROW((void)read_samples_csv(nohead), std::invalid_argument);
}

TEST(Grid, Parse) {
    EXPECT_EQ(parse_grid("0:4:5"), (std::vector<double>{0, 1, 2, 3, 4}));
    EXPECT_EQ(parse_grid("2:2:1"), std::vector<double>{2});
    EXPECT_THROW((void)parse_grid("4:0:3"), std::invalid_argument);
    EXPECT_THROW((void)parse_grid("a:b"), std::invalid_argument);
}
