#include <gtest/gtest.h>

#include "polyhelix/frenet.hpp"
#include "polyhelix/reference.hpp"

using namespace polyhelix;

namespace {

const Poly k1 = Poly::k(1), k2 = Poly::k(2), k3 = Poly::k(3), K = Poly::ambient();

void expect_expansion(const FrenetExpansion& got, const reference::Expansion& want) {
    EXPECT_EQ(got.coefficients().size(), want.size());
    for (const auto& [j, c] : want) EXPECT_EQ(got[j], c) << "frame " << j << ": got " << got[j].to_string();
}

} // namespace

TEST(Frenet, DerivativeExamples) {
    const FrenetExpansion t = FrenetExpansion::tangent(5);
    expect_expansion(frenet_derivative(t, 4), {{2, k1}});

    FrenetExpansion v(5);
    v.set(2, k1);
    expect_expansion(frenet_derivative(v, 4), {{1, -k1 * k1}, {3, k1 * k2}});

    FrenetExpansion last(5);
    last.set(5, Poly(1));
    expect_expansion(frenet_derivative(last, 4), {{4, -Poly::k(4)}});
}

TEST(Frenet, DerivativeDetectsTruncationLeak) {
    FrenetExpansion v(3);
    v.set(3, Poly(1));
    EXPECT_THROW((void)frenet_derivative(v, 3), std::logic_error);
}

TEST(Frenet, IteratedDerivativesMatchDisplays) {
    const auto m4 = reference::derivatives_m4();
    for (int l = 1; l <= 5; ++l) expect_expansion(iterated_derivative(l, 4), m4[l]);
    const auto m6 = reference::derivatives_m6();
    for (int l = 1; l <= 7; ++l) expect_expansion(iterated_derivative(l, 6), m6[l]);
    expect_expansion(iterated_derivative(0, 3), {{1, Poly(1)}});
}

TEST(Frenet, TauLowOrders) {
    expect_expansion(tau_space_form(2), {{2, -k1 * (k1 * k1 + k2 * k2 - K)}});
    expect_expansion(tau_space_form(3), reference::tau3());
    expect_expansion(tau_space_form(4), reference::tau4());
}

TEST(Frenet, ConstraintSystemsMatchDisplays) {
    const auto tri = constraint_system(3);
    ASSERT_EQ(tri.equations.size(), 2u);
    const auto tri_ref = reference::triharmonic_constraints();
    EXPECT_EQ(tri.equations[0].frame, 2);
    EXPECT_EQ(tri.equations[0].factored, tri_ref[0]);
    EXPECT_EQ(tri.equations[0].gcd, k1);
    EXPECT_EQ(tri.equations[1].frame, 4);
    EXPECT_EQ(tri.equations[1].factored, tri_ref[1]);
    EXPECT_EQ(tri.equations[1].gcd, -k1 * k2 * k3);

    const auto four = constraint_system(4);
    const auto four_ref = reference::fourharmonic_constraints();
    ASSERT_EQ(four.equations.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(four.equations[i].frame, 2 * static_cast<int>(i) + 2);
        EXPECT_EQ(four.equations[i].factored, four_ref[i]);
    }
    for (const auto* sys : {&tri, &four})
        for (const auto& eq : sys->equations) EXPECT_EQ(eq.gcd * eq.factored, eq.raw);
}

TEST(Frenet, ConstraintSystemZeroPattern) {
    const auto sys = constraint_system(3, {2, 3, 4});
    ASSERT_EQ(sys.equations.size(), 1u);
    EXPECT_EQ(sys.equations[0].raw, pow(k1, 5) - Poly(2) * K * pow(k1, 3));
    EXPECT_EQ(sys.equations[0].factored, k1 * k1 - Poly(2) * K);
    EXPECT_EQ(sys.equations[0].gcd, pow(k1, 3));
}

TEST(Frenet, HighestDerivativeStructure) {
    EXPECT_TRUE(highest_derivative_structure_check(3, 6));
    EXPECT_TRUE(highest_derivative_structure_check(4, 8));
    EXPECT_TRUE(highest_derivative_structure_check(2, 4));
    for (int m = 2; m <= 10; ++m)
        for (int l = 2; 2 * (l - 1) <= m; ++l) EXPECT_TRUE(highest_derivative_structure_check(l, m)) << l << "," << m;
    EXPECT_THROW((void)highest_derivative_structure_check(1, 4), std::invalid_argument);
}

TEST(FrenetProperty, OddFramesVanishInTau) {
    for (int r = 2; r <= 6; ++r) {
        const auto tau = tau_space_form(r);
        for (const auto& [j, c] : tau.coefficients()) EXPECT_EQ(j % 2, 0) << "r=" << r << " frame " << j;
    }
}

TEST(FrenetProperty, DerivativeParity) {
    const auto tower = derivative_tower(12, 10, 12);
    for (int l = 0; l <= 12; ++l)
        for (const auto& [j, c] : tower[l].coefficients()) EXPECT_NE(j % 2, l % 2) << "l=" << l << " j=" << j;
}

TEST(FrenetProperty, TangentialRecursion) {
    for (int r = 2; r <= 6; ++r) {
        const int m = 2 * r - 2;
        const auto tower = derivative_tower(2 * r - 1, m, 2 * r);
        for (int l = 0; l + 1 <= 2 * r - 1; ++l) EXPECT_EQ(tower[l + 1][1], -k1 * tower[l][2]);
    }
}

TEST(FrenetProperty, TopEquationIsSumOfSquares) {
    for (int r = 2; r <= 6; ++r) {
        const auto sys = constraint_system(r);
        const auto& top = sys.equations.back();
        EXPECT_EQ(top.frame, 2 * r - 2);
        EXPECT_EQ(top.factored, sum_of_squares(2 * r - 2) - K) << "r=" << r;
        EXPECT_EQ(top.gcd, -curvature_product(1, 2 * r - 3));
    }
}

TEST(FrenetProperty, FactoredEquationsAreEvenInCurvatures) {
    for (int r = 2; r <= 6; ++r)
        for (const auto& eq : constraint_system(r).equations) EXPECT_NO_THROW((void)to_squared_variables(eq.factored));
}

TEST(Frenet, SignMutationBreaksDisplays) {
    const FrenetRule broken{+1, 1};
    EXPECT_FALSE(iterated_derivative(3, 4, broken) == iterated_derivative(3, 4));
    EXPECT_NE(constraint_system(3, {}, broken).equations.back().factored, sum_of_squares(4) - K);
}
