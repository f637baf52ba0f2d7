#pragma once

// Hand-transcribed closed forms for helix expansions and constraint systems.
// Built from Poly operators only, never from the Frenet engine, so they serve
// as independent expected values.

#include <map>
#include <vector>

#include "polyhelix/ratpoly.hpp"

namespace polyhelix::reference {

namespace detail {
inline Poly k(int i) { return Poly::k(i); }
inline Poly sq(int i) { return Poly::k(i) * Poly::k(i); }
inline Poly K() { return Poly::ambient(); }
} // namespace detail

/// Frame index -> coefficient.
using Expansion = std::map<int, Poly>;

/// nabla_T^l T for l = 1..7 with curvatures k_1..k_6 (k_7 = 0).
inline std::vector<Expansion> derivatives_m6() {
    using namespace detail;
    const Poly s12 = sq(1) + sq(2);
    std::vector<Expansion> d(8);
    d[1] = {{2, k(1)}};
    d[2] = {{1, -sq(1)}, {3, k(1) * k(2)}};
    d[3] = {{2, -k(1) * s12}, {4, k(1) * k(2) * k(3)}};
    d[4] = {{1, sq(1) * s12},
            {3, -k(1) * k(2) * (s12 + sq(3))},
            {5, k(1) * k(2) * k(3) * k(4)}};
    d[5] = {{2, k(1) * (pow(s12, 2) + sq(2) * sq(3))},
            {4, -k(1) * k(2) * k(3) * sum_of_squares(4)},
            {6, curvature_product(1, 5)}};
    d[6] = {{1, -sq(1) * (pow(s12, 2) + sq(2) * sq(3))},
            {3, k(1) * k(2) * (pow(s12, 2) + sq(3) * (sq(1) + Poly(2) * sq(2) + sq(3) + sq(4)))},
            {5, -k(1) * k(2) * k(3) * k(4) * sum_of_squares(5)},
            {7, curvature_product(1, 6)}};
    d[7] = {{2, -k(1) * (pow(s12, 3) + sq(2) * sq(3) * (Poly(2) * sq(1) + Poly(2) * sq(2) + sq(3) + sq(4)))},
            {4, k(1) * k(2) * k(3) *
                    (pow(s12, 2) + pow(sq(3) + sq(4), 2) + sq(1) * sq(3) + Poly(2) * sq(2) * sq(3) +
                     sq(4) * (sq(1) + sq(2) + sq(5)))},
            {6, -curvature_product(1, 5) * sum_of_squares(6)}};
    return d;
}

/// nabla_T^l T for l = 1..5 with curvatures k_1..k_4 (k_5 = 0).
inline std::vector<Expansion> derivatives_m4() {
    using namespace detail;
    std::vector<Expansion> d = derivatives_m6();
    d.resize(6);
    d[5].erase(6);
    return d;
}

/// Frame components of tau_3 for helices with symbolic K (k_1..k_4).
inline Expansion tau3() {
    using namespace detail;
    const Poly s12 = sq(1) + sq(2);
    return {{2, k(1) * (pow(s12, 2) + sq(2) * sq(3) - K() * (Poly(2) * sq(1) + sq(2)))},
            {4, -k(1) * k(2) * k(3) * (sum_of_squares(4) - K())}};
}

/// Frame components of tau_4 for helices with symbolic K (k_1..k_6).
inline Expansion tau4() {
    using namespace detail;
    const Poly s12 = sq(1) + sq(2);
    return {{2, k(1) * (-pow(s12, 3) - sq(2) * sq(3) * (Poly(2) * sq(1) + Poly(2) * sq(2) + sq(3) + sq(4)) +
                        K() * (pow(s12, 2) + sq(2) * sq(3)) + Poly(2) * K() * sq(1) * s12)},
            {4, k(1) * k(2) * k(3) *
                    (pow(s12, 2) + pow(sq(3) + sq(4), 2) + sq(1) * sq(3) + Poly(2) * sq(2) * sq(3) +
                     sq(4) * (sq(1) + sq(2) + sq(5)) - K() * (Poly(2) * sq(1) + sq(2) + sq(3) + sq(4)))},
            {6, curvature_product(1, 5) * (-sum_of_squares(6) + K())}};
}

/// Factored triharmonic helix constraints (after splitting off the monomial factor).
inline std::vector<Poly> triharmonic_constraints() {
    using namespace detail;
    const Poly s12 = sq(1) + sq(2);
    return {pow(s12, 2) + sq(2) * sq(3) - K() * (Poly(2) * sq(1) + sq(2)), sum_of_squares(4) - K()};
}

/// Factored 4-harmonic helix constraints.
inline std::vector<Poly> fourharmonic_constraints() {
    using namespace detail;
    const Poly s12 = sq(1) + sq(2);
    return {pow(s12, 3) + sq(2) * sq(3) * (Poly(2) * sq(1) + Poly(2) * sq(2) + sq(3) + sq(4)) -
                K() * (pow(s12, 2) + sq(2) * sq(3)) - Poly(2) * K() * sq(1) * s12,
            pow(s12, 2) + pow(sq(3) + sq(4), 2) + sq(1) * sq(3) + Poly(2) * sq(2) * sq(3) +
                sq(4) * (sq(1) + sq(2) + sq(5)) - K() * (Poly(2) * sq(1) + sq(2) + sq(3) + sq(4)),
            sum_of_squares(6) - K()};
}

} // namespace polyhelix::reference
