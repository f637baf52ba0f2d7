#pragma once

// Trigonometric ansatz curves on the unit sphere: exact derivatives,
// Euler-Lagrange residuals, Lagrangians, first variations, the triharmonic
// two-frequency family and geodesic curvatures.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polyhelix/jet.hpp"
#include "polyhelix/trig.hpp"

namespace polyhelix {

struct TrigBlock {
    double freq = 1.0;   ///< a_i > 0
    double weight = 1.0; ///< alpha_i^2
};

/// gamma(s) = sum_i alpha_i (cos(a_i s) e_{2i-1} + sin(a_i s) e_{2i}) + alpha_0 e_last.
class TrigCurve {
public:
    TrigCurve(std::vector<TrigBlock> blocks, double constant_weight)
        : blocks_(std::move(blocks)), w0_(constant_weight) {
        if (blocks_.empty()) throw std::invalid_argument("TrigCurve: need at least one block");
        double total = w0_;
        if (!(w0_ >= 0.0 && w0_ < 1.0)) throw std::invalid_argument("TrigCurve: constant weight outside [0,1)");
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            const auto& b = blocks_[i];
            if (!(b.freq > 0.0)) throw std::invalid_argument("TrigCurve: frequencies must be positive");
            if (!(b.weight > 0.0 && b.weight <= 1.0)) throw std::invalid_argument("TrigCurve: weight outside (0,1]");
            for (std::size_t j = 0; j < i; ++j)
                if (std::abs(blocks_[j].freq - b.freq) < 1e-12) throw std::invalid_argument("TrigCurve: repeated frequency");
            total += b.weight;
        }
        if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("TrigCurve: weights do not sum to 1");
    }

    const std::vector<TrigBlock>& blocks() const { return blocks_; }
    double constant_weight() const { return w0_; }
    std::size_t dim() const { return 2 * blocks_.size() + (w0_ > 0.0 ? 1 : 0); }

    /// sum alpha_i^2 a_i^{2l}
    double moment(int l) const {
        double s = 0.0;
        for (const auto& b : blocks_) s += b.weight * std::pow(b.freq, 2.0 * l);
        return s;
    }
    bool arclength() const { return std::abs(moment(1) - 1.0) < 1e-12; }

    TrigVec gamma(std::size_t ambient_dim = 0) const {
        const std::size_t d = std::max(dim(), ambient_dim);
        TrigVec g(d);
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            const double amp = std::sqrt(blocks_[i].weight);
            g[2 * i] = TrigPoly::cosine(blocks_[i].freq, amp);
            g[2 * i + 1] = TrigPoly::sine(blocks_[i].freq, amp);
        }
        if (w0_ > 0.0) g[2 * blocks_.size()] = TrigPoly(std::sqrt(w0_));
        return g;
    }

    /// Common period of all blocks, if one exists with small denominators.
    std::optional<double> common_period() const {
        const double a1 = blocks_.front().freq;
        std::vector<long long> p, q;
        for (const auto& b : blocks_) {
            auto pq = rationalize(b.freq / a1);
            if (!pq) return std::nullopt;
            p.push_back(pq->first);
            q.push_back(pq->second);
        }
        long long L = 1;
        for (long long v : q) L = std::lcm(L, v);
        long long g = 0;
        for (std::size_t i = 0; i < p.size(); ++i) g = std::gcd(g, p[i] * (L / q[i]));
        const double period = 2.0 * std::numbers::pi * static_cast<double>(L) / (a1 * static_cast<double>(g));
        if (period > 64.0 * std::numbers::pi) return std::nullopt;
        return period;
    }

    /// Sampling window: one common period, else [0, 64 pi].
    double window() const { return common_period().value_or(64.0 * std::numbers::pi); }

private:
    static std::optional<std::pair<long long, long long>> rationalize(double r) {
        // continued fraction with denominators <= 64
        long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
        double x = r;
        for (int it = 0; it < 20; ++it) {
            const double a = std::floor(x);
            const long long ai = static_cast<long long>(a);
            const long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
            if (k2 > 64) break;
            h0 = h1;
            h1 = h2;
            k0 = k1;
            k1 = k2;
            if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - r) < 1e-12 * std::max(1.0, r))
                return std::pair{h1, k1};
            const double frac = x - a;
            if (frac < 1e-15) break;
            x = 1.0 / frac;
        }
        return std::nullopt;
    }

    std::vector<TrigBlock> blocks_;
    double w0_;
};

namespace curves {
inline TrigCurve great_circle() { return TrigCurve({{1.0, 1.0}}, 0.0); }
inline TrigCurve biharmonic_circle() { return TrigCurve({{std::sqrt(2.0), 0.5}}, 0.5); }
/// a^2 + b^2 = 2, weights 1/2
inline TrigCurve biharmonic_two_freq(double a2 = 1.5) {
    return TrigCurve({{std::sqrt(a2), 0.5}, {std::sqrt(2.0 - a2), 0.5}}, 0.0);
}
inline TrigCurve tri_planar() { return TrigCurve({{std::sqrt(3.0), 1.0 / 3.0}}, 2.0 / 3.0); }
inline TrigCurve four_planar() { return TrigCurve({{2.0, 0.25}}, 0.75); }
/// Unit-speed single block of frequency a on a small circle.
inline TrigCurve small_circle(double a) { return TrigCurve({{a, 1.0 / (a * a)}}, 1.0 - 1.0 / (a * a)); }
} // namespace curves

/// gamma^{(l)} in closed form.
inline TrigVec derivative(const TrigCurve& c, int l) {
    if (l < 0) throw std::invalid_argument("derivative: order < 0");
    return c.gamma().derivative(l);
}

/// Sample points over the curve's window for a residual of spectral extent max_freq.
inline std::vector<double> sample_points(const TrigCurve& c, double max_freq, int per_period = 256) {
    const double W = c.window();
    const double periods = std::max(1.0, std::ceil(W * std::max(max_freq, 1e-9) / (2.0 * std::numbers::pi)));
    const int n = static_cast<int>(std::min(per_period * periods, 2.0e5));
    std::vector<double> s(static_cast<std::size_t>(std::max(n, per_period)));
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = W * static_cast<double>(i) / static_cast<double>(s.size());
    return s;
}

inline double sup_norm(const TrigVec& v, const std::vector<double>& samples) {
    double m = 0.0;
    for (double s : samples) m = std::max(m, norm(v(s)));
    return m;
}

inline double sup_norm(const TrigVec& v, const TrigCurve& c) { return sup_norm(v, sample_points(c, v.max_frequency())); }

/// Max defect of the unit-speed sphere identities over the samples.
inline double sphere_identities_check(const TrigCurve& c, const std::vector<double>& samples) {
    const TrigVec g = c.gamma();
    std::array<TrigVec, 5> d;
    d[0] = g;
    for (int k = 1; k < 5; ++k) d[static_cast<std::size_t>(k)] = d[static_cast<std::size_t>(k - 1)].derivative();
    const TrigPoly i1 = dot(d[0], d[1]);
    const TrigPoly i2 = dot(d[2], d[0]) + TrigPoly(1.0);
    const TrigPoly i3 = dot(d[3], d[0]);
    const TrigPoly i4 = dot(d[1], d[2]);
    const TrigPoly i5 = dot(d[4], d[0]) + dot(d[3], d[1]);
    const TrigPoly i6 = dot(d[4], d[0]) - dot(d[2], d[2]);
    double m = 0.0;
    for (double s : samples)
        for (const auto* p : {&i1, &i2, &i3, &i4, &i5, &i6}) m = std::max(m, std::abs((*p)(s)));
    return m;
}

inline double sphere_identities_check(const TrigCurve& c) { return sphere_identities_check(c, sample_points(c, 4 * c.blocks().back().freq)); }

namespace detail {
inline void require_arclength(const TrigCurve& c, const char* who) {
    if (!c.arclength()) throw std::invalid_argument(std::string(who) + ": curve is not unit speed");
}
} // namespace detail

/// gamma'''' + 2 gamma'' + gamma (2 - |gamma''|^2)
inline TrigVec biharmonic_field(const TrigCurve& c) {
    const TrigVec g = c.gamma(), g2 = g.derivative(2), g4 = g.derivative(4);
    return g4 + 2.0 * g2 + (TrigPoly(2.0) - dot(g2, g2)) * g;
}

inline double biharmonic_residual(const TrigCurve& c) {
    detail::require_arclength(c, "biharmonic_residual");
    return sup_norm(biharmonic_field(c), c);
}

/// Right-hand side of the explicit 4-harmonic equation on the sphere, term by term.
inline TrigVec fourharmonic_field(const TrigCurve& c) {
    std::array<TrigVec, 9> g;
    g[0] = c.gamma();
    for (std::size_t k = 1; k < 9; ++k) g[k] = g[k - 1].derivative();
    const TrigPoly A = dot(g[2], g[2]);
    const TrigPoly B = dot(g[4], g[2]);
    const TrigPoly C = dot(g[4], g[1]);
    const TrigVec Cg1dd = (C * g[1]).derivative(2);
    const TrigVec Ag0dddd = (A * g[0]).derivative(4);
    const TrigVec Cg2d = (C * g[2]).derivative(1);

    TrigVec R = g[8] + 2.0 * g[6] + 3.0 * g[4] - A * g[4] - 6.0 * (A * g[2]) + 4.0 * g[2] - 2.0 * (B * g[2]);
    R += 5.0 * Cg1dd - Ag0dddd - 6.0 * (A.derivative() * g[1]) - 2.0 * (B.derivative() * g[1]) - 5.0 * Cg2d;
    const TrigPoly first = dot(g[8], g[0]) + 2.0 * dot(g[6], g[0]) + 3.0 * A - A * A + 6.0 * A - TrigPoly(4.0) + 2.0 * B;
    const TrigPoly second = 5.0 * dot(g[0], Cg1dd) - dot(g[0], Ag0dddd) - 5.0 * dot(g[0], Cg2d);
    R -= (first + second) * g[0];
    return R;
}

inline double fourharmonic_residual(const TrigCurve& c) {
    detail::require_arclength(c, "fourharmonic_residual");
    return sup_norm(fourharmonic_field(c), c);
}

/// nabla_T^l T for l = 0..max_order via X_{l+1} = X_l' + <X_l, gamma'> gamma.
inline std::vector<TrigVec> connection_tower(const TrigCurve& c, int max_order) {
    const TrigVec g = c.gamma(), g1 = g.derivative();
    std::vector<TrigVec> X{g1};
    for (int l = 1; l <= max_order; ++l) X.push_back(X.back().derivative() + dot(X.back(), g1) * g);
    return X;
}

/// tau_r with K = 1 built from the embedded connection.
inline TrigVec intrinsic_tau(const TrigCurve& c, int r) {
    if (r < 2 || r > 4) throw std::invalid_argument("intrinsic_tau: order must be 2, 3 or 4");
    const auto X = connection_tower(c, 2 * r - 1);
    const TrigVec& T = X[0];
    TrigVec tau = X[static_cast<std::size_t>(2 * r - 1)];
    for (int l = 0; l <= r - 2; ++l) {
        const std::size_t p = static_cast<std::size_t>(2 * r - 3 - l), q = static_cast<std::size_t>(l);
        const double sign = l % 2 == 0 ? 1.0 : -1.0;
        tau += sign * (dot(T, X[q]) * X[p] - dot(T, X[p]) * X[q]);
    }
    return tau;
}

inline double intrinsic_tau_residual(const TrigCurve& c, int r) {
    detail::require_arclength(c, "intrinsic_tau_residual");
    return sup_norm(intrinsic_tau(c, r), c);
}

// --- Lagrangians ---------------------------------------------------------

template <class V>
auto vdot(const V& a, const V& b) {
    auto s = a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i) s = s + a[i] * b[i];
    return s;
}

/// Extrinsic Lagrangian densities on the sphere (without the multiplier term).
/// g[k] = gamma^{(k)}, k = 0..r.
template <class V>
auto lagrangian_density(const std::array<V, 5>& g, int r) {
    const auto g11 = vdot(g[1], g[1]);
    const auto g21 = vdot(g[2], g[1]);
    const auto g22 = vdot(g[2], g[2]);
    if (r == 2) return g22 - g11 * g11;
    const auto g33 = vdot(g[3], g[3]);
    const auto g30 = vdot(g[3], g[0]);
    const auto g31 = vdot(g[3], g[1]);
    if (r == 3) return g33 + 9.0 * (g21 * g21) + g11 * g11 * g11 + 6.0 * (g21 * g30) + 2.0 * (g11 * g31);
    if (r == 4) {
        const auto g44 = vdot(g[4], g[4]);
        const auto g40 = vdot(g[4], g[0]);
        const auto g41 = vdot(g[4], g[1]);
        const auto g42 = vdot(g[4], g[2]);
        const auto g11sq = g11 * g11;
        return g44 + 16.0 * (g31 * g31) + 9.0 * (g22 * g22) + 35.0 * (g21 * g21 * g11) + g11sq * g22 -
               g11sq * g11sq + 8.0 * (g31 * g40) + 6.0 * (g40 * g22) + 10.0 * (g21 * g41) + 2.0 * (g11 * g42) +
               2.0 * (g11sq * g40) + 24.0 * (g31 * g22);
    }
    throw std::invalid_argument("lagrangian: unsupported order " + std::to_string(r));
}

/// Density reduced to the moments S_l = sum alpha_i^2 a_i^{2l}.
inline double reduced_lagrangian(const std::array<double, 5>& S, int r) {
    switch (r) {
    case 2: return S[2] - S[1] * S[1];
    case 3: return S[3] + S[1] * S[1] * S[1] - 2.0 * S[1] * S[2];
    case 4: return S[4] - S[2] * S[2] + 3.0 * S[1] * S[1] * S[2] - std::pow(S[1], 4) - 2.0 * S[1] * S[3];
    default: throw std::invalid_argument("lagrangian: unsupported order " + std::to_string(r));
    }
}

/// d reduced / d S_l
inline std::array<double, 5> reduced_lagrangian_dS(const std::array<double, 5>& S, int r) {
    std::array<double, 5> d{};
    switch (r) {
    case 2:
        d[1] = -2.0 * S[1];
        d[2] = 1.0;
        break;
    case 3:
        d[1] = 3.0 * S[1] * S[1] - 2.0 * S[2];
        d[2] = -2.0 * S[1];
        d[3] = 1.0;
        break;
    case 4:
        d[1] = 6.0 * S[1] * S[2] - 4.0 * std::pow(S[1], 3) - 2.0 * S[3];
        d[2] = -2.0 * S[2] + 3.0 * S[1] * S[1];
        d[3] = -2.0 * S[1];
        d[4] = 1.0;
        break;
    default: throw std::invalid_argument("lagrangian: unsupported order " + std::to_string(r));
    }
    return d;
}

inline std::array<double, 5> moments(const TrigCurve& c) {
    std::array<double, 5> S{};
    for (int l = 0; l < 5; ++l) S[static_cast<std::size_t>(l)] = c.moment(l) + (l == 0 ? c.constant_weight() : 0.0);
    return S;
}

/// Gradient of the reduced density in the weights alpha_i^2 (blocks, then the constant block if present).
inline std::vector<double> weight_gradient(const TrigCurve& c, int r) {
    const auto dS = reduced_lagrangian_dS(moments(c), r);
    std::vector<double> g;
    for (const auto& b : c.blocks()) {
        double v = 0.0;
        for (int l = 1; l <= 4; ++l) v += dS[static_cast<std::size_t>(l)] * std::pow(b.freq, 2.0 * l);
        g.push_back(v);
    }
    if (c.constant_weight() > 0.0) g.push_back(0.0);
    return g;
}

struct LagrangianValue {
    int order = 0;
    double density = 0.0;        ///< extrinsic formula at s = 0
    double density_spread = 0.0; ///< max - min of the extrinsic formula over the window
    double reduced = 0.0;        ///< closed form in the moments
    double energy = 0.0;         ///< window average of the density
    std::optional<double> lambda;  ///< multiplier making the weight gradient stationary
    double stationarity = 0.0;     ///< spread of the weight gradient (0 at critical weights)
};

inline std::array<std::vector<double>, 5> derivative_values(const TrigCurve& c, double s, std::size_t ambient = 0) {
    std::array<std::vector<double>, 5> v;
    TrigVec g = c.gamma(ambient);
    for (std::size_t k = 0; k < 5; ++k) {
        v[k] = g(s);
        g = g.derivative();
    }
    return v;
}

inline LagrangianValue lagrangian(const TrigCurve& c, int r) {
    if (r < 2 || r > 4) throw std::invalid_argument("lagrangian: unsupported order " + std::to_string(r));
    detail::require_arclength(c, "lagrangian");
    LagrangianValue out;
    out.order = r;
    const TrigVec g = c.gamma();
    std::array<TrigVec, 5> d{g, g.derivative(1), g.derivative(2), g.derivative(3), g.derivative(4)};
    const auto samples = sample_points(c, c.blocks().back().freq, 64);
    double lo = 1e300, hi = -1e300, sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        std::array<std::vector<double>, 5> v;
        for (std::size_t k = 0; k < 5; ++k) v[k] = d[k](samples[i]);
        const double L = lagrangian_density(v, r);
        if (i == 0) out.density = L;
        lo = std::min(lo, L);
        hi = std::max(hi, L);
        sum += L;
    }
    out.density_spread = hi - lo;
    out.energy = sum / static_cast<double>(samples.size());
    out.reduced = reduced_lagrangian(moments(c), r);
    const auto grad = weight_gradient(c, r);
    out.lambda = -grad.front();
    const auto [mn, mx] = std::minmax_element(grad.begin(), grad.end());
    out.stationarity = *mx - *mn;
    return out;
}

// --- First variation --------------------------------------------------------

struct Bump {
    double center = 1.0;
    double width = 1.0;
    std::vector<double> direction; ///< ambient vector (may exceed the curve's dimension)
};

/// Seeded bump in `ambient` dimensions.
inline Bump random_bump(std::size_t ambient, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uc(0.5, 2.5), uw(0.6, 1.4);
    std::normal_distribution<double> n(0.0, 1.0);
    Bump b;
    b.center = uc(rng);
    b.width = uw(rng);
    b.direction.resize(ambient);
    for (auto& x : b.direction) x = n(rng);
    const double l = norm(b.direction);
    for (auto& x : b.direction) x /= l;
    return b;
}

namespace detail {
using J4 = Jet<4>;

/// Density of order r for Pi(gamma + t beta) at s.
inline double varied_density(const std::array<std::vector<double>, 5>& gd, const Bump& b, double s, double t, int r) {
    const std::size_t D = b.direction.size();
    const double u0 = (s - b.center) / b.width;
    J4 phi(0.0);
    if (std::abs(u0) < 1.0) {
        J4 u = J4::variable(u0);
        u.c[1] = 1.0 / b.width;
        phi = exp(-(J4(1.0) / (J4(1.0) - u * u)));
    }
    std::vector<J4> v(D);
    for (std::size_t i = 0; i < D; ++i) {
        J4 gi;
        double f = 1.0;
        for (int k = 0; k <= 4; ++k) {
            if (k > 1) f *= k;
            gi.c[static_cast<std::size_t>(k)] = gd[static_cast<std::size_t>(k)][i] / f;
        }
        v[i] = gi + (t * b.direction[i]) * phi;
    }
    const J4 nv = sqrt(vdot(v, v));
    for (auto& x : v) x = x / nv;
    std::array<std::vector<double>, 5> p;
    for (std::size_t k = 0; k < 5; ++k) {
        p[k].resize(D);
        for (std::size_t i = 0; i < D; ++i) p[k][i] = v[i].derivative(static_cast<int>(k));
    }
    return lagrangian_density(p, r);
}
} // namespace detail

/// d/dt E_r(Pi(gamma + t beta)) at t = 0 by a 4th-order central stencil in t,
/// integrated over the bump support with adaptive Gauss-Kronrod.
inline double first_variation(const TrigCurve& c, int r, const Bump& b, double h = 1e-4) {
    if (r < 2 || r > 4) throw std::invalid_argument("first_variation: unsupported order " + std::to_string(r));
    if (b.direction.size() < c.dim()) throw std::invalid_argument("first_variation: bump direction too short");
    if (!(b.width > 0.0)) throw std::invalid_argument("first_variation: bump width must be positive");
    const TrigVec g = c.gamma(b.direction.size());
    std::array<TrigVec, 5> d{g, g.derivative(1), g.derivative(2), g.derivative(3), g.derivative(4)};
    auto integrand = [&](double s) {
        std::array<std::vector<double>, 5> gd;
        for (std::size_t k = 0; k < 5; ++k) gd[k] = d[k](s);
        const double f2 = detail::varied_density(gd, b, s, 2 * h, r), f1 = detail::varied_density(gd, b, s, h, r);
        const double m1 = detail::varied_density(gd, b, s, -h, r), m2 = detail::varied_density(gd, b, s, -2 * h, r);
        return (-f2 + 8.0 * f1 - 8.0 * m1 + m2) / (12.0 * h);
    };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, b.center - b.width,
                                                                          b.center + b.width, 10, 1e-10);
}

// --- Triharmonic two-frequency family --------------------------------------

/// Roots x = a^2 of x^2 + (3y - 4) x + (y^2 - 4y + 3) = 0.
inline std::array<double, 2> hyperbola_roots(double y) {
    const double disc = 5.0 * y * y - 8.0 * y + 4.0;
    const double sq = std::sqrt(disc);
    return {((4.0 - 3.0 * y) - sq) / 2.0, ((4.0 - 3.0 * y) + sq) / 2.0};
}

/// Multiplier from the first equation of the algebraic system.
inline double hyperbola_lambda(double x, double y, double a1, double a3) {
    return -(x * x * x * (1.0 - 2.0 * a1) - 2.0 * x * x + 3.0 * x - 2.0 * x * y * y * a3);
}

/// Residuals of the four-equation system in (x = a^2, y = b^2, alpha_1^2, alpha_3^2, lambda).
inline std::array<double, 4> lambda_system_residual(double x, double y, double a1, double a3, double lambda) {
    if (x <= 0.0 || y <= 0.0)
        throw std::invalid_argument("lambda_system_residual: a^2 and b^2 must be positive (b = 0 leaves the two-frequency ansatz)");
    return {x * x * x * (1.0 - 2.0 * a1) - 2.0 * x * x + 3.0 * x - 2.0 * x * y * y * a3 + lambda,
            y * y * y * (1.0 - 2.0 * a3) - 2.0 * y * y + 3.0 * y - 2.0 * y * x * x * a1 + lambda,
            x * a1 + y * a3 - 1.0, a1 + a3 - 1.0};
}

struct HyperbolaPoint {
    double y = 0.0, x = 0.0, alpha1sq = 0.0, alpha3sq = 0.0, lambda = 0.0;
    TrigCurve curve() const { return TrigCurve({{std::sqrt(x), alpha1sq}, {std::sqrt(y), alpha3sq}}, 0.0); }
};

/// Admissible points at a single y (0, 1 or 2 of them).
inline std::vector<HyperbolaPoint> hyperbola_points_at(double y) {
    std::vector<HyperbolaPoint> out;
    for (double x : hyperbola_roots(y)) {
        if (!(x > 0.0) || std::abs(x - y) < 1e-9) continue;
        const double a1 = (1.0 - y) / (x - y), a3 = 1.0 - a1;
        if (!(a1 > 0.0 && a1 < 1.0 && a3 > 0.0 && a3 < 1.0)) continue;
        out.push_back({y, x, a1, a3, hyperbola_lambda(x, y, a1, a3)});
    }
    return out;
}

/// Sweep y = b^2 over (y_lo, y_hi] in `samples` equal steps.
inline std::vector<HyperbolaPoint> solve_tri_hyperbola(int samples, double y_lo = 0.0, double y_hi = 4.0) {
    if (samples < 1) throw std::invalid_argument("solve_tri_hyperbola: samples must be >= 1");
    std::vector<HyperbolaPoint> out;
    for (int i = 1; i <= samples; ++i) {
        const double y = y_lo + (y_hi - y_lo) * i / samples;
        for (auto& p : hyperbola_points_at(y)) out.push_back(p);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.y < b.y; });
    return out;
}

// --- Geodesic curvatures ----------------------------------------------------

class FrameDegeneracyError : public std::runtime_error {
public:
    FrameDegeneracyError(int index, std::vector<double> partial)
        : std::runtime_error("frame degeneracy at k_" + std::to_string(index) + " (k_" + std::to_string(index) + " = 0)"),
          index_(index), partial_(std::move(partial)) {}
    int index() const { return index_; }
    const std::vector<double>& partial() const { return partial_; }

private:
    int index_;
    std::vector<double> partial_;
};

struct GeodesicCurvatures {
    std::vector<double> values;
    double variation = 0.0; ///< max deviation across sample points
};

namespace detail {
inline std::vector<double> curvatures_at(const std::vector<TrigVec>& X, int count, double s) {
    std::vector<std::vector<double>> F;
    std::vector<double> k;
    double prod = 1.0;
    for (int j = 0; j <= count; ++j) {
        std::vector<double> w = X[static_cast<std::size_t>(j)](s);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& f : F) {
                const double c = vdot(w, f);
                for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * f[i];
            }
        const double n = norm(w);
        if (j > 0) {
            const double kj = n / prod;
            if (kj < 1e-10) throw FrameDegeneracyError(j, k);
            k.push_back(kj);
            prod *= kj;
        }
        for (auto& x : w) x /= n;
        F.push_back(std::move(w));
    }
    return k;
}
} // namespace detail

/// k_1..k_count by Gram-Schmidt on nabla_T^l T.
inline GeodesicCurvatures geodesic_curvatures(const TrigCurve& c, int count) {
    detail::require_arclength(c, "geodesic_curvatures");
    const int max_count = static_cast<int>(2 * c.blocks().size()) - 1 + (c.constant_weight() > 0.0 ? 1 : 0);
    if (count < 1 || count > max_count)
        throw std::invalid_argument("geodesic_curvatures: count must be in 1.." + std::to_string(max_count));
    const auto X = connection_tower(c, count);
    GeodesicCurvatures out;
    out.values = detail::curvatures_at(X, count, 0.0);
    for (double s : {0.37, 1.3, 2.9}) {
        const auto k = detail::curvatures_at(X, count, s);
        for (std::size_t i = 0; i < k.size(); ++i) out.variation = std::max(out.variation, std::abs(k[i] - out.values[i]));
    }
    return out;
}

/// Like geodesic_curvatures but a degenerate frame reports the remaining curvatures as 0.
inline GeodesicCurvatures geodesic_curvatures_truncated(const TrigCurve& c, int count) {
    try {
        return geodesic_curvatures(c, count);
    } catch (const FrameDegeneracyError& e) {
        GeodesicCurvatures out;
        out.values = e.partial();
        out.values.resize(static_cast<std::size_t>(count), 0.0);
        return out;
    }
}

} // namespace polyhelix
