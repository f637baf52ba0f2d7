#pragma once

// Symbolic Frenet calculus for helices (all geodesic curvatures constant)
// in a space form of curvature K.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyhelix/ratpoly.hpp"

namespace polyhelix {

/// Sum_j c_j F_j over the Frenet frame F_1 = T, F_2, ..., F_n.
class FrenetExpansion {
public:
    explicit FrenetExpansion(int frame_count) : frame_count_(frame_count) {
        if (frame_count < 1) throw std::invalid_argument("FrenetExpansion: frame_count < 1");
    }

    static FrenetExpansion tangent(int frame_count) {
        FrenetExpansion e(frame_count);
        e.set(1, Poly(1));
        return e;
    }

    int frame_count() const { return frame_count_; }
    const std::map<int, Poly>& coefficients() const { return coeffs_; }

    /// Coefficient of F_j (zero when absent). Equals <v, F_j> since the frame is orthonormal.
    Poly operator[](int j) const {
        auto it = coeffs_.find(j);
        return it == coeffs_.end() ? Poly{} : it->second;
    }

    void set(int j, Poly c) {
        check_index(j);
        if (c.is_zero())
            coeffs_.erase(j);
        else
            coeffs_[j] = std::move(c);
    }

    void add(int j, const Poly& c) {
        if (c.is_zero()) return;
        check_index(j);
        auto& slot = coeffs_[j];
        slot += c;
        if (slot.is_zero()) coeffs_.erase(j);
    }

    FrenetExpansion& operator+=(const FrenetExpansion& o) {
        for (const auto& [j, c] : o.coeffs_) add(j, c);
        return *this;
    }

    friend FrenetExpansion operator*(const Poly& s, const FrenetExpansion& v) {
        FrenetExpansion out(v.frame_count_);
        for (const auto& [j, c] : v.coeffs_) out.set(j, s * c);
        return out;
    }

    FrenetExpansion substitute_zero(const std::set<VarId>& vars) const {
        FrenetExpansion out(frame_count_);
        for (const auto& [j, c] : coeffs_) out.set(j, c.substitute_zero(vars));
        return out;
    }

    friend bool operator==(const FrenetExpansion& a, const FrenetExpansion& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    void check_index(int j) const {
        if (j < 1 || j > frame_count_)
            throw std::out_of_range("FrenetExpansion: frame index " + std::to_string(j) +
                                    " outside 1.." + std::to_string(frame_count_));
    }

    int frame_count_;
    std::map<int, Poly> coeffs_;
};

/// Sign conventions of the Frenet recursion. The defaults are the Frenet
/// equations; other values exist only to mutation-test the acceptance suite.
struct FrenetRule {
    int lowering_sign = -1;
    int raising_sign = 1;
};

/// nabla_T v for constant curvatures k_1..k_m (k_j = 0 for j > m):
/// nabla_T F_j = -k_{j-1} F_{j-1} + k_j F_{j+1}.
inline FrenetExpansion frenet_derivative(const FrenetExpansion& v, int m, FrenetRule rule = {}) {
    FrenetExpansion out(v.frame_count());
    for (const auto& [j, c] : v.coefficients()) {
        if (j >= 2)
            out.add(j - 1, c.times(Monomial::var(j - 1), Rational(rule.lowering_sign)));
        if (j <= m) {
            if (j + 1 > v.frame_count())
                throw std::logic_error("frenet_derivative: F_" + std::to_string(j + 1) +
                                       " beyond frame count " + std::to_string(v.frame_count()));
            out.add(j + 1, c.times(Monomial::var(j), Rational(rule.raising_sign)));
        }
    }
    return out;
}

/// All of nabla_T^l T for l = 0..max_order.
inline std::vector<FrenetExpansion> derivative_tower(int max_order, int m, int frame_count,
                                                     FrenetRule rule = {}) {
    std::vector<FrenetExpansion> tower;
    tower.reserve(static_cast<std::size_t>(max_order) + 1);
    tower.push_back(FrenetExpansion::tangent(frame_count));
    for (int l = 1; l <= max_order; ++l) tower.push_back(frenet_derivative(tower.back(), m, rule));
    return tower;
}

/// nabla_T^l T with curvatures k_1..k_m.
inline FrenetExpansion iterated_derivative(int l, int m, FrenetRule rule = {}) {
    if (l < 0) throw std::invalid_argument("iterated_derivative: l < 0");
    if (m < 1) throw std::invalid_argument("iterated_derivative: m < 1");
    return derivative_tower(l, m, m + 2, rule).back();
}

/// Default number of frame slots for order-r computations.
inline int default_frame_count(int r) { return 2 * r; }

/// Tension field of an r-harmonic helix in a space form (symbolic K):
/// nabla^{2r-1}T + K sum_{l=0}^{r-2} (-1)^l (<T,nabla^l T> nabla^{2r-3-l}T - <T,nabla^{2r-3-l}T> nabla^l T),
/// with curvature variables k_1..k_{2r-2}.
inline FrenetExpansion tau_space_form(int r, FrenetRule rule = {}) {
    if (r < 2) throw std::invalid_argument("tau_space_form: r < 2");
    const int m = 2 * r - 2;
    const auto tower = derivative_tower(2 * r - 1, m, default_frame_count(r), rule);
    FrenetExpansion tau = tower[2 * r - 1];
    const Poly K = Poly::ambient();
    for (int l = 0; l <= r - 2; ++l) {
        const int p = 2 * r - 3 - l;
        const Poly sign(l % 2 == 0 ? 1 : -1);
        // <T, X> is the F_1 coefficient.
        tau += (sign * K * tower[l][1]) * tower[p];
        tau += (-sign * K * tower[p][1]) * tower[l];
    }
    if (!tau[default_frame_count(r)].is_zero())
        throw std::logic_error("tau_space_form: truncation leak into the last frame slot");
    return tau;
}

struct ConstraintEquation {
    int frame = 0;
    Poly raw;      ///< F_frame coefficient of tau_r after the zero pattern
    Poly gcd;      ///< signed monomial split off from raw
    Poly factored; ///< raw / gcd, leading term positive
};

struct ConstraintSystem {
    int order = 0;
    std::set<int> zero_pattern;
    std::vector<ConstraintEquation> equations; ///< ordered by frame index
};

/// Split a nonzero polynomial into (signed monomial gcd, cofactor with positive leading term).
inline ConstraintEquation split_equation(int frame, const Poly& raw) {
    auto [g, cofactor] = raw.factor_monomial_gcd();
    Poly gcd = as_poly(g);
    if (cofactor.leading_coefficient() < 0) {
        cofactor = -cofactor;
        gcd = -gcd;
    }
    return {frame, raw, gcd, cofactor};
}

/// Curvature constraint system of an order-r helix with the curvatures in
/// `zero_pattern` set to zero.
inline ConstraintSystem constraint_system(int r, const std::set<int>& zero_pattern = {},
                                          FrenetRule rule = {}) {
    const std::set<VarId> zeros(zero_pattern.begin(), zero_pattern.end());
    const FrenetExpansion tau = tau_space_form(r, rule).substitute_zero(zeros);
    ConstraintSystem sys;
    sys.order = r;
    sys.zero_pattern = zero_pattern;
    for (const auto& [j, c] : tau.coefficients()) sys.equations.push_back(split_equation(j, c));
    return sys;
}

/// The lemma's closed form: F_{2l-2} coefficient -(prod_{i<=2l-3} k_i)(sum_{j<=2l-2} k_j^2)
/// and F_{2l} coefficient prod_{i<=2l-1} k_i of nabla^{2l-1}T (k_i = 0 for i > m).
inline bool highest_derivative_structure_check(int l, int m) {
    if (l < 2 || 2 * (l - 1) > m)
        throw std::invalid_argument("highest_derivative_structure_check: need 2 <= l <= m/2+1");
    const FrenetExpansion d = iterated_derivative(2 * l - 1, m);
    std::set<VarId> beyond;
    for (int i = m + 1; i <= 2 * l; ++i) beyond.insert(i);
    const Poly second = (-curvature_product(1, 2 * l - 3) * sum_of_squares(2 * l - 2)).substitute_zero(beyond);
    const Poly top = curvature_product(1, 2 * l - 1).substitute_zero(beyond);
    return d[2 * l - 2] == second && d[2 * l] == top;
}

} // namespace polyhelix
