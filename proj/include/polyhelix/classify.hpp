#pragma once

// Numerical solution of helix constraint systems, the triharmonic case
// analysis on spheres, and negative-curvature rigidity checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyhelix/frenet.hpp"

namespace polyhelix {

struct HelixSpec {
    int order = 0;
    double K = 0.0;
    std::vector<double> curvatures; ///< k_1..k_{2r-2}
};

struct HelixSolution {
    HelixSpec spec;
    std::vector<double> squared;  ///< x_j = k_j^2, same indexing as curvatures
    double residual = 0.0;        ///< max |factored equation|
    double raw_residual = 0.0;    ///< max |raw equation|
    bool proper = false;          ///< k_1 > 0
    bool pattern_consistent = false; ///< every active non-pattern curvature > 0
};

struct SolveOptions {
    double tol = 1e-10;
    double dedup = 1e-8;
    int trials = 1000;
    std::uint64_t seed = 42;
    int family_samples = 64;
    int grid_per_dim = 7;
};

/// m * combination == sum_i multipliers[i] * equations[i], exactly, with
/// `combination` sign-definite where the assumed-positive variables are positive.
struct Certificate {
    std::string label;
    std::vector<Poly> equations;   ///< in squared variables x_j (slot j), symbolic K
    std::vector<Poly> multipliers;
    Poly monomial_factor;          ///< product of assumed-positive variables
    Poly combination;
    std::set<int> positive_vars;
    bool identity_holds = false;   ///< exact check of the ideal identity
    bool sign_definite = false;    ///< at the numeric K the certificate was checked for
    std::string conclusion;
};

struct SolutionReport {
    int order = 0;
    double K = 0.0;
    std::set<int> zero_pattern;
    std::vector<int> unknowns;      ///< curvature indices solved for
    std::vector<int> free_indices;  ///< non-pattern curvatures that no equation constrains
    int deficit = 0;                ///< local dimension of the solution set
    bool family = false;            ///< true when solutions sample a 1-parameter family
    std::uint64_t seed = 0;
    int multistart_count = 0;
    std::vector<HelixSolution> solutions;
    std::vector<Certificate> certificates;
};

namespace detail {

/// Polynomial in the unknown squared curvatures with K already substituted.
struct CompiledPoly {
    std::vector<double> coef;
    std::vector<std::vector<unsigned>> exps; ///< per term, exponent of each unknown

    double value(const std::vector<double>& x) const {
        double s = 0.0;
        for (std::size_t t = 0; t < coef.size(); ++t) {
            double p = coef[t];
            for (std::size_t i = 0; i < x.size(); ++i)
                for (unsigned e = 0; e < exps[t][i]; ++e) p *= x[i];
            s += p;
        }
        return s;
    }

    void gradient(const std::vector<double>& x, std::vector<double>& g) const {
        g.assign(x.size(), 0.0);
        for (std::size_t t = 0; t < coef.size(); ++t) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (exps[t][i] == 0) continue;
                double p = coef[t] * exps[t][i];
                for (std::size_t j = 0; j < x.size(); ++j) {
                    const unsigned e = exps[t][j] - (j == i ? 1u : 0u);
                    for (unsigned q = 0; q < e; ++q) p *= x[j];
                }
                g[i] += p;
            }
        }
    }
};

inline CompiledPoly compile(const Poly& p_squared, const std::vector<int>& unknowns, double K) {
    CompiledPoly c;
    for (const auto& [m, coef] : p_squared.terms()) {
        double v = static_cast<double>(coef);
        std::vector<unsigned> e(unknowns.size(), 0);
        for (const auto& [var, pw] : m.factors()) {
            if (var == kAmbient) {
                v *= std::pow(K, static_cast<double>(pw));
                continue;
            }
            auto it = std::find(unknowns.begin(), unknowns.end(), var);
            if (it == unknowns.end()) throw std::logic_error("compile: variable outside unknowns");
            e[static_cast<std::size_t>(it - unknowns.begin())] = pw;
        }
        if (v != 0.0) {
            c.coef.push_back(v);
            c.exps.push_back(std::move(e));
        }
    }
    return c;
}

struct NumericSystem {
    std::vector<CompiledPoly> eqs;
    std::size_t n = 0;

    double max_abs(const std::vector<double>& x) const {
        double r = 0.0;
        for (const auto& e : eqs) r = std::max(r, std::abs(e.value(x)));
        return r;
    }

    Eigen::VectorXd values(const std::vector<double>& x) const {
        Eigen::VectorXd f(static_cast<Eigen::Index>(eqs.size()));
        for (std::size_t i = 0; i < eqs.size(); ++i) f[static_cast<Eigen::Index>(i)] = eqs[i].value(x);
        return f;
    }

    Eigen::MatrixXd jacobian(const std::vector<double>& x) const {
        Eigen::MatrixXd J(static_cast<Eigen::Index>(eqs.size()), static_cast<Eigen::Index>(n));
        std::vector<double> g;
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            eqs[i].gradient(x, g);
            for (std::size_t j = 0; j < n; ++j)
                J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g[j];
        }
        return J;
    }
};

/// Damped minimum-norm Gauss-Newton on x >= 0. `fixed` marks coordinates held constant.
inline std::optional<std::vector<double>> newton(const NumericSystem& sys, std::vector<double> x,
                                                 const std::vector<bool>& fixed, double tol) {
    std::vector<int> free_cols;
    for (std::size_t j = 0; j < sys.n; ++j)
        if (!fixed[j]) free_cols.push_back(static_cast<int>(j));
    Eigen::VectorXd f = sys.values(x);
    double fn = f.norm();
    for (int it = 0; it < 200 && fn > 1e-15; ++it) {
        const Eigen::MatrixXd Jfull = sys.jacobian(x);
        Eigen::MatrixXd J(Jfull.rows(), static_cast<Eigen::Index>(free_cols.size()));
        for (std::size_t c = 0; c < free_cols.size(); ++c) J.col(static_cast<Eigen::Index>(c)) = Jfull.col(free_cols[c]);
        if (J.cols() == 0) break;
        const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(-f);
        double t = 1.0;
        bool improved = false;
        std::vector<double> trial(x);
        while (t > 1e-6) {
            trial = x;
            for (std::size_t c = 0; c < free_cols.size(); ++c) {
                auto& xi = trial[static_cast<std::size_t>(free_cols[c])];
                xi = std::max(0.0, xi + t * step[static_cast<Eigen::Index>(c)]);
            }
            Eigen::VectorXd ft = sys.values(trial);
            if (ft.norm() < fn) {
                f = ft;
                fn = ft.norm();
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if (!improved) break;
        double moved = 0.0;
        for (std::size_t j = 0; j < sys.n; ++j) moved = std::max(moved, std::abs(trial[j] - x[j]));
        x = trial;
        if (moved < 1e-16) break;
    }
    if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) return std::nullopt;
    if (sys.max_abs(x) >= tol) return std::nullopt;
    // Flat roots near a coordinate plane: keep the boundary point when it is just as good.
    for (std::size_t j = 0; j < sys.n; ++j) {
        if (fixed[j] || x[j] == 0.0 || x[j] > 1e-6) continue;
        std::vector<double> snapped(x);
        snapped[j] = 0.0;
        if (sys.max_abs(snapped) < tol) x = std::move(snapped);
    }
    return x;
}

inline double inf_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline void insert_distinct(std::vector<std::vector<double>>& roots, const std::vector<double>& x,
                            double dedup) {
    for (const auto& r : roots)
        if (inf_distance(r, x) <= dedup) return;
    roots.push_back(x);
}

/// Starting points: the jittered grid when it fits the trial budget, else seeded uniform draws.
inline std::vector<std::vector<double>> multistart_points(std::size_t dim, double hi, const SolveOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::vector<std::vector<double>> pts;
    if (dim == 0) return pts;
    const double grid_total = std::pow(static_cast<double>(opt.grid_per_dim), static_cast<double>(dim));
    if (grid_total <= static_cast<double>(opt.trials)) {
        const double cell = hi / (opt.grid_per_dim - 1);
        std::uniform_real_distribution<double> jitter(-0.05 * cell, 0.05 * cell);
        std::vector<int> idx(dim, 0);
        while (true) {
            std::vector<double> p(dim);
            for (std::size_t i = 0; i < dim; ++i) p[i] = std::max(0.0, idx[i] * cell + jitter(rng));
            pts.push_back(std::move(p));
            std::size_t d = 0;
            while (d < dim && ++idx[d] == opt.grid_per_dim) idx[d++] = 0;
            if (d == dim) break;
        }
    } else {
        std::uniform_real_distribution<double> u(0.0, hi);
        for (int t = 0; t < opt.trials; ++t) {
            std::vector<double> p(dim);
            for (auto& v : p) v = u(rng);
            pts.push_back(std::move(p));
        }
    }
    return pts;
}

inline int numeric_corank(const NumericSystem& sys, const std::vector<double>& x) {
    const Eigen::MatrixXd J = sys.jacobian(x);
    if (J.rows() == 0) return static_cast<int>(sys.n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s[0] : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > 1e-8 * std::max(1.0, smax)) ++rank;
    return static_cast<int>(sys.n) - rank;
}

} // namespace detail

/// Sign-definiteness of `p` (squared variables) at numeric K when the
/// variables in `positive_vars` are > 0 and all others >= 0.
/// Returns +1/-1 when p is strictly positive/negative there, 0 otherwise.
inline int sign_on_positive_orthant(const Poly& p, double K, const std::set<int>& positive_vars) {
    if (p.is_zero()) return 0;
    // Collect coefficients as a polynomial in the x's only.
    std::map<Monomial, double> coeffs;
    for (const auto& [m, c] : p.terms()) {
        std::vector<Monomial::Factor> rest;
        double v = static_cast<double>(c);
        for (const auto& [var, e] : m.factors()) {
            if (var == kAmbient)
                v *= std::pow(K, static_cast<double>(e));
            else
                rest.emplace_back(var, e);
        }
        coeffs[Monomial::from_factors(rest)] += v;
    }
    int sign = 0;
    bool has_positive_term = false;
    for (const auto& [m, v] : coeffs) {
        if (v == 0.0) continue;
        const int s = v > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign) return 0;
        bool strictly = true;
        for (const auto& [var, e] : m.factors())
            if (!positive_vars.count(var)) strictly = false;
        has_positive_term = has_positive_term || strictly;
    }
    return has_positive_term ? sign : 0;
}

/// Verify m * combination == sum multipliers_i * equations_i and the sign of `combination`.
inline Certificate make_certificate(std::string label, std::vector<Poly> equations, std::vector<Poly> multipliers,
                                    Poly monomial_factor, std::set<int> positive_vars, double K) {
    Certificate c;
    c.label = std::move(label);
    c.equations = std::move(equations);
    c.multipliers = std::move(multipliers);
    c.monomial_factor = std::move(monomial_factor);
    c.positive_vars = std::move(positive_vars);
    Poly sum;
    for (std::size_t i = 0; i < c.equations.size(); ++i) sum += c.multipliers[i] * c.equations[i];
    // Divide out the stated monomial factor exactly.
    const Monomial mf = c.monomial_factor.is_zero() ? Monomial{} : c.monomial_factor.terms().begin()->first;
    Poly combination;
    bool divisible = true;
    for (const auto& [m, coef] : sum.terms()) {
        try {
            combination += Poly(Monomial::divide(m, mf), coef);
        } catch (const std::domain_error&) {
            divisible = false;
        }
    }
    c.combination = combination;
    c.identity_holds = divisible && !combination.is_zero() && c.monomial_factor * combination == sum;
    for (const auto& [var, e] : mf.factors())
        if (var != kAmbient && !c.positive_vars.count(var)) c.identity_holds = false;
    c.sign_definite = sign_on_positive_orthant(c.combination, K, c.positive_vars) != 0;
    return c;
}

inline std::vector<Certificate> infeasibility_certificates(int r, double K, const std::set<int>& zero_pattern);

/// Solve the order-r helix constraint system with `zero_pattern` curvatures set to zero.
inline SolutionReport solve_helix(int r, double K, const std::set<int>& zero_pattern,
                                  const SolveOptions& opt = {}) {
    if (r < 2 || r > 6) throw std::invalid_argument("solve_helix: order must be in 2..6");
    if (!(opt.tol > 0)) throw std::invalid_argument("solve_helix: tol must be positive");
    const int m = 2 * r - 2;
    const ConstraintSystem sys = constraint_system(r, zero_pattern);

    SolutionReport rep;
    rep.order = r;
    rep.K = K;
    rep.zero_pattern = zero_pattern;
    rep.seed = opt.seed;

    std::vector<Poly> eq_sq;
    std::set<int> appearing;
    for (const auto& eq : sys.equations) {
        eq_sq.push_back(to_squared_variables(eq.factored));
        for (VarId v : eq_sq.back().variables())
            if (v != kAmbient) appearing.insert(v);
    }
    rep.unknowns.assign(appearing.begin(), appearing.end());
    for (int j = 1; j <= m; ++j)
        if (!zero_pattern.count(j) && !appearing.count(j)) rep.free_indices.push_back(j);

    detail::NumericSystem num;
    num.n = rep.unknowns.size();
    for (const auto& p : eq_sq) num.eqs.push_back(detail::compile(p, rep.unknowns, K));

    auto full_x = [&](const std::vector<double>& u) {
        std::vector<double> x(static_cast<std::size_t>(m), 0.0);
        for (std::size_t i = 0; i < u.size(); ++i) x[static_cast<std::size_t>(rep.unknowns[i] - 1)] = u[i];
        return x;
    };
    auto make_solution = [&](const std::vector<double>& u) {
        HelixSolution s;
        s.squared = full_x(u);
        s.spec.order = r;
        s.spec.K = K;
        std::map<VarId, double> assign{{kAmbient, K}};
        for (int j = 1; j <= m; ++j) {
            const double kj = std::sqrt(s.squared[static_cast<std::size_t>(j - 1)]);
            s.spec.curvatures.push_back(kj);
            assign[j] = kj;
        }
        s.residual = num.max_abs(u);
        for (const auto& eq : sys.equations) s.raw_residual = std::max(s.raw_residual, std::abs(eq.raw.evaluate(assign)));
        s.proper = s.spec.curvatures.at(0) > 1e-6;
        s.pattern_consistent = std::all_of(rep.unknowns.begin(), rep.unknowns.end(),
                                           [&](int j) { return s.spec.curvatures[static_cast<std::size_t>(j - 1)] > 1e-6; });
        return s;
    };

    if (num.n == 0) {
        // No unknowns: either no equations (any tuple) or constant equations.
        rep.multistart_count = 0;
        if (num.max_abs({}) < opt.tol) rep.solutions.push_back(make_solution({}));
        return rep;
    }

    const double hi = 4.0 * std::abs(K) + 4.0;
    const auto starts = detail::multistart_points(num.n, hi, opt);
    rep.multistart_count = static_cast<int>(starts.size());
    const std::vector<bool> none_fixed(num.n, false);
    std::vector<std::vector<double>> roots;
    for (const auto& x0 : starts)
        if (auto x = detail::newton(num, x0, none_fixed, opt.tol)) detail::insert_distinct(roots, *x, opt.dedup);

    if (!roots.empty()) {
        // Local dimension at a pattern-consistent root when one exists.
        auto it = std::find_if(roots.begin(), roots.end(), [](const auto& u) {
            return std::all_of(u.begin(), u.end(), [](double v) { return v > 1e-12; });
        });
        rep.deficit = detail::numeric_corank(num, it != roots.end() ? *it : roots.front());
    }

    const bool x1_unknown = !rep.unknowns.empty() && rep.unknowns.front() == 1;
    std::vector<std::vector<double>> consistent;
    for (const auto& u : roots)
        if (std::all_of(u.begin(), u.end(), [](double v) { return v > 1e-6; })) consistent.push_back(u);

    if (rep.deficit == 1 && x1_unknown && !consistent.empty() && opt.family_samples > 1) {
        rep.family = true;
        std::vector<bool> fix_x1(num.n, false);
        fix_x1[0] = true;
        auto solve_at = [&](double v, const std::vector<std::vector<double>>& seeds) -> std::optional<std::vector<double>> {
            std::vector<const std::vector<double>*> order;
            for (const auto& s : seeds) order.push_back(&s);
            std::sort(order.begin(), order.end(), [&](auto* a, auto* b) {
                return std::abs((*a)[0] - v) < std::abs((*b)[0] - v);
            });
            for (std::size_t i = 0; i < std::min<std::size_t>(order.size(), 4); ++i) {
                std::vector<double> x0 = *order[i];
                x0[0] = v;
                auto x = detail::newton(num, x0, fix_x1, opt.tol);
                if (x && std::all_of(x->begin(), x->end(), [](double q) { return q > 1e-6; })) return x;
            }
            return std::nullopt;
        };
        double lo = hi, up = 0.0;
        for (const auto& u : consistent) {
            lo = std::min(lo, u[0]);
            up = std::max(up, u[0]);
        }
        // Continue outward until the family leaves the admissible region.
        std::vector<std::vector<double>> seeds = consistent;
        const double step = std::max((up - lo) / 63.0, hi / 1024.0);
        for (int dir : {-1, 1}) {
            double edge = dir < 0 ? lo : up;
            std::vector<std::vector<double>> local = seeds;
            for (int n = 0; n < 4096; ++n) {
                double next = edge + dir * step;
                std::optional<std::vector<double>> x;
                for (double h = step; h > step * 1e-6 && !x; h *= 0.5) {
                    next = edge + dir * h;
                    if (next <= 0.0 || next > hi) continue;
                    x = solve_at(next, local);
                }
                if (!x) break;
                edge = next;
                local.assign(1, *x);
                seeds.push_back(*x);
            }
            (dir < 0 ? lo : up) = edge;
        }
        std::vector<std::vector<double>> samples;
        for (int i = 0; i < opt.family_samples; ++i) {
            const double v = lo + (up - lo) * i / (opt.family_samples - 1);
            if (auto x = solve_at(v, seeds)) detail::insert_distinct(samples, *x, opt.dedup);
        }
        roots = std::move(samples);
    }

    std::sort(roots.begin(), roots.end());
    for (const auto& u : roots) rep.solutions.push_back(make_solution(u));
    if (std::none_of(rep.solutions.begin(), rep.solutions.end(),
                     [](const HelixSolution& s) { return s.proper && s.pattern_consistent; }))
        rep.certificates = infeasibility_certificates(r, K, zero_pattern);
    return rep;
}

/// |sum k_j^2 - K| < tol and the full (all-nonzero) constraint system holds to tol.
inline bool sum_of_squares_check(const HelixSpec& spec, double tol) {
    const int m = 2 * spec.order - 2;
    if (static_cast<int>(spec.curvatures.size()) != m)
        throw std::invalid_argument("sum_of_squares_check: need 2r-2 curvatures");
    if (std::any_of(spec.curvatures.begin(), spec.curvatures.end(), [](double k) { return k == 0.0; }))
        throw std::invalid_argument("sum_of_squares_check: all curvatures must be nonzero");
    double s = 0.0;
    std::map<VarId, double> assign{{kAmbient, spec.K}};
    for (int j = 1; j <= m; ++j) {
        const double k = spec.curvatures[static_cast<std::size_t>(j - 1)];
        s += k * k;
        assign[j] = k;
    }
    if (!(std::abs(s - spec.K) < tol)) return false;
    for (const auto& eq : constraint_system(spec.order).equations)
        if (!(std::abs(eq.factored.evaluate(assign)) < tol)) return false;
    return true;
}

/// Certificate that the top equation sum x_j - K cannot vanish for K < 0.
inline Certificate top_equation_witness(int r, double K) {
    const int m = 2 * r - 2;
    Poly top = to_squared_variables(sum_of_squares(m) - Poly::ambient());
    std::set<int> pos;
    for (int j = 1; j <= m; ++j) pos.insert(j);
    Certificate c = make_certificate("sum_j k_j^2 = K with every k_j != 0", {top}, {Poly(1)}, Poly(1), pos, K);
    c.conclusion = c.sign_definite ? "sum of squares of nonzero curvatures is positive, K is not"
                                   : "not sign-definite at this K";
    return c;
}

/// First equation of a pattern's system that alone rules out k_1 > 0 at this K.
inline std::optional<Certificate> pattern_witness(int r, double K, const std::set<int>& zero_pattern) {
    const ConstraintSystem sys = constraint_system(r, zero_pattern);
    for (const auto& eq : sys.equations) {
        const Poly e = to_squared_variables(eq.factored);
        // With x >= 0 and a pure x_1 term, a same-signed polynomial vanishes only if x_1 = 0.
        Certificate c = make_certificate("frame " + std::to_string(eq.frame) + " equation", {e}, {Poly(1)}, Poly(1), {1}, K);
        if (c.identity_holds && sign_on_positive_orthant(e, K, {1}) != 0) {
            c.conclusion = "same-signed with a pure k_1 term: forces k_1 = 0";
            return c;
        }
    }
    return std::nullopt;
}

/// Certificates that rule out pattern-consistent roots of a zero pattern (possibly none).
/// Uses the top equation sum x_j = K to eliminate K from the others, and single
/// same-signed equations.
inline std::vector<Certificate> infeasibility_certificates(int r, double K, const std::set<int>& zero_pattern) {
    std::vector<Certificate> out;
    const ConstraintSystem sys = constraint_system(r, zero_pattern);
    std::vector<Poly> eqs;
    std::set<int> active;
    for (const auto& eq : sys.equations) {
        eqs.push_back(to_squared_variables(eq.factored));
        for (VarId v : eqs.back().variables())
            if (v != kAmbient) active.insert(v);
    }
    if (eqs.empty()) return out;

    Poly S;
    for (int j : active) S += Poly::k(j);
    const Poly top = S - Poly::ambient();
    const auto top_it = std::find(eqs.begin(), eqs.end(), top);
    if (top_it != eqs.end()) {
        const std::size_t t = static_cast<std::size_t>(top_it - eqs.begin());
        if (K <= 0) {
            Certificate c = make_certificate("frame " + std::to_string(sys.equations[t].frame) + " equation",
                                             {top}, {Poly(1)}, Poly(1), active, K);
            c.conclusion = "sum of the squared curvatures is positive, K is not";
            if (c.identity_holds && c.sign_definite) out.push_back(std::move(c));
        }
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            if (i == t) continue;
            // E|_{K=S} = E + (S - K) * sum_n C_n sum_{a<n} K^a S^{n-1-a}
            std::map<unsigned, Poly> byK;
            for (const auto& [m, c] : eqs[i].terms()) {
                std::vector<Monomial::Factor> rest;
                for (const auto& f : m.factors())
                    if (f.first != kAmbient) rest.push_back(f);
                byK[m.exponent(kAmbient)] += Poly(Monomial::from_factors(rest), c);
            }
            Poly lambda;
            for (const auto& [n, C] : byK)
                for (unsigned a = 0; a < n; ++a) lambda += C * pow(Poly::ambient(), a) * pow(S, n - 1 - a);
            std::vector<Poly> mult(eqs.size(), Poly{});
            mult[i] = Poly(1);
            mult[t] = lambda;
            Certificate c = make_certificate("frame " + std::to_string(sys.equations[i].frame) +
                                                 " equation with K eliminated",
                                             eqs, mult, Poly(1), active, K);
            if (c.identity_holds && c.sign_definite && c.combination.variables().count(kAmbient) == 0) {
                c.conclusion = "same-signed polynomial in positive squared curvatures";
                out.push_back(std::move(c));
                break;
            }
        }
    }
    if (out.empty() && K <= 0)
        if (auto w = pattern_witness(r, K, zero_pattern)) out.push_back(std::move(*w));
    return out;
}

struct NegativeCurvatureScan {
    int order = 0;
    double K = 0.0;
    int trials = 0;
    int patterns_scanned = 0;
    int solutions_found = 0;
    int proper_solutions = 0;
    int patterns_certified = 0; ///< patterns with an exact witness that k_1 = 0
    Certificate witness;
    bool rigid = false; ///< no proper solution anywhere
};

/// All zero patterns over k_2..k_{2r-2}; every root must have k_1 = 0.
inline NegativeCurvatureScan negative_K_scan(int r, double K, int trials, std::uint64_t seed = 42) {
    if (!(K < 0)) throw std::invalid_argument("negative_K_scan: K must be negative");
    if (trials < 1000) throw std::invalid_argument("negative_K_scan: trials must be >= 1000");
    NegativeCurvatureScan out;
    out.order = r;
    out.K = K;
    out.trials = trials;
    const int m = 2 * r - 2;
    SolveOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
        std::set<int> pattern;
        for (int j = 2; j <= m; ++j)
            if (mask & (1u << (j - 2))) pattern.insert(j);
        const SolutionReport rep = solve_helix(r, K, pattern, opt);
        ++out.patterns_scanned;
        out.solutions_found += static_cast<int>(rep.solutions.size());
        for (const auto& s : rep.solutions) out.proper_solutions += s.proper ? 1 : 0;
        if (pattern_witness(r, K, pattern)) ++out.patterns_certified;
    }
    out.witness = top_equation_witness(r, K);
    out.rigid = out.proper_solutions == 0;
    return out;
}

struct TriharmonicCase {
    int id = 0;
    std::string label;
    std::set<int> zero_pattern;
    std::string outcome; ///< "isolated", "family", "infeasible", "empty"
    std::optional<int> merged_into;
    SolutionReport report;
    std::optional<Certificate> certificate;
    std::vector<double> k1_squared; ///< distinct k_1^2 values found (pattern-consistent)
};

struct PatternCoverage {
    std::set<int> zero_pattern;
    int case_id = 0;
    bool system_matches_case = false;
};

struct TriharmonicCaseAnalysis {
    double K = 0.0;
    std::vector<TriharmonicCase> cases;
    std::vector<PatternCoverage> coverage;
    bool complete = false;
};

/// The six-case classification of proper triharmonic helices.
inline TriharmonicCaseAnalysis triharmonic_case_analysis(double K, const SolveOptions& opt = {}) {
    TriharmonicCaseAnalysis out;
    out.K = K;
    const Poly Ks = Poly::ambient();
    const Poly x1 = Poly::k(1), x2 = Poly::k(2), x3 = Poly::k(3), x4 = Poly::k(4);

    struct Def {
        int id;
        const char* label;
        std::set<int> pattern;
        std::optional<int> merged;
    };
    const std::vector<Def> defs = {
        {1, "k1 != 0, k2 = k3 = k4 = 0", {2, 3, 4}, std::nullopt},
        {2, "k1, k2 != 0, k3 = k4 = 0", {3, 4}, std::nullopt},
        {3, "k1, k2, k3 != 0, k4 = 0", {4}, std::nullopt},
        {4, "all of k1..k4 != 0", {}, std::nullopt},
        {5, "k1 != 0, k2 = 0, k3 != 0, k4 = 0", {2, 4}, 1},
        {6, "k1, k2 != 0, k3 = 0, k4 != 0", {3}, 2},
    };
    for (const auto& d : defs) {
        TriharmonicCase c;
        c.id = d.id;
        c.label = d.label;
        c.zero_pattern = d.pattern;
        c.merged_into = d.merged;
        c.report = solve_helix(3, K, d.pattern, opt);
        for (const auto& s : c.report.solutions) {
            if (!s.pattern_consistent || !s.proper) continue;
            const double v = s.squared[0];
            if (std::none_of(c.k1_squared.begin(), c.k1_squared.end(), [&](double w) { return std::abs(w - v) < 1e-8; }))
                c.k1_squared.push_back(v);
        }
        const bool any = !c.k1_squared.empty();
        if (!any)
            c.outcome = K > 0 ? "infeasible" : "empty";
        else
            c.outcome = c.report.family ? "family" : "isolated";

        const auto sys = constraint_system(3, d.pattern);
        std::vector<Poly> eqs;
        for (const auto& eq : sys.equations) eqs.push_back(to_squared_variables(eq.factored));
        if (d.id == 3 && eqs.size() == 2) {
            // x1 * (x2 x3 + K x2) = -x2 E1 + x2 (x1 + x2) E2
            c.certificate = make_certificate("k4 = 0 elimination", eqs, {-x2, x2 * (x1 + x2)}, x1, {1, 2, 3}, K);
            c.certificate->conclusion = "k2^2 (K + k3^2) = 0 is impossible with k2, k3 != 0";
        } else if (d.id == 4 && eqs.size() == 2) {
            // x1 (K + x3 + x4) + x2 x4 = -E1 + (x1 + x2) E2
            c.certificate = make_certificate("full elimination", eqs, {Poly(-1), x1 + x2}, Poly(1), {1, 2, 3, 4}, K);
            c.certificate->conclusion = "k1^2 (K + k3^2 + k4^2) + k2^2 k4^2 = 0 is impossible with all k_j != 0";
        }
        if (K <= 0 && !c.certificate) {
            if (auto w = pattern_witness(3, K, d.pattern)) c.certificate = *w;
        }
        out.cases.push_back(std::move(c));
    }

    // Every zero pattern of (k2, k3, k4) maps to the case of its first vanishing index.
    bool complete = true;
    for (unsigned mask = 0; mask < 8; ++mask) {
        PatternCoverage pc;
        for (int j = 2; j <= 4; ++j)
            if (mask & (1u << (j - 2))) pc.zero_pattern.insert(j);
        std::set<int> canonical;
        if (!pc.zero_pattern.empty())
            for (int j = *pc.zero_pattern.begin(); j <= 4; ++j) canonical.insert(j);
        auto it = std::find_if(defs.begin(), defs.end(), [&](const Def& d) { return d.pattern == pc.zero_pattern; });
        if (it != defs.end()) {
            pc.case_id = it->id;
        } else {
            auto jt = std::find_if(defs.begin(), defs.end(), [&](const Def& d) { return d.pattern == canonical; });
            pc.case_id = jt != defs.end() ? jt->id : 0;
        }
        const auto a = constraint_system(3, pc.zero_pattern);
        const auto b = constraint_system(3, canonical);
        pc.system_matches_case = a.equations.size() == b.equations.size();
        for (std::size_t i = 0; pc.system_matches_case && i < a.equations.size(); ++i)
            pc.system_matches_case = a.equations[i].factored == b.equations[i].factored;
        complete = complete && pc.case_id != 0 && pc.system_matches_case;
        out.coverage.push_back(pc);
    }
    out.complete = complete;
    return out;
}

} // namespace polyhelix
