#pragma once

// The acceptance suite: twelve criteria with fixed tolerances and time budgets.
// FrenetRule lets a caller run the symbolic criteria against a broken recursion.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polyhelix/classify.hpp"
#include "polyhelix/frenet.hpp"
#include "polyhelix/odelab.hpp"
#include "polyhelix/reference.hpp"
#include "polyhelix/spherecurves.hpp"

namespace polyhelix::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string category; ///< "symbolic" (exact equality) or "numeric"
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double budget = 0.0;
};

struct Options {
    FrenetRule rule{};
    std::optional<std::string> only; ///< restrict to one category
    std::uint64_t seed = 42;
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

struct Outcome {
    bool pass;
    std::string detail;
};

inline bool same(const FrenetExpansion& got, const reference::Expansion& want) {
    if (got.coefficients().size() != want.size()) return false;
    for (const auto& [j, c] : want)
        if (got[j] != c) return false;
    return true;
}

inline Outcome derivative_suite(const Options& o) {
    const auto want = reference::derivatives_m6();
    int ok = 0;
    for (int l = 1; l <= 7; ++l) ok += same(iterated_derivative(l, 6, o.rule), want[static_cast<std::size_t>(l)]) ? 1 : 0;
    return {ok == 7, std::to_string(ok) + "/7 expansions identical"};
}

inline Outcome constraint_reproduction(const Options& o) {
    const auto tri = constraint_system(3, {}, o.rule), four = constraint_system(4, {}, o.rule);
    const auto tri_ref = reference::triharmonic_constraints(), four_ref = reference::fourharmonic_constraints();
    auto match = [](const ConstraintSystem& s, const std::vector<Poly>& ref, int& split_ok) {
        bool eq = s.equations.size() == ref.size();
        for (std::size_t i = 0; eq && i < ref.size(); ++i) eq = s.equations[i].factored == ref[i];
        for (const auto& e : s.equations) split_ok += e.raw == e.gcd * e.factored ? 1 : 0;
        return eq;
    };
    int split_ok = 0;
    const bool a = match(tri, tri_ref, split_ok), b = match(four, four_ref, split_ok);
    const int nsplit = static_cast<int>(tri.equations.size() + four.equations.size());
    return {a && b && split_ok == nsplit, std::string("r=3 ") + (a ? "match" : "differ") + ", r=4 " + (b ? "match" : "differ") +
                                              ", raw = gcd*factored " + std::to_string(split_ok) + "/" + std::to_string(nsplit)};
}

inline Outcome top_equation(const Options& o) {
    std::string bad;
    for (int r = 2; r <= 6; ++r) {
        const auto sys = constraint_system(r, {}, o.rule);
        const auto want = sum_of_squares(2 * r - 2) - Poly::ambient();
        if (sys.equations.empty() || sys.equations.back().frame != 2 * r - 2 || sys.equations.back().factored != want)
            bad += " r=" + std::to_string(r);
    }
    return {bad.empty(), bad.empty() ? "top equation = sum k_j^2 - K for r = 2..6" : "mismatch at" + bad};
}

inline Outcome biharmonic() {
    double worst = biharmonic_residual(curves::biharmonic_circle());
    for (double a2 : {1.2, 1.5, 1.8}) worst = std::max(worst, biharmonic_residual(curves::biharmonic_two_freq(a2)));
    worst = std::max(worst, biharmonic_residual(curves::great_circle()));
    return {worst < 1e-12, "max residual " + fmt(worst) + " (circle, 3 two-frequency pairs, great circle)"};
}

inline Outcome triharmonic() {
    double tau = intrinsic_tau_residual(curves::tri_planar(), 3);
    const auto pts = solve_tri_hyperbola(32);
    double hyp = 0.0, lam = 0.0;
    for (const auto& p : pts) {
        hyp = std::max(hyp, std::abs(p.x * p.x + p.y * p.y - 4 * (p.x + p.y) + 3 * p.x * p.y + 3));
        tau = std::max(tau, intrinsic_tau_residual(p.curve(), 3));
        for (double v : lambda_system_residual(p.x, p.y, p.alpha1sq, p.alpha3sq, p.lambda)) lam = std::max(lam, std::abs(v));
    }
    const bool ok = pts.size() >= 16 && tau < 1e-9 && hyp < 1e-12 && lam < 1e-10;
    return {ok, std::to_string(pts.size()) + " hyperbola samples; tau3 " + fmt(tau) + ", hyperbola " + fmt(hyp) + ", lambda system " + fmt(lam)};
}

inline Outcome fourharmonic() {
    const double f = fourharmonic_residual(curves::four_planar()), t = intrinsic_tau_residual(curves::four_planar(), 4);
    const double b = fourharmonic_residual(curves::biharmonic_circle());
    return {f < 1e-10 && t < 1e-9 && b > 0.1, "a=2: ODE " + fmt(f) + ", tau4 " + fmt(t) + "; biharmonic circle " + fmt(b)};
}

inline Outcome geodesic_checks() {
    const double a = geodesic_curvatures(curves::biharmonic_circle(), 1).values[0];
    const double b = geodesic_curvatures(curves::tri_planar(), 1).values[0];
    const double c = geodesic_curvatures(curves::four_planar(), 1).values[0];
    const double e = std::max({std::abs(a - 1), std::abs(b - std::sqrt(2.0)), std::abs(c - std::sqrt(3.0))});
    return {e < 1e-10, "k1 = " + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + "; max error " + fmt(e)};
}

inline Outcome stationarity(const Options& o) {
    const auto hyp = hyperbola_points_at(2.0).at(0).curve();
    const std::vector<std::pair<TrigCurve, int>> certified{{curves::biharmonic_circle(), 2},
                                                           {curves::biharmonic_two_freq(1.5), 2},
                                                           {curves::tri_planar(), 3},
                                                           {hyp, 3},
                                                           {curves::four_planar(), 4}};
    double worst = 0.0, weakest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10; ++i) {
        const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
        for (const auto& [c, r] : certified) worst = std::max(worst, std::abs(first_variation(c, r, random_bump(c.dim() + 1, seed))));
        const auto tp = curves::tri_planar();
        weakest = std::min(weakest, std::abs(first_variation(tp, 2, random_bump(tp.dim() + 1, seed))));
    }
    return {worst <= 1e-5 && weakest > 1e-3,
            "max |dE| on certified curves " + fmt(worst) + "; min |dE_2| on tri-planar " + fmt(weakest)};
}

inline Outcome rigidity(const Options& o) {
    std::string d;
    bool ok = true;
    for (int r : {3, 4}) {
        const auto scan = negative_K_scan(r, -1.0, 1000, o.seed);
        const bool good = scan.rigid && scan.witness.identity_holds && scan.witness.sign_definite;
        ok = ok && good;
        d += (d.empty() ? "" : "; ") + std::string("r=") + std::to_string(r) + ": " + std::to_string(scan.patterns_scanned) +
             " patterns, " + std::to_string(scan.proper_solutions) + " proper, certificate " + (good ? "valid" : "invalid");
    }
    return {ok, d};
}

inline Outcome conservation() {
    const auto tri = conservation_monitor_tri(sample_trig_curve(curves::tri_planar(), 512), 1.0);
    const auto flat = conservation_monitor_tri(integrate_frenet(CurvatureProfile::parse("k1=1/s,k2=2/s"), 3, 1, 3, 1e-3), 0.0);
    const auto grid = uniform_grid(1, 3, 201);
    const double ode5 = curvature_ode_residual(CurvatureProfile::power_law({1.0, 2.0}, 1), 0.0, grid);
    const double alpha = 1.0, beta = std::sqrt(3.0);
    const auto vals = curvature_ode_values(CurvatureProfile::power_law({alpha, beta}, 1), 0.0, grid);
    double shape = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) shape = std::max(shape, std::abs(vals[i] * std::pow(grid[i], 4) - alpha * alpha));
    const bool ok = tri.drift < 1e-6 && std::abs(flat.c1) < 1e-5 && ode5 < 1e-13 && shape < 1e-12;
    return {ok, "tri-planar drift " + fmt(tri.drift) + ", flat c1 " + fmt(flat.c1) + ", ODE(5) " + fmt(ode5) +
                    ", |s^4 r(s) - a^2| for rho=4 " + fmt(shape)};
}

inline Outcome conjecture_evidence() {
    const auto grid = parse_grid("0:4:41");
    const double dbeta = grid[1] - grid[0];
    const auto scan = conjecture_scan(3, 1.0, grid);
    const double b = scan.rows[scan.argmin].beta;
    const auto four = conjecture_scan(4, 1.0, parse_grid("0:2:11"));
    const bool ok = std::abs(b - 2.0) <= dbeta + 1e-12 && four.rows.size() == 11;
    return {ok, "r=3 argmin of |tau_3| at beta=" + std::to_string(b) + " (beta^2=" + std::to_string(b * b) +
                    "), tangential part vanishes at beta=" + std::to_string(scan.rows[scan.argmin_tangential].beta) +
                    "; r=4 table " + std::to_string(four.rows.size()) + " rows"};
}

inline Outcome integrator_order() {
    const double L = 2 * std::numbers::pi;
    IntegrateOptions plain;
    plain.error_control = false;
    auto err = [&](int n) {
        const auto c = integrate_frenet(CurvatureProfile::constant({1.0}), 2, 0, L, L / n, plain);
        const auto& p = c.positions.back();
        return std::hypot(p[0] - std::sin(L), p[1] - (1 - std::cos(L)));
    };
    const double ratio = err(32) / err(64);
    const double gram = integrate_frenet(CurvatureProfile::constant({1.0, 1.0}), 4, 0, 100, 1e-2).gram_defect;
    return {ratio >= 8 && gram < 1e-8, "error ratio " + std::to_string(ratio) + ", Gram defect over span 100 " + fmt(gram)};
}

struct Criterion {
    int id;
    const char* name;
    const char* category;
    double budget;
    std::function<Outcome(const Options&)> run;
};

inline std::vector<Criterion> criteria() {
    return {
        {1, "symbolic derivative suite", "symbolic", 1, derivative_suite},
        {2, "constraint reproduction", "symbolic", 1, constraint_reproduction},
        {3, "top equation emergence", "symbolic", 10, top_equation},
        {4, "biharmonic solutions", "numeric", 1, [](const Options&) { return biharmonic(); }},
        {5, "triharmonic solutions", "numeric", 5, [](const Options&) { return triharmonic(); }},
        {6, "4-harmonic solution", "numeric", 2, [](const Options&) { return fourharmonic(); }},
        {7, "geodesic curvature cross-checks", "numeric", 1, [](const Options&) { return geodesic_checks(); }},
        {8, "variational stationarity", "numeric", 30, stationarity},
        {9, "negative curvature rigidity", "numeric", 10, rigidity},
        {10, "conservation laws", "numeric", 10, [](const Options&) { return conservation(); }},
        {11, "power-law scan minimum", "numeric", 30, [](const Options&) { return conjecture_evidence(); }},
        {12, "integrator order", "numeric", 5, [](const Options&) { return integrator_order(); }},
    };
}

} // namespace detail

inline std::vector<CriterionResult> run(const Options& o = {}) {
    std::vector<CriterionResult> out;
    for (const auto& c : detail::criteria()) {
        if (o.only && *o.only != c.category) continue;
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        r.category = c.category;
        r.budget = c.budget;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto res = c.run(o);
            r.pass = res.pass;
            r.detail = res.detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.seconds > r.budget) {
            r.pass = false;
            r.detail += "; over time budget";
        }
        out.push_back(r);
    }
    return out;
}

inline std::string line(const CriterionResult& r, bool timing) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.name << ": " << r.detail;
    if (timing) os << " [" << std::fixed << std::setprecision(3) << r.seconds << " s / " << r.budget << " s]";
    return os.str();
}

} // namespace polyhelix::acceptance
