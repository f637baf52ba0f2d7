// polyhelix command line front end.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "polyhelix/acceptance.hpp"
#include "polyhelix/report.hpp"

using namespace polyhelix;
using report::json;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Global {
    std::string format = "text";
    bool json = false;
    bool csv = false;
    std::string out;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    bool timing = false;
    std::vector<std::string> argv;

    std::string fmt() const { return json ? "json" : csv ? "csv" : format; }
    std::uint64_t resolved_seed() const {
        if (seed) return *seed;
        if (const char* env = std::getenv("POLYHELIX_SEED")) {
            try {
                std::size_t used = 0;
                const auto v = std::stoull(env, &used);
                if (used == std::string(env).size()) return v;
            } catch (const std::exception&) {
            }
            throw UsageError(std::string("POLYHELIX_SEED is not an unsigned integer: ") + env);
        }
        return 42;
    }
    double tolerance(double fallback) const {
        if (tol && !(*tol > 0)) throw UsageError("--tol must be positive");
        return tol.value_or(fallback);
    }
};

struct Output {
    std::string text;
    int code = 0;
};

void require_format(const Global& g, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (g.fmt() == a) return;
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
    throw UsageError("format '" + g.fmt() + "' not supported here (use " + list + ")");
}

const auto g_start = std::chrono::steady_clock::now();

double elapsed() { return std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start).count(); }

std::string dump(const Global& g, const std::string& command, json payload, std::optional<bool> pass) {
    json r = report::envelope(command, g.argv, g.resolved_seed(), std::move(payload), pass);
    if (g.timing) r["wall_time_s"] = elapsed();
    return r.dump(2) + "\n";
}

std::set<int> parse_zeros(const std::string& s) {
    std::set<int> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument("");
            if (v < 2) throw UsageError("--zeros indices must be >= 2 (k1 is the curvature being solved for)");
            out.insert(v);
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError("bad --zeros entry '" + item + "'");
        }
    }
    return out;
}

std::pair<double, double> parse_span(const std::string& s) {
    const auto g = parse_grid(s);
    if (g.size() != 2) throw UsageError("span must be lo:hi");
    return {g[0], g[1]};
}

std::map<std::string, double> parse_params(const std::string& s) {
    std::map<std::string, double> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--params entries must be name=value");
        try {
            out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("bad --params value in '" + item + "'");
        }
    }
    return out;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---- tau ----

struct TauArgs {
    int order = 3;
    std::string zeros;
};

Output cmd_tau(const Global& g, const TauArgs& a) {
    require_format(g, {"text", "json", "latex"});
    if (a.order < 2 || a.order > 7) throw UsageError("--order must be in 2..7");
    const auto sys = constraint_system(a.order, parse_zeros(a.zeros));
    std::ostringstream os;
    if (g.fmt() == "json") return {dump(g, "tau", report::constraint_system(sys), std::nullopt)};
    if (g.fmt() == "latex") {
        os << "\\begin{aligned}\n";
        for (std::size_t i = 0; i < sys.equations.size(); ++i)
            os << "  " << sys.equations[i].factored.to_latex() << " &= 0" << (i + 1 < sys.equations.size() ? " \\\\" : "") << "\n";
        os << "\\end{aligned}\n";
        return {os.str()};
    }
    os << "order " << sys.order << " helix constraints, zero pattern {";
    bool first = true;
    for (int z : sys.zero_pattern) {
        os << (first ? "" : ",") << "k" << z;
        first = false;
    }
    os << "}\n";
    for (const auto& e : sys.equations)
        os << "F" << e.frame << ": " << e.factored.to_string() << " = 0    [factor " << e.gcd.to_string() << "]\n";
    if (sys.equations.empty()) os << "(no equations: every helix with this pattern is a solution)\n";
    return {os.str()};
}

// ---- classify ----

struct ClassifyArgs {
    int order = 3;
    double K = 1.0;
    std::string zeros;
    int trials = 1000;
};

Output cmd_classify(const Global& g, const ClassifyArgs& a) {
    require_format(g, {"text", "json"});
    if (a.order < 2 || a.order > 5) throw UsageError("--order must be in 2..5");
    if (a.trials < 1) throw UsageError("--trials must be positive");
    SolveOptions opt;
    opt.tol = g.tolerance(opt.tol);
    opt.trials = a.trials;
    opt.seed = g.resolved_seed();
    const auto rep = solve_helix(a.order, a.K, parse_zeros(a.zeros), opt);
    if (g.fmt() == "json") return {dump(g, "classify", report::solution_report(rep), std::nullopt)};
    std::ostringstream os;
    os << "order " << rep.order << ", K = " << g6(rep.K) << ", " << rep.multistart_count << " starts, seed " << rep.seed << "\n";
    int proper = 0;
    for (const auto& s : rep.solutions) proper += s.proper && s.pattern_consistent ? 1 : 0;
    os << "proper solutions: " << proper << (rep.family ? " (sampled 1-parameter family)" : "") << "\n";
    for (const auto& s : rep.solutions) {
        if (!(s.proper && s.pattern_consistent)) continue;
        os << "  k = (";
        for (std::size_t i = 0; i < s.spec.curvatures.size(); ++i) os << (i ? ", " : "") << g6(s.spec.curvatures[i]);
        os << ")  residual " << g6(s.residual) << "\n";
    }
    const auto other = rep.solutions.size() - static_cast<std::size_t>(proper);
    if (other) os << "degenerate roots (k1 = 0 or a non-pattern curvature = 0): " << other << "\n";
    if (!rep.certificates.empty()) os << "certificates (in squared variables: slot kj stands for kj^2)\n";
    for (const auto& c : rep.certificates) {
        os << "certificate [" << c.label << "]: " << c.monomial_factor.to_string() << " * (" << c.combination.to_string()
           << ") lies in the ideal; identity " << (c.identity_holds ? "verified" : "FAILED") << ", sign "
           << (c.sign_definite ? "definite" : "indefinite") << "\n  " << c.conclusion << "\n";
    }
    return {os.str()};
}

// ---- verify ----

struct VerifyArgs {
    std::string curve;
    std::string params;
};

std::pair<TrigCurve, int> named_curve(const std::string& name, const std::map<std::string, double>& p) {
    auto get = [&](const char* k) -> std::optional<double> {
        auto it = p.find(k);
        return it == p.end() ? std::nullopt : std::optional<double>(it->second);
    };
    for (const auto& [k, v] : p)
        if (k != "a2" && k != "b2") throw UsageError("unknown curve parameter '" + k + "' (use a2, b2)");
    if (name == "great-circle") return {curves::great_circle(), 2};
    if (name == "biharmonic-circle") return {curves::biharmonic_circle(), 2};
    if (name == "tri-planar") return {curves::tri_planar(), 3};
    if (name == "four-planar") return {curves::four_planar(), 4};
    if (name == "biharmonic-two-freq") {
        double a2 = get("a2").value_or(get("b2") ? 2.0 - *get("b2") : 1.5);
        if (get("b2") && std::abs(a2 + *get("b2") - 2.0) > 1e-12) throw UsageError("biharmonic-two-freq needs a2 + b2 = 2");
        if (!(a2 > 0 && a2 < 2) || std::abs(a2 - 1.0) < 1e-12) throw UsageError("biharmonic-two-freq needs 0 < a2 < 2, a2 != 1");
        return {curves::biharmonic_two_freq(a2), 2};
    }
    if (name == "tri-hyperbola") {
        const double y = get("b2").value_or(2.0);
        const auto pts = hyperbola_points_at(y);
        if (pts.empty()) throw UsageError("no admissible hyperbola point at b2 = " + g6(y));
        std::size_t best = 0;
        if (auto x = get("a2"))
            for (std::size_t i = 1; i < pts.size(); ++i)
                if (std::abs(pts[i].x - *x) < std::abs(pts[best].x - *x)) best = i;
        if (auto x = get("a2"); x && std::abs(pts[best].x - *x) > 1e-6)
            throw UsageError("a2 = " + g6(*x) + " is not on the hyperbola at b2 = " + g6(y) + " (nearest " + g17(pts[best].x) + ")");
        return {pts[best].curve(), 3};
    }
    throw UsageError("unknown curve '" + name +
                     "' (great-circle, biharmonic-circle, biharmonic-two-freq, tri-planar, tri-hyperbola, four-planar)");
}

Output cmd_verify(const Global& g, const VerifyArgs& a) {
    require_format(g, {"text", "json"});
    const auto [c, r] = named_curve(a.curve, parse_params(a.params));
    const double tol = g.tolerance(1e-9);
    json res;
    res["sphere_identities"] = report::num(sphere_identities_check(c));
    res["biharmonic_ode"] = report::num(biharmonic_residual(c));
    res["fourharmonic_ode"] = report::num(fourharmonic_residual(c));
    for (int q = 2; q <= 4; ++q) res["tau" + std::to_string(q)] = report::num(intrinsic_tau_residual(c, q));
    double fv = 0.0;
    for (std::uint64_t i = 0; i < 3; ++i) fv = std::max(fv, std::abs(first_variation(c, r, random_bump(c.dim() + 1, g.resolved_seed() + i))));
    res["first_variation"] = report::num(fv);
    const auto lag = lagrangian(c, r);
    const int count = std::min<int>(3, static_cast<int>(2 * c.blocks().size()) - 1 + (c.constant_weight() > 0 ? 1 : 0));
    const auto kc = geodesic_curvatures_truncated(c, count);
    const double own = intrinsic_tau_residual(c, r);
    const bool pass = own < tol;
    json payload = {{"curve", a.curve},
                    {"order", r},
                    {"geometry", report::trig_curve(c)},
                    {"residuals", res},
                    {"tolerance", tol},
                    {"geodesic_curvatures", report::nums(kc.values)},
                    {"lagrangian", {{"density", report::num(lag.density)}, {"energy", report::num(lag.energy)}, {"stationarity", report::num(lag.stationarity)}}}};
    if (g.fmt() == "json") return {dump(g, "verify", payload, pass), pass ? 0 : 1};
    std::ostringstream os;
    os << a.curve << " (order " << r << ")\n";
    for (const auto& [k, v] : res.items()) os << "  " << std::left << std::setw(18) << k << (v.is_null() ? "nan" : g6(v.get<double>())) << "\n";
    os << "  geodesic curvatures:";
    for (double k : kc.values) os << " " << g6(k);
    os << "\n" << (pass ? "PASS" : "FAIL") << ": tau" << r << " residual " << g6(own) << (pass ? " < " : " >= ") << g6(tol) << "\n";
    return {os.str(), pass ? 0 : 1};
}

// ---- family ----

struct FamilyArgs {
    std::string name;
    int samples = 32;
    std::string range = "0:4";
};

Output cmd_family(const Global& g, const FamilyArgs& a) {
    require_format(g, {"text", "json", "csv"});
    if (a.name != "tri-hyperbola") throw UsageError("unknown family '" + a.name + "' (tri-hyperbola)");
    if (a.samples < 1) throw UsageError("--samples must be >= 1");
    const auto [lo, hi] = parse_span(a.range);
    const auto pts = solve_tri_hyperbola(a.samples, lo, hi);
    const double tol = g.tolerance(1e-9);
    bool pass = true;
    json rows = json::array();
    std::ostringstream csv;
    csv << "y,x,alpha1sq,alpha3sq,tau3_residual,lambda\n";
    for (const auto& p : pts) {
        const double t = intrinsic_tau_residual(p.curve(), 3);
        pass = pass && t < tol;
        rows.push_back({{"y", p.y}, {"x", p.x}, {"alpha1sq", p.alpha1sq}, {"alpha3sq", p.alpha3sq}, {"tau3_residual", t}, {"lambda", p.lambda}});
        csv << g17(p.y) << "," << g17(p.x) << "," << g17(p.alpha1sq) << "," << g17(p.alpha3sq) << "," << g17(t) << "," << g17(p.lambda) << "\n";
    }
    if (g.fmt() == "json") return {dump(g, "family", {{"family", a.name}, {"rows", rows}, {"tolerance", tol}}, pass), pass ? 0 : 1};
    if (g.fmt() == "csv") return {csv.str(), pass ? 0 : 1};
    std::ostringstream os;
    os << std::left << std::setw(12) << "y=b^2" << std::setw(12) << "x=a^2" << std::setw(12) << "alpha1^2" << std::setw(12) << "alpha3^2"
       << std::setw(12) << "tau3" << "lambda\n";
    for (const auto& row : rows)
        os << std::setw(12) << g6(row["y"]) << std::setw(12) << g6(row["x"]) << std::setw(12) << g6(row["alpha1sq"]) << std::setw(12)
           << g6(row["alpha3sq"]) << std::setw(12) << g6(row["tau3_residual"]) << g6(row["lambda"]) << "\n";
    os << pts.size() << " points, " << (pass ? "all" : "NOT all") << " below tau3 tolerance " << g6(tol) << "\n";
    return {os.str(), pass ? 0 : 1};
}

// ---- integrate ----

struct IntegrateArgs {
    std::string profile;
    std::string span = "0:1";
    double step = 1e-3;
    int dim = 0;
    bool no_control = false;
};

Output cmd_integrate(const Global& g, const IntegrateArgs& a) {
    require_format(g, {"text", "json", "csv"});
    const auto prof = CurvatureProfile::parse(a.profile);
    const auto [s0, s1] = parse_span(a.span);
    const int d = a.dim > 0 ? a.dim : static_cast<int>(prof.size()) + 1;
    IntegrateOptions opt;
    opt.error_control = !a.no_control;
    if (g.tol) opt.tol = g.tolerance(opt.tol);
    const auto c = integrate_frenet(prof, d, s0, s1, a.step, opt);
    std::ostringstream csv;
    write_samples_csv(csv, c);
    if (!g.out.empty()) {
        std::ofstream f(g.out);
        if (!f) throw std::runtime_error("cannot write " + g.out);
        f << csv.str();
    }
    json payload = {{"profile", prof.str()}, {"dim", d},           {"span", {s0, s1}},
                    {"step", a.step},       {"samples", c.size()}, {"gram_defect", c.gram_defect},
                    {"error_control", opt.error_control},          {"end_position", report::nums(c.positions.back())}};
    if (!g.out.empty()) payload["out"] = g.out;
    if (g.fmt() == "json") return {dump(g, "integrate", payload, std::nullopt)};
    if (g.out.empty()) return {csv.str()};
    std::ostringstream os;
    os << "integrated " << prof.str() << " in R^" << d << " on [" << g6(s0) << ", " << g6(s1) << "], " << c.size()
       << " samples, max Gram defect " << g6(c.gram_defect) << ", written to " << g.out << "\n";
    return {os.str()};
}

// ---- conserve ----

struct ConserveArgs {
    int order = 3;
    std::string in;
    std::string ambient = "flat";
    bool periodic = false;
};

Output cmd_conserve(const Global& g, const ConserveArgs& a) {
    require_format(g, {"text", "json"});
    if (a.ambient != "flat" && a.ambient != "sphere") throw UsageError("--ambient must be flat or sphere");
    std::ifstream f(a.in);
    if (!f) throw UsageError("cannot read " + a.in);
    const auto samples = read_samples_csv(f, a.periodic);
    const double K = a.ambient == "sphere" ? 1.0 : 0.0;
    MonitorReport m;
    if (a.order == 3) m = conservation_monitor_tri(samples, K);
    else if (a.order == 4) m = conservation_monitor_four(samples, K);
    else throw UsageError("--order must be 3 or 4");
    const double tol = g.tolerance(1e-5);
    const bool pass = m.drift < tol;
    json payload = report::monitor(m);
    payload["tolerance"] = tol;
    if (g.fmt() == "json") return {dump(g, "conserve", payload, pass), pass ? 0 : 1};
    std::ostringstream os;
    os << "order " << m.order << " invariant on " << m.valid << "/" << m.samples << " samples (" << m.ambient << ", " << m.method << ")\n"
       << "  c1 = " << g6(m.c1) << "\n  drift = " << g6(m.drift) << "\n"
       << (pass ? "PASS" : "FAIL") << ": drift " << (pass ? "< " : ">= ") << g6(tol) << "\n";
    return {os.str(), pass ? 0 : 1};
}

// ---- conjecture ----

struct ConjectureArgs {
    int order = 3;
    double alpha = 1.0;
    std::string grid = "0:4:41";
    std::string span = "1:3";
    double step = 1e-3;
};

Output cmd_conjecture(const Global& g, const ConjectureArgs& a) {
    require_format(g, {"text", "json", "csv"});
    if (a.order != 3 && a.order != 4) throw UsageError("--order must be 3 or 4");
    const auto [s0, s1] = parse_span(a.span);
    const auto scan = conjecture_scan(a.order, a.alpha, parse_grid(a.grid), s0, s1, a.step);
    if (g.fmt() == "json") return {dump(g, "conjecture", report::conjecture(scan), std::nullopt)};
    std::ostringstream os;
    if (g.fmt() == "csv") {
        os << "beta,rho,fd_residual,exact_full,exact_tangential,law_residual\n";
        for (const auto& r : scan.rows)
            os << g17(r.beta) << "," << g17(r.rho) << "," << g17(r.fd_residual) << "," << g17(r.exact_full) << ","
               << g17(r.exact_tangential) << "," << g17(r.law_residual) << "\n";
        return {os.str()};
    }
    os << "order " << scan.order << ", " << scan.profile_form << ", alpha = " << g6(scan.alpha) << ", s in [" << g6(s0) << ", "
       << g6(s1) << "], " << scan.fd_method << "\n";
    os << std::left << std::setw(10) << "beta" << std::setw(10) << "rho" << std::setw(14) << "fd |tau|" << std::setw(14) << "exact |tau|"
       << std::setw(14) << "tangential" << (scan.order == 3 ? "c1=0 law" : "4-law") << "\n";
    for (const auto& r : scan.rows)
        os << std::setw(10) << g6(r.beta) << std::setw(10) << g6(r.rho) << std::setw(14) << g6(r.fd_residual) << std::setw(14)
           << g6(r.exact_full) << std::setw(14) << g6(r.exact_tangential) << g6(r.law_residual) << "\n";
    if (!scan.rows.empty()) {
        os << "min |tau| at beta = " << g6(scan.rows[scan.argmin].beta) << "; min tangential part at beta = "
           << g6(scan.rows[scan.argmin_tangential].beta) << "\n";
        if (scan.order == 4) {
            os << "s-powers in the three 4-law terms:";
            for (const auto& v : scan.rows.front().term_powers) {
                os << " {";
                for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
                os << "}";
            }
            os << "\n";
        }
    }
    return {os.str()};
}

// ---- reproduce ----

struct ReproduceArgs {
    std::string only;
    bool mutate = false;
};

Output cmd_reproduce(const Global& g, const ReproduceArgs& a) {
    require_format(g, {"text", "json"});
    acceptance::Options opt;
    opt.seed = g.resolved_seed();
    if (!a.only.empty()) {
        if (a.only != "symbolic" && a.only != "numeric") throw UsageError("--only must be symbolic or numeric");
        opt.only = a.only;
    }
    if (a.mutate) opt.rule.lowering_sign = +1;
    const auto results = acceptance::run(opt);
    int passed = 0;
    json crit = json::array();
    for (const auto& r : results) {
        passed += r.pass ? 1 : 0;
        json c = {{"id", r.id}, {"name", r.name}, {"category", r.category}, {"pass", r.pass}, {"detail", r.detail}, {"budget_s", r.budget}};
        if (g.timing) c["seconds"] = r.seconds;
        crit.push_back(c);
    }
    const bool all = passed == static_cast<int>(results.size());
    if (g.fmt() == "json")
        return {dump(g, "reproduce", {{"criteria", crit}, {"passed", passed}, {"total", results.size()}}, all), all ? 0 : 1};
    std::ostringstream os;
    for (const auto& r : results) os << acceptance::line(r, g.timing) << "\n";
    os << passed << "/" << results.size() << " criteria pass\n";
    return {os.str(), all ? 0 : 1};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polyhelix: polyharmonic curves and helices in space forms"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", report::kVersion);

    Global g;
    for (int i = 1; i < argc; ++i) g.argv.emplace_back(argv[i]);
    app.add_option("--format", g.format, "text, json, latex or csv (per command)")->check(CLI::IsMember({"text", "json", "latex", "csv"}));
    app.add_flag("--json", g.json, "same as --format json");
    app.add_flag("--csv", g.csv, "same as --format csv");
    app.add_option("--out", g.out, "write the report (integrate: the CSV samples) to this file");
    app.add_option("--tol", g.tol, "override the command's default tolerance");
    app.add_option("--seed", g.seed, "RNG seed (default 42, or POLYHELIX_SEED)");
    app.add_flag("--timing", g.timing, "include wall time in reports");

    TauArgs tau;
    auto* t = app.add_subcommand("tau", "constraint system of an order-r helix");
    t->add_option("--order", tau.order, "r")->required();
    t->add_option("--zeros", tau.zeros, "curvature indices forced to zero, e.g. 3,4");

    ClassifyArgs cl;
    auto* c = app.add_subcommand("classify", "solve the helix constraints numerically");
    c->add_option("--order", cl.order, "r")->required();
    c->add_option("--K", cl.K, "ambient sectional curvature")->required();
    c->add_option("--zeros", cl.zeros, "curvature indices forced to zero");
    c->add_option("--trials", cl.trials, "multistart budget");

    VerifyArgs ve;
    auto* v = app.add_subcommand("verify", "residuals of a closed-form sphere curve");
    v->add_option("--curve", ve.curve, "curve name")->required();
    v->add_option("--params", ve.params, "a2=..,b2=..");

    FamilyArgs fa;
    auto* f = app.add_subcommand("family", "sample a solution family");
    f->add_option("name", fa.name, "tri-hyperbola")->required();
    f->add_option("--samples", fa.samples, "number of b^2 values");
    f->add_option("--range", fa.range, "b^2 range lo:hi");

    IntegrateArgs in;
    auto* i = app.add_subcommand("integrate", "integrate the Frenet system for a curvature profile");
    i->add_option("--profile", in.profile, "e.g. \"k1=1/s,k2=2/s\"")->required();
    i->add_option("--span", in.span, "s0:s1");
    i->add_option("--step", in.step, "h");
    i->add_option("--dim", in.dim, "ambient dimension (default: curvatures + 1)");
    i->add_flag("--no-error-control", in.no_control, "plain fixed-step RK4");

    ConserveArgs co;
    auto* cs = app.add_subcommand("conserve", "conservation-law drift of sampled curve data");
    cs->add_option("--order", co.order, "3 or 4")->required();
    cs->add_option("--in", co.in, "samples CSV (s,x1,...)")->required();
    cs->add_option("--ambient", co.ambient, "flat or sphere");
    cs->add_flag("--periodic", co.periodic, "samples cover exactly one period");

    ConjectureArgs cj;
    auto* cjc = app.add_subcommand("conjecture", "power-law curvature scans");
    cjc->add_option("--order", cj.order, "3 or 4")->required();
    cjc->add_option("--alpha", cj.alpha, "k1 coefficient");
    cjc->add_option("--beta-grid", cj.grid, "lo:hi:n");
    cjc->add_option("--span", cj.span, "s0:s1");
    cjc->add_option("--step", cj.step, "h");

    ReproduceArgs rp;
    auto* r = app.add_subcommand("reproduce", "run the acceptance criteria");
    r->add_option("--only", rp.only, "symbolic or numeric");
    r->add_flag("--mutate-frenet-sign", rp.mutate, "flip a sign in the Frenet recursion (mutation check)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        Output out;
        if (*t) out = cmd_tau(g, tau);
        else if (*c) out = cmd_classify(g, cl);
        else if (*v) out = cmd_verify(g, ve);
        else if (*f) out = cmd_family(g, fa);
        else if (*i) out = cmd_integrate(g, in);
        else if (*cs) out = cmd_conserve(g, co);
        else if (*cjc) out = cmd_conjecture(g, cj);
        else out = cmd_reproduce(g, rp);
        if (g.timing && !g.json && g.format != "json") {
            std::ostringstream os;
            os << "wall time " << std::fixed << std::setprecision(3) << elapsed() << " s\n";
            if (g.fmt() == "text") out.text += os.str();
            else std::cerr << os.str();
        }
        if (!g.out.empty() && !*i) {
            std::ofstream file(g.out);
            if (!file) throw std::runtime_error("cannot write " + g.out);
            file << out.text;
        } else {
            std::cout << out.text;
        }
        return out.code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
