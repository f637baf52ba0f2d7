#pragma once

// JSON payloads for the CLI and a small structural schema check.
// nlohmann::json objects are std::map backed, so keys come out sorted.

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

#include "polyhelix/classify.hpp"
#include "polyhelix/frenet.hpp"
#include "polyhelix/odelab.hpp"
#include "polyhelix/spherecurves.hpp"

namespace polyhelix::report {

using json = nlohmann::json;

#ifdef POLYHELIX_VERSION
inline constexpr const char* kVersion = POLYHELIX_VERSION;
#else
inline constexpr const char* kVersion = "0.1.0";
#endif

/// NaN and inf become null.
inline json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json nums(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

template <class C>
json ints(const C& c) {
    json a = json::array();
    for (auto x : c) a.push_back(x);
    return a;
}

inline json constraint_system(const ConstraintSystem& sys) {
    json eqs = json::array();
    for (const auto& e : sys.equations)
        eqs.push_back({{"frame", e.frame}, {"raw", e.raw.to_string()}, {"gcd", e.gcd.to_string()}, {"factored", e.factored.to_string()}});
    return {{"order", sys.order}, {"zero_pattern", ints(sys.zero_pattern)}, {"equations", eqs}};
}

inline json certificate(const Certificate& c) {
    json eqs = json::array(), mult = json::array();
    for (const auto& p : c.equations) eqs.push_back(p.to_string());
    for (const auto& p : c.multipliers) mult.push_back(p.to_string());
    return {{"label", c.label},
            {"equations", eqs},
            {"multipliers", mult},
            {"monomial_factor", c.monomial_factor.to_string()},
            {"combination", c.combination.to_string()},
            {"positive_vars", ints(c.positive_vars)},
            {"identity_holds", c.identity_holds},
            {"sign_definite", c.sign_definite},
            {"conclusion", c.conclusion},
            {"variables", "slot k_j stands for k_j^2"}};
}

inline json solution_report(const SolutionReport& r) {
    json sols = json::array();
    int proper = 0;
    for (const auto& s : r.solutions) {
        if (s.proper && s.pattern_consistent) ++proper;
        sols.push_back({{"curvatures", nums(s.spec.curvatures)},
                        {"squared", nums(s.squared)},
                        {"residual", num(s.residual)},
                        {"raw_residual", num(s.raw_residual)},
                        {"proper", s.proper},
                        {"pattern_consistent", s.pattern_consistent}});
    }
    json certs = json::array();
    for (const auto& c : r.certificates) certs.push_back(certificate(c));
    return {{"order", r.order},
            {"K", num(r.K)},
            {"zero_pattern", ints(r.zero_pattern)},
            {"unknowns", ints(r.unknowns)},
            {"free_indices", ints(r.free_indices)},
            {"deficit", r.deficit},
            {"family", r.family},
            {"seed", r.seed},
            {"multistart_count", r.multistart_count},
            {"proper_count", proper},
            {"solutions", sols},
            {"infeasibility_certificates", certs}};
}

inline json trig_curve(const TrigCurve& c) {
    json blocks = json::array();
    for (const auto& b : c.blocks()) blocks.push_back({{"freq", num(b.freq)}, {"weight", num(b.weight)}});
    return {{"blocks", blocks}, {"constant_weight", num(c.constant_weight())}, {"dim", c.dim()}, {"window", num(c.window())}};
}

inline json monitor(const MonitorReport& m) {
    return {{"order", m.order},         {"ambient", m.ambient}, {"method", m.method}, {"samples", m.samples},
            {"valid_samples", m.valid}, {"c1", num(m.c1)},      {"drift", num(m.drift)}};
}

inline json conjecture(const ConjectureScan& s) {
    json rows = json::array();
    for (const auto& r : s.rows) {
        json row = {{"beta", num(r.beta)},
                    {"rho", num(r.rho)},
                    {"fd_residual", num(r.fd_residual)},
                    {"exact_full", num(r.exact_full)},
                    {"exact_tangential", num(r.exact_tangential)},
                    {"law_residual", num(r.law_residual)}};
        if (!r.term_powers.empty()) {
            json tp = json::array();
            for (const auto& v : r.term_powers) tp.push_back(ints(v));
            row["term_powers"] = tp;
        }
        rows.push_back(row);
    }
    json out = {{"order", s.order},
                {"alpha", num(s.alpha)},
                {"span", {num(s.s0), num(s.s1)}},
                {"step", num(s.h)},
                {"profile", s.profile_form},
                {"fd_method", s.fd_method},
                {"rows", rows}};
    if (!s.rows.empty()) {
        out["argmin_beta"] = num(s.rows[s.argmin].beta);
        out["argmin_tangential_beta"] = num(s.rows[s.argmin_tangential].beta);
    }
    return out;
}

/// Report envelope. Wall time is added by the caller only on request.
inline json envelope(const std::string& command, const std::vector<std::string>& argv, std::uint64_t seed, json payload,
                     std::optional<bool> pass) {
    json r = {{"command", command}, {"argv", argv}, {"version", kVersion}, {"seed", seed}, {"payload", std::move(payload)}};
    r["summary"] = pass ? json{{"pass", *pass}} : json{{"pass", nullptr}};
    return r;
}

// ---- schema ----

/// Minimal schema node: type plus required object keys or array item schema.
struct Schema {
    std::string type; ///< object, array, string, number, integer, boolean, any, number_or_null
    std::vector<std::pair<std::string, Schema>> required;
    std::vector<Schema> items; ///< at most one entry
};

namespace detail {

inline Schema S(std::string t) { return {std::move(t), {}, {}}; }
inline Schema O(std::vector<std::pair<std::string, Schema>> req) { return {"object", std::move(req), {}}; }
inline Schema A(Schema item) { return {"array", {}, {std::move(item)}}; }

inline bool type_ok(const json& j, const std::string& t) {
    if (t == "any") return true;
    if (t == "object") return j.is_object();
    if (t == "array") return j.is_array();
    if (t == "string") return j.is_string();
    if (t == "boolean") return j.is_boolean();
    if (t == "integer") return j.is_number_integer();
    if (t == "number") return j.is_number();
    if (t == "number_or_null") return j.is_number() || j.is_null();
    if (t == "boolean_or_null") return j.is_boolean() || j.is_null();
    return false;
}

inline void check(const json& j, const Schema& s, const std::string& path, std::vector<std::string>& errs) {
    if (!type_ok(j, s.type)) {
        errs.push_back(path + ": expected " + s.type);
        return;
    }
    for (const auto& [k, sub] : s.required) {
        if (!j.contains(k)) {
            errs.push_back(path + ": missing key '" + k + "'");
            continue;
        }
        check(j.at(k), sub, path + "." + k, errs);
    }
    if (!s.items.empty())
        for (std::size_t i = 0; i < j.size(); ++i) check(j[i], s.items[0], path + "[" + std::to_string(i) + "]", errs);
}

} // namespace detail

inline Schema payload_schema(const std::string& command) {
    using namespace detail;
    const Schema numN = S("number_or_null");
    if (command == "tau")
        return O({{"order", S("integer")},
                  {"zero_pattern", A(S("integer"))},
                  {"equations", A(O({{"frame", S("integer")}, {"raw", S("string")}, {"gcd", S("string")}, {"factored", S("string")}}))}});
    if (command == "classify")
        return O({{"order", S("integer")},
                  {"K", numN},
                  {"zero_pattern", A(S("integer"))},
                  {"solutions", A(O({{"curvatures", A(numN)}, {"residual", numN}, {"proper", S("boolean")}}))},
                  {"infeasibility_certificates",
                   A(O({{"label", S("string")}, {"combination", S("string")}, {"identity_holds", S("boolean")}, {"sign_definite", S("boolean")}}))}});
    if (command == "verify")
        return O({{"curve", S("string")}, {"order", S("integer")}, {"geometry", O({{"blocks", A(S("object"))}})}, {"residuals", S("object")}, {"tolerance", numN}});
    if (command == "family")
        return O({{"family", S("string")},
                  {"rows", A(O({{"y", numN}, {"x", numN}, {"alpha1sq", numN}, {"alpha3sq", numN}, {"tau3_residual", numN}, {"lambda", numN}}))}});
    if (command == "integrate")
        return O({{"profile", S("string")}, {"dim", S("integer")}, {"span", A(numN)}, {"step", numN}, {"samples", S("integer")}, {"gram_defect", numN}});
    if (command == "conserve")
        return O({{"order", S("integer")}, {"ambient", S("string")}, {"method", S("string")}, {"c1", numN}, {"drift", numN}});
    if (command == "conjecture")
        return O({{"order", S("integer")},
                  {"alpha", numN},
                  {"rows", A(O({{"beta", numN}, {"fd_residual", numN}, {"exact_full", numN}, {"exact_tangential", numN}}))}});
    if (command == "reproduce")
        return O({{"criteria", A(O({{"id", S("integer")}, {"name", S("string")}, {"pass", S("boolean")}, {"detail", S("string")}}))},
                  {"passed", S("integer")},
                  {"total", S("integer")}});
    throw std::invalid_argument("no schema for command '" + command + "'");
}

/// Empty when the report matches the envelope and its command's payload schema.
inline std::vector<std::string> validate(const json& r) {
    using namespace detail;
    std::vector<std::string> errs;
    const Schema env = O({{"command", S("string")},
                          {"argv", A(S("string"))},
                          {"version", S("string")},
                          {"seed", S("integer")},
                          {"payload", S("object")},
                          {"summary", O({{"pass", S("boolean_or_null")}})}});
    check(r, env, "$", errs);
    if (!errs.empty()) return errs;
    try {
        check(r.at("payload"), payload_schema(r.at("command").get<std::string>()), "$.payload", errs);
    } catch (const std::invalid_argument& e) {
        errs.push_back(e.what());
    }
    return errs;
}

} // namespace polyhelix::report
