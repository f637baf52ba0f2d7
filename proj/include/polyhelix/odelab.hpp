#pragma once

// Numerical experiments on curves with prescribed, non-constant curvatures:
// Frenet integration in R^d, conservation monitors for sampled curves, and
// power-law scans. Curvature profiles are Laurent polynomials in s, so the
// Frenet calculus along them is available in closed form as well.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyhelix/fd.hpp"
#include "polyhelix/spherecurves.hpp"

namespace polyhelix {

/// sum_p c_p s^p with integer p.
class Laurent {
public:
    Laurent() = default;
    Laurent(double c) { // NOLINT
        if (c != 0.0) t_[0] = c;
    }
    static Laurent monomial(double c, int p) {
        Laurent l;
        if (c != 0.0) l.t_[p] = c;
        return l;
    }

    const std::map<int, double>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int min_power() const { return t_.empty() ? 0 : t_.begin()->first; }
    bool has_pole() const { return !t_.empty() && t_.begin()->first < 0; }

    double operator()(double s) const {
        double v = 0.0;
        for (const auto& [p, c] : t_) v += c * std::pow(s, p);
        return v;
    }

    Laurent derivative(int order = 1) const {
        Laurent out = *this;
        for (int k = 0; k < order; ++k) {
            Laurent d;
            for (const auto& [p, c] : out.t_)
                if (p != 0) d.t_[p - 1] = c * p;
            out = d;
        }
        return out;
    }

    /// Powers whose coefficient exceeds tol relative to the largest.
    std::vector<int> powers(double rel_tol = 1e-12) const {
        double m = 0.0;
        for (const auto& [p, c] : t_) m = std::max(m, std::abs(c));
        std::vector<int> out;
        for (const auto& [p, c] : t_)
            if (std::abs(c) > rel_tol * m) out.push_back(p);
        return out;
    }

    Laurent& operator+=(const Laurent& o) {
        for (const auto& [p, c] : o.t_) t_[p] += c;
        prune();
        return *this;
    }
    Laurent& operator-=(const Laurent& o) { return *this += -1.0 * o; }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator-(const Laurent& a) { return -1.0 * a; }
    friend Laurent operator*(double s, Laurent a) {
        for (auto& [p, c] : a.t_) c *= s;
        a.prune();
        return a;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent o;
        for (const auto& [p, c] : a.t_)
            for (const auto& [q, d] : b.t_) o.t_[p + q] += c * d;
        o.prune();
        return o;
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        os.precision(12);
        bool first = true;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            const auto [p, c] = *it;
            os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
            first = false;
            const double a = std::abs(c);
            if (p == 0) {
                os << a;
            } else if (p > 0) {
                if (a != 1.0) os << a << "*";
                os << "s";
                if (p != 1) os << "^" << p;
            } else {
                os << a << "/s";
                if (p != -1) os << "^" << -p;
            }
        }
        return os.str();
    }

private:
    void prune() {
        for (auto it = t_.begin(); it != t_.end();) it = it->second == 0.0 ? t_.erase(it) : std::next(it);
    }
    std::map<int, double> t_;
};

class SingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InsufficientSamplesError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// k_1..k_m as Laurent polynomials in arclength.
struct CurvatureProfile {
    std::vector<Laurent> k;

    std::size_t size() const { return k.size(); }
    double operator()(std::size_t i, double s) const { return i < k.size() ? k[i](s) : 0.0; }
    bool has_pole() const {
        return std::any_of(k.begin(), k.end(), [](const Laurent& l) { return l.has_pole(); });
    }

    /// Throws SingularityError unless every k_i is finite on [s0, s1].
    void check_span(double s0, double s1) const {
        if (!(s1 > s0)) throw std::invalid_argument("profile span must satisfy s0 < s1");
        if (has_pole() && s0 < 0.1)
            throw SingularityError("profile has a pole at s = 0; span must start at s0 >= 0.1");
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (i) out += ",";
            out += "k" + std::to_string(i + 1) + "=" + k[i].str();
        }
        return out;
    }

    static CurvatureProfile constant(std::vector<double> values) {
        CurvatureProfile p;
        for (double v : values) p.k.emplace_back(v);
        return p;
    }
    /// k_i = coeff_i / s^power
    static CurvatureProfile power_law(std::vector<double> coeffs, int power) {
        CurvatureProfile p;
        for (double c : coeffs) p.k.push_back(Laurent::monomial(c, -power));
        return p;
    }

    /// Parses "k1=1/s,k2=2/s", "k1=3/s^2", "k1=1,k2=0.5*s", "k1=1/s+2".
    static CurvatureProfile parse(const std::string& text);
};

namespace detail {

class ProfileParser {
public:
    explicit ProfileParser(const std::string& s) : s_(s) {}

    Laurent expr() {
        Laurent acc;
        bool first = true;
        while (true) {
            skip();
            double sign = 1.0;
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1.0 : 1.0;
            } else if (!first) {
                break;
            }
            acc += sign * term();
            first = false;
            skip();
            if (peek() != '+' && peek() != '-') break;
        }
        return acc;
    }

    bool done() {
        skip();
        return i_ >= s_.size();
    }

private:
    Laurent term() {
        skip();
        double c = 1.0;
        bool have_num = false;
        if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
            c = number();
            have_num = true;
        }
        skip();
        if (peek() == '/') {
            get();
            skip();
            expect('s');
            return Laurent::monomial(c, -exponent());
        }
        if (peek() == '*') {
            get();
            skip();
        }
        if (peek() == 's') {
            get();
            return Laurent::monomial(c, exponent());
        }
        if (!have_num) fail("expected a number or s");
        return Laurent(c);
    }

    int exponent() {
        skip();
        if (peek() != '^') return 1;
        get();
        skip();
        std::size_t used = 0;
        const int p = std::stoi(s_.substr(i_), &used);
        i_ += used;
        return p;
    }

    double number() {
        std::size_t used = 0;
        const double v = std::stod(s_.substr(i_), &used);
        i_ += used;
        return v;
    }

    void expect(char c) {
        if (get() != c) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("profile parse error at position " + std::to_string(i_) + ": " + what);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    char get() { return i_ < s_.size() ? s_[i_++] : '\0'; }

    std::string s_;
    std::size_t i_ = 0;
};

} // namespace detail

inline CurvatureProfile CurvatureProfile::parse(const std::string& text) {
    std::map<int, Laurent> byIndex;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("profile entry without '=': " + item);
        std::string lhs = item.substr(0, eq);
        lhs.erase(std::remove_if(lhs.begin(), lhs.end(), [](unsigned char c) { return std::isspace(c); }), lhs.end());
        if (lhs.size() < 2 || lhs[0] != 'k') throw std::invalid_argument("profile entry must be k<i>=...: " + item);
        int idx = 0;
        try {
            idx = std::stoi(lhs.substr(1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad curvature index: " + lhs);
        }
        if (idx < 1 || idx > 16) throw std::invalid_argument("curvature index out of range: " + lhs);
        if (byIndex.count(idx)) throw std::invalid_argument("curvature given twice: " + lhs);
        detail::ProfileParser p(item.substr(eq + 1));
        byIndex[idx] = p.expr();
        if (!p.done()) throw std::invalid_argument("trailing characters in profile entry: " + item);
    }
    if (byIndex.empty()) throw std::invalid_argument("empty profile");
    CurvatureProfile out;
    out.k.resize(static_cast<std::size_t>(byIndex.rbegin()->first));
    for (auto& [i, l] : byIndex) out.k[static_cast<std::size_t>(i - 1)] = l;
    return out;
}

struct CurveSamples {
    double h = 0.0;
    double s0 = 0.0;
    double s1 = 0.0;
    std::vector<std::vector<double>> positions;
    std::optional<std::vector<Eigen::MatrixXd>> frames; ///< rows are F_1..F_d
    double gram_defect = 0.0;                           ///< max over stored frames
    bool periodic = false;                              ///< samples cover exactly one period, endpoint excluded

    std::size_t size() const { return positions.size(); }
    std::size_t dim() const { return positions.empty() ? 0 : positions.front().size(); }
    double s(std::size_t i) const { return s0 + h * static_cast<double>(i); }
};

struct IntegrateOptions {
    bool error_control = true;
    double tol = 1e-12;     ///< Richardson local error bound per substep
    int max_halvings = 8;
    bool store_frames = true;
    int reorth_every = 100;
    double reorth_threshold = 1e-10;
};

inline double gram_defect(const Eigen::MatrixXd& F) {
    return (F * F.transpose() - Eigen::MatrixXd::Identity(F.rows(), F.rows())).cwiseAbs().maxCoeff();
}

/// Modified Gram-Schmidt on the rows, keeping order and orientation.
inline void reorthonormalise(Eigen::MatrixXd& F) {
    for (Eigen::Index i = 0; i < F.rows(); ++i) {
        for (Eigen::Index j = 0; j < i; ++j) F.row(i) -= F.row(i).dot(F.row(j)) * F.row(j);
        F.row(i).normalize();
    }
}

namespace detail {

struct FrenetState {
    Eigen::VectorXd x;
    Eigen::MatrixXd F;

    FrenetState& operator+=(const FrenetState& o) {
        x += o.x;
        F += o.F;
        return *this;
    }
    friend FrenetState operator+(FrenetState a, const FrenetState& b) { return a += b; }
    friend FrenetState operator*(double c, FrenetState a) {
        a.x *= c;
        a.F *= c;
        return a;
    }
    double max_abs_diff(const FrenetState& o) const {
        return std::max((x - o.x).cwiseAbs().maxCoeff(), (F - o.F).cwiseAbs().maxCoeff());
    }
};

inline FrenetState frenet_rhs(const CurvatureProfile& p, double s, const FrenetState& y) {
    const auto d = y.F.rows();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i + 1 < d; ++i) {
        const double k = p(static_cast<std::size_t>(i), s);
        A(i, i + 1) = k;
        A(i + 1, i) = -k;
    }
    return {y.F.row(0).transpose(), A * y.F};
}

inline FrenetState rk4_step(const CurvatureProfile& p, double s, const FrenetState& y, double h) {
    const auto k1 = frenet_rhs(p, s, y);
    const auto k2 = frenet_rhs(p, s + h / 2, y + (h / 2) * k1);
    const auto k3 = frenet_rhs(p, s + h / 2, y + (h / 2) * k2);
    const auto k4 = frenet_rhs(p, s + h, y + h * k3);
    return y + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// One step of size h, halved until the Richardson estimate meets tol.
inline FrenetState controlled_step(const CurvatureProfile& p, double s, const FrenetState& y, double h,
                                   const IntegrateOptions& opt, int depth = 0) {
    const auto full = rk4_step(p, s, y, h);
    const auto half = rk4_step(p, s + h / 2, rk4_step(p, s, y, h / 2), h / 2);
    const double err = half.max_abs_diff(full) / 15.0;
    if (err > opt.tol && depth < opt.max_halvings) {
        const auto mid = controlled_step(p, s, y, h / 2, opt, depth + 1);
        return controlled_step(p, s + h / 2, mid, h / 2, opt, depth + 1);
    }
    // local extrapolation
    return half + (1.0 / 15.0) * (half + (-1.0) * full);
}

} // namespace detail

/// gamma' = F_1 with the Frenet frame ODE in R^d, gamma(s0) = 0, F(s0) = identity.
inline CurveSamples integrate_frenet(const CurvatureProfile& profile, int d, double s0, double s1, double h,
                                     const IntegrateOptions& opt = {}) {
    if (d < static_cast<int>(profile.size()) + 1)
        throw std::invalid_argument("integrate_frenet: ambient dimension must exceed the number of curvatures");
    if (!(h > 0)) throw std::invalid_argument("integrate_frenet: step must be positive");
    profile.check_span(s0, s1);
    const double nsteps_d = (s1 - s0) / h;
    const long n = std::lround(nsteps_d);
    if (n < 1 || std::abs(nsteps_d - static_cast<double>(n)) > 1e-6 * std::max(1.0, nsteps_d))
        throw std::invalid_argument("integrate_frenet: span must be a whole number of steps");

    CurveSamples out;
    out.h = h;
    out.s0 = s0;
    out.s1 = s1;
    out.positions.reserve(static_cast<std::size_t>(n) + 1);
    if (opt.store_frames) out.frames.emplace().reserve(static_cast<std::size_t>(n) + 1);

    detail::FrenetState y{Eigen::VectorXd::Zero(d), Eigen::MatrixXd::Identity(d, d)};
    auto record = [&](const detail::FrenetState& st) {
        out.positions.emplace_back(st.x.data(), st.x.data() + d);
        if (out.frames) out.frames->push_back(st.F);
        out.gram_defect = std::max(out.gram_defect, gram_defect(st.F));
    };
    record(y);
    for (long i = 0; i < n; ++i) {
        const double s = s0 + h * static_cast<double>(i);
        y = opt.error_control ? detail::controlled_step(profile, s, y, h, opt) : detail::rk4_step(profile, s, y, h);
        if (opt.reorth_every > 0 && (i + 1) % opt.reorth_every == 0 && gram_defect(y.F) > opt.reorth_threshold)
            reorthonormalise(y.F);
        record(y);
    }
    return out;
}

/// Closed-form samples of a trig curve over one common period (marked periodic). Curves
/// without a common period are sampled on [0, 64 pi] inclusive and left non-periodic.
inline CurveSamples sample_trig_curve(const TrigCurve& c, int n_per_period = 512) {
    if (n_per_period < 8) throw std::invalid_argument("sample_trig_curve: too few samples per period");
    const auto g = c.gamma();
    CurveSamples out;
    out.s0 = 0.0;
    out.s1 = c.window();
    std::size_t N = static_cast<std::size_t>(n_per_period);
    if (c.common_period()) {
        out.periodic = true;
        out.h = out.s1 / static_cast<double>(N);
    } else {
        double amax = 0.0;
        for (const auto& b : c.blocks()) amax = std::max(amax, b.freq);
        const double fastest = 2.0 * std::numbers::pi / amax;
        N = static_cast<std::size_t>(std::ceil(out.s1 / fastest * n_per_period));
        out.h = out.s1 / static_cast<double>(N);
        ++N;
    }
    for (std::size_t j = 0; j < N; ++j) out.positions.push_back(g(out.h * static_cast<double>(j)));
    return out;
}

/// Per-sample |(k1')^2 + 2 k1 k1'' - k1^4 - k1^2 k2^2 - c1|.
inline std::vector<double> curvature_ode_values(const CurvatureProfile& p, double c1, const std::vector<double>& s) {
    const Laurent k1 = p.k.empty() ? Laurent() : p.k[0];
    const Laurent k2 = p.k.size() > 1 ? p.k[1] : Laurent();
    const Laurent d1 = k1.derivative(), d2 = k1.derivative(2);
    std::vector<double> out;
    out.reserve(s.size());
    for (double x : s) {
        if (p.has_pole() && x <= 0) throw SingularityError("curvature_ode_residual: sample at a pole");
        const double a = k1(x), b = k2(x), da = d1(x), dda = d2(x);
        out.push_back(std::abs(da * da + 2 * a * dda - a * a * a * a - a * a * b * b - c1));
    }
    return out;
}

inline double curvature_ode_residual(const CurvatureProfile& p, double c1, const std::vector<double>& s) {
    double m = 0.0;
    for (double v : curvature_ode_values(p, c1, s)) m = std::max(m, v);
    return m;
}

inline std::vector<double> uniform_grid(double s0, double s1, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(s0 + (s1 - s0) * i / std::max(1, n - 1));
    return out;
}

// ---- derivatives of sampled curves ----

using SampledVectors = std::vector<std::vector<double>>; ///< per sample; NaN entries where unavailable

inline std::vector<double> sampled_derivative(const std::vector<double>& f, const CurveSamples& c, int m,
                                              double min_spacing = 0.01) {
    if (m == 0) return f;
    if (c.periodic) return spectral_derivative(f, c.h * static_cast<double>(f.size()), m);
    return fd_derivative(f, c.h, m, min_spacing);
}

/// gamma^(0..max_order) at every sample, with the method used.
inline std::vector<SampledVectors> position_derivatives(const CurveSamples& c, int max_order, std::string* method = nullptr,
                                                        double min_spacing = 0.01) {
    const std::size_t n = c.size(), d = c.dim();
    std::vector<SampledVectors> out(static_cast<std::size_t>(max_order) + 1, SampledVectors(n, std::vector<double>(d)));
    out[0] = c.positions;
    const bool use_frames = !c.periodic && c.frames.has_value();
    if (method) *method = c.periodic ? "spectral" : (use_frames ? "fd-tangent" : "fd-positions");
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<double> base(n);
        for (std::size_t i = 0; i < n; ++i) base[i] = use_frames ? (*c.frames)[i](0, static_cast<Eigen::Index>(k)) : c.positions[i][k];
        for (int m = 1; m <= max_order; ++m) {
            const auto col = use_frames ? sampled_derivative(base, c, m - 1, min_spacing) : sampled_derivative(base, c, m, min_spacing);
            for (std::size_t i = 0; i < n; ++i) out[static_cast<std::size_t>(m)][i][k] = col[i];
        }
    }
    return out;
}

// ---- conservation monitors ----

struct MonitorReport {
    int order = 3;
    std::string ambient;
    std::string method;
    std::size_t samples = 0;
    std::size_t valid = 0;
    double c1 = 0.0;    ///< mean of the invariant
    double drift = 0.0; ///< max |invariant - mean|
    std::vector<double> s;
    std::vector<double> values;
};

namespace detail {

inline double dotv(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline std::vector<double> axpy(const std::vector<double>& x, double a, const std::vector<double>& y) {
    std::vector<double> o(x);
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += a * y[i];
    return o;
}

/// |nabla_T^j T|^2 for j = 1..count at each sample.
inline std::vector<std::vector<double>> covariant_traces(const std::vector<SampledVectors>& g, bool sphere, int count) {
    const std::size_t n = g[0].size();
    std::vector<std::vector<double>> out(static_cast<std::size_t>(count), std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = g[0][i];
        const auto& d1 = g[1][i];
        const auto& d2 = g[2][i];
        std::vector<std::vector<double>> nab;
        if (!sphere) {
            for (int j = 1; j <= count; ++j) nab.push_back(g[static_cast<std::size_t>(j + 1)][i]);
        } else {
            // nabla_T X = X' + <X, gamma'> gamma, product rule written out
            const auto& d3 = g[3][i];
            const double v = dotv(d1, d1), dv = 2 * dotv(d2, d1);
            const auto n1 = axpy(d2, v, x);
            nab.push_back(n1);
            const double a = dotv(n1, d1);
            const auto n1p = axpy(axpy(d3, dv, x), v, d1);
            const auto n2 = axpy(n1p, a, x);
            if (count >= 2) nab.push_back(n2);
            if (count >= 3) {
                const auto& d4 = g[4][i];
                const double ddv = 2 * (dotv(d3, d1) + dotv(d2, d2));
                const double xd1 = dotv(x, d1);
                const double da = dotv(d3, d1) + dotv(d2, d2) + dv * xd1 + v * (dotv(d1, d1) + dotv(x, d2));
                const auto n2p = axpy(axpy(axpy(d4, ddv + da, x), 2 * dv + a, d1), v, d2);
                nab.push_back(axpy(n2p, dotv(n2, d1), x));
            }
        }
        for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)][i] = dotv(nab[static_cast<std::size_t>(j)], nab[static_cast<std::size_t>(j)]);
    }
    return out;
}

inline MonitorReport summarise(MonitorReport rep, const CurveSamples& c, const std::vector<double>& inv) {
    rep.samples = c.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < inv.size(); ++i) {
        if (!std::isfinite(inv[i])) continue;
        rep.s.push_back(c.s(i));
        rep.values.push_back(inv[i]);
        sum += inv[i];
    }
    rep.valid = rep.values.size();
    if (rep.valid == 0) throw InsufficientSamplesError("monitor: no sample has a complete stencil");
    rep.c1 = sum / static_cast<double>(rep.valid);
    for (double v : rep.values) rep.drift = std::max(rep.drift, std::abs(v - rep.c1));
    return rep;
}

inline bool ambient_is_sphere(double K) {
    if (K == 0.0) return false;
    if (K == 1.0) return true;
    throw std::invalid_argument("monitor: ambient curvature must be 0 or 1");
}

} // namespace detail

/// Q = (|nabla_T T|^2)'' - |nabla_T^2 T|^2.
inline MonitorReport conservation_monitor_tri(const CurveSamples& c, double K) {
    const bool sphere = detail::ambient_is_sphere(K);
    if (c.size() < 64) throw InsufficientSamplesError("tri monitor needs at least 64 samples");
    MonitorReport rep;
    rep.order = 3;
    rep.ambient = sphere ? "sphere" : "flat";
    const auto g = position_derivatives(c, 3, &rep.method);
    const auto tr = detail::covariant_traces(g, sphere, 2);
    const auto dd = sampled_derivative(tr[0], c, 2);
    std::vector<double> q(c.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = dd[i] - tr[1][i];
    return detail::summarise(rep, c, q);
}

/// I = (|nabla T|^2)'''' - 2 (|nabla^2 T|^2)'' + |nabla^3 T|^2.
inline MonitorReport conservation_monitor_four(const CurveSamples& c, double K) {
    const bool sphere = detail::ambient_is_sphere(K);
    if (c.size() < 128) throw InsufficientSamplesError("4-harmonic monitor needs at least 128 samples");
    MonitorReport rep;
    rep.order = 4;
    rep.ambient = sphere ? "sphere" : "flat";
    const auto g = position_derivatives(c, 4, &rep.method);
    const auto tr = detail::covariant_traces(g, sphere, 3);
    const auto d4 = sampled_derivative(tr[0], c, 4);
    const auto d2 = sampled_derivative(tr[1], c, 2);
    std::vector<double> v(c.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = d4[i] - 2 * d2[i] + tr[2][i];
    return detail::summarise(rep, c, v);
}

struct RecoveredCurvatures {
    std::vector<double> mean;
    std::vector<double> spread; ///< max - min over valid samples
};

/// Flat geodesic curvatures from sampled positions by Gram-Schmidt on gamma', gamma'', ...
inline RecoveredCurvatures recover_curvatures(const CurveSamples& c, int count) {
    CurveSamples bare = c;
    bare.frames.reset();
    const auto g = position_derivatives(bare, count + 1);
    RecoveredCurvatures out;
    out.mean.assign(static_cast<std::size_t>(count), 0.0);
    std::vector<double> lo(static_cast<std::size_t>(count), std::numeric_limits<double>::infinity());
    std::vector<double> hi(static_cast<std::size_t>(count), -std::numeric_limits<double>::infinity());
    std::size_t valid = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        bool ok = true;
        for (int m = 1; m <= count + 1 && ok; ++m)
            for (double v : g[static_cast<std::size_t>(m)][i]) ok = ok && std::isfinite(v);
        if (!ok) continue;
        ++valid;
        std::vector<std::vector<double>> basis;
        double prod = 1.0;
        for (int m = 1; m <= count + 1; ++m) {
            auto v = g[static_cast<std::size_t>(m)][i];
            for (const auto& e : basis) v = detail::axpy(v, -detail::dotv(v, e), e);
            const double nv = std::sqrt(detail::dotv(v, v));
            if (m >= 2) {
                const double k = nv / prod;
                const auto j = static_cast<std::size_t>(m - 2);
                out.mean[j] += k;
                lo[j] = std::min(lo[j], k);
                hi[j] = std::max(hi[j], k);
                prod *= k;
            }
            if (nv > 1e-12)
                for (auto& x : v) x /= nv;
            basis.push_back(v);
        }
    }
    if (valid == 0) throw InsufficientSamplesError("recover_curvatures: no sample has a complete stencil");
    for (int j = 0; j < count; ++j) {
        out.mean[static_cast<std::size_t>(j)] /= static_cast<double>(valid);
        out.spread.push_back(hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)]);
    }
    return out;
}

// ---- closed-form Frenet calculus along Laurent profiles ----

/// Vector field along the curve in Frenet coordinates: sum_i c_i(s) F_i.
using FrameVector = std::vector<Laurent>;

/// d/ds in flat space, with F_i' = -k_{i-1} F_{i-1} + k_i F_{i+1}; frame of size d.
inline FrameVector frame_derivative(const FrameVector& v, const CurvatureProfile& p) {
    const std::size_t d = v.size();
    FrameVector out(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (v[i].is_zero()) continue;
        out[i] += v[i].derivative();
        const Laurent ki = i < p.size() ? p.k[i] : Laurent();
        if (i + 1 < d) out[i + 1] += v[i] * ki;
        else if (!ki.is_zero()) throw std::invalid_argument("frame_derivative: curvature beyond frame size");
        if (i > 0) out[i - 1] -= v[i] * p.k[i - 1];
    }
    return out;
}

/// gamma^(j) for j = 1..max_order in Frenet coordinates.
inline std::vector<FrameVector> flat_tower(const CurvatureProfile& p, int d, int max_order) {
    std::vector<FrameVector> out;
    FrameVector t(static_cast<std::size_t>(d));
    t[0] = Laurent(1.0);
    out.push_back(t);
    while (static_cast<int>(out.size()) < max_order) out.push_back(frame_derivative(out.back(), p));
    return out;
}

inline Laurent norm_squared(const FrameVector& v) {
    Laurent s;
    for (const auto& c : v) s += c * c;
    return s;
}

struct ConjectureRow {
    double beta = 0.0;
    double rho = 0.0;           ///< alpha^2 + beta^2
    double fd_residual = 0.0;   ///< sup |gamma^(2r)| by finite differences of the integrated tangent
    double exact_full = 0.0;    ///< same quantity in closed form
    double exact_tangential = 0.0;
    double law_residual = 0.0;  ///< r=3: c1=0 scalar ODE; r=4: 4-harmonic conservation law
    std::vector<std::vector<int>> term_powers; ///< r=4: s-powers present in each law term
};

struct ConjectureScan {
    int order = 3;
    double alpha = 1.0;
    double s0 = 1.0, s1 = 3.0, h = 1e-3;
    std::string profile_form;
    std::string fd_method;
    std::vector<ConjectureRow> rows;
    std::size_t argmin = 0; ///< row with the smallest fd_residual
    std::size_t argmin_tangential = 0;
};

/// r=3: (alpha/s, beta/s) in R^3, tau_3 = gamma^(6). r=4: (alpha/s^2, beta/s^2) in R^3, tau_4 = gamma^(8).
inline ConjectureScan conjecture_scan(int r, double alpha, const std::vector<double>& betas, double s0 = 1.0, double s1 = 3.0,
                                      double h = 1e-3) {
    if (r != 3 && r != 4) throw std::invalid_argument("conjecture_scan: order must be 3 or 4");
    if (!(s0 > 0)) throw SingularityError("conjecture_scan: span must lie in s > 0");
    ConjectureScan scan;
    scan.order = r;
    scan.alpha = alpha;
    scan.s0 = s0;
    scan.s1 = s1;
    scan.h = h;
    const int power = r - 2;
    scan.profile_form = power == 1 ? "k1=alpha/s,k2=beta/s" : "k1=alpha/s^2,k2=beta/s^2";
    const double min_spacing = r == 3 ? 0.01 : 0.02;
    scan.fd_method = "fd-tangent order " + std::to_string(2 * r - 1) + ", spacing >= " + (r == 3 ? std::string("0.01") : std::string("0.02"));
    std::vector<double> sorted = betas;
    std::sort(sorted.begin(), sorted.end());
    for (double beta : sorted) {
        const auto prof = CurvatureProfile::power_law({alpha, beta}, power);
        IntegrateOptions opt;
        const auto samples = integrate_frenet(prof, 3, s0, s1, h, opt);
        std::vector<double> f1(samples.size());
        ConjectureRow row;
        row.beta = beta;
        row.rho = alpha * alpha + beta * beta;
        const auto tower = flat_tower(prof, 3, 2 * r);
        const Laurent full2 = norm_squared(tower.back());
        const Laurent tang = tower.back()[0];
        std::vector<std::vector<double>> cols(3);
        for (std::size_t k = 0; k < 3; ++k) {
            for (std::size_t i = 0; i < samples.size(); ++i) f1[i] = (*samples.frames)[i](0, static_cast<Eigen::Index>(k));
            cols[k] = fd_derivative(f1, h, 2 * r - 1, min_spacing);
        }
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (!std::isfinite(cols[0][i])) continue;
            const double s = samples.s(i);
            const double fd = std::sqrt(cols[0][i] * cols[0][i] + cols[1][i] * cols[1][i] + cols[2][i] * cols[2][i]);
            row.fd_residual = std::max(row.fd_residual, fd);
            row.exact_full = std::max(row.exact_full, std::sqrt(std::max(0.0, full2(s))));
            row.exact_tangential = std::max(row.exact_tangential, std::abs(tang(s)));
        }
        const auto grid = uniform_grid(s0, s1, 201);
        if (r == 3) {
            row.law_residual = curvature_ode_residual(prof, 0.0, grid);
        } else {
            const Laurent t1 = norm_squared(tower[1]).derivative(5);
            const Laurent t2 = 2.0 * norm_squared(tower[2]).derivative(3);
            const Laurent t3 = norm_squared(tower[3]).derivative(1);
            row.term_powers = {t1.powers(), t2.powers(), t3.powers()};
            const Laurent law = t1 - t2 + t3;
            for (double s : grid) row.law_residual = std::max(row.law_residual, std::abs(law(s)));
        }
        scan.rows.push_back(row);
    }
    for (std::size_t i = 1; i < scan.rows.size(); ++i) {
        if (scan.rows[i].fd_residual < scan.rows[scan.argmin].fd_residual) scan.argmin = i;
        if (scan.rows[i].exact_tangential < scan.rows[scan.argmin_tangential].exact_tangential) scan.argmin_tangential = i;
    }
    return scan;
}

/// "lo:hi:n" -> n evenly spaced values.
inline std::vector<double> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    try {
        if (parts.size() == 2) {
            const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
            if (!(hi > lo)) throw std::invalid_argument("");
            return {lo, hi};
        }
        if (parts.size() == 3) {
            const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
            const int n = std::stoi(parts[2]);
            if (n < 1 || (n > 1 && !(hi > lo))) throw std::invalid_argument("");
            if (n == 1) return {lo};
            return uniform_grid(lo, hi, n);
        }
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("grid must be lo:hi or lo:hi:n, got '" + spec + "'");
}

// ---- CSV ----

inline void write_samples_csv(std::ostream& os, const CurveSamples& c) {
    os << "s";
    for (std::size_t k = 0; k < c.dim(); ++k) os << ",x" << k + 1;
    os << "\n";
    char buf[64];
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", c.s(i));
        os << buf;
        for (double v : c.positions[i]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << "," << buf;
        }
        os << "\n";
    }
}

inline CurveSamples read_samples_csv(std::istream& is, bool periodic = false) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("s", 0) != 0) throw std::invalid_argument("samples CSV: missing header 's,x1,...'");
    CurveSamples c;
    c.periodic = periodic;
    std::vector<double> s;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::invalid_argument("samples CSV: bad number '" + cell + "'");
            }
        }
        if (row.size() < 2) throw std::invalid_argument("samples CSV: need s and at least one coordinate");
        if (!c.positions.empty() && row.size() - 1 != c.dim()) throw std::invalid_argument("samples CSV: ragged rows");
        s.push_back(row[0]);
        c.positions.emplace_back(row.begin() + 1, row.end());
    }
    if (s.size() < 2) throw InsufficientSamplesError("samples CSV: fewer than two rows");
    c.s0 = s.front();
    c.h = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
    c.s1 = s.back();
    for (std::size_t i = 0; i < s.size(); ++i)
        if (std::abs(s[i] - c.s(i)) > 1e-9 * std::max(1.0, std::abs(s[i]))) throw std::invalid_argument("samples CSV: spacing is not uniform");
    if (periodic) c.s1 = c.s0 + c.h * static_cast<double>(s.size());
    return c;
}

} // namespace polyhelix
