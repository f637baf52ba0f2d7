#pragma once

// Exact sparse multivariate polynomials over Q in the curvature variables
// k_1..k_m and the ambient curvature K.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace polyhelix {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Variable identifier. k_i has id i (i >= 1); K sorts after every k_i.
using VarId = int;
inline constexpr VarId kAmbient = std::numeric_limits<int>::max();

inline std::string var_name(VarId v) {
    return v == kAmbient ? std::string("K") : "k" + std::to_string(v);
}

inline std::string var_latex(VarId v) {
    return v == kAmbient ? std::string("K") : "k_{" + std::to_string(v) + "}";
}

/// Power product of variables. Stored sorted by VarId, zero exponents never stored.
class Monomial {
public:
    using Factor = std::pair<VarId, unsigned>;

    Monomial() = default;

    static Monomial var(VarId v, unsigned exponent = 1) {
        Monomial m;
        if (exponent > 0) m.factors_.emplace_back(v, exponent);
        return m;
    }

    static Monomial from_factors(std::vector<Factor> factors) {
        std::sort(factors.begin(), factors.end());
        Monomial m;
        for (const auto& [v, e] : factors) {
            if (e == 0) continue;
            if (!m.factors_.empty() && m.factors_.back().first == v)
                m.factors_.back().second += e;
            else
                m.factors_.emplace_back(v, e);
        }
        return m;
    }

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }

    unsigned exponent(VarId v) const {
        auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v, 0u});
        return (it != factors_.end() && it->first == v) ? it->second : 0u;
    }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& f : factors_) d += f.second;
        return d;
    }

    bool contains_any(const std::set<VarId>& vars) const {
        return std::any_of(factors_.begin(), factors_.end(),
                           [&](const Factor& f) { return vars.count(f.first) > 0; });
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial out;
        out.factors_.reserve(a.factors_.size() + b.factors_.size());
        auto i = a.factors_.begin();
        auto j = b.factors_.begin();
        while (i != a.factors_.end() || j != b.factors_.end()) {
            if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
                out.factors_.push_back(*i++);
            } else if (i == a.factors_.end() || j->first < i->first) {
                out.factors_.push_back(*j++);
            } else {
                out.factors_.emplace_back(i->first, i->second + j->second);
                ++i;
                ++j;
            }
        }
        return out;
    }

    /// Exponent-wise minimum.
    static Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial out;
        for (const auto& [v, e] : a.factors_) {
            unsigned f = b.exponent(v);
            if (f > 0) out.factors_.emplace_back(v, std::min(e, f));
        }
        return out;
    }

    /// a / b; requires b | a.
    static Monomial divide(const Monomial& a, const Monomial& b) {
        Monomial out;
        for (const auto& [v, e] : a.factors_) {
            unsigned f = b.exponent(v);
            if (f > e) throw std::domain_error("Monomial::divide: not divisible");
            if (e > f) out.factors_.emplace_back(v, e - f);
        }
        for (const auto& [v, f] : b.factors_)
            if (a.exponent(v) == 0) throw std::domain_error("Monomial::divide: not divisible");
        return out;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

    /// Rendering order: true when `a` is printed before `b`.
    /// Higher total degree first; ties go to the larger exponent of the
    /// earliest variable in k_1 < k_2 < ... < K.
    static bool render_before(const Monomial& a, const Monomial& b) {
        const unsigned da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        auto i = a.factors_.begin();
        auto j = b.factors_.begin();
        while (i != a.factors_.end() && j != b.factors_.end()) {
            if (i->first != j->first) return i->first < j->first;
            if (i->second != j->second) return i->second > j->second;
            ++i;
            ++j;
        }
        return i != a.factors_.end() && j == b.factors_.end();
    }

    std::string to_string() const {
        if (factors_.empty()) return "1";
        std::string out;
        auto emit = [&](const Factor& f) {
            if (!out.empty()) out += '*';
            out += var_name(f.first);
            if (f.second > 1) out += '^' + std::to_string(f.second);
        };
        // K leads the product, curvatures follow in index order.
        for (const auto& f : factors_)
            if (f.first == kAmbient) emit(f);
        for (const auto& f : factors_)
            if (f.first != kAmbient) emit(f);
        return out;
    }

    std::string to_latex() const {
        if (factors_.empty()) return "1";
        std::string out;
        auto emit = [&](const Factor& f) {
            if (!out.empty()) out += ' ';
            out += var_latex(f.first);
            if (f.second > 1) out += "^{" + std::to_string(f.second) + '}';
        };
        for (const auto& f : factors_)
            if (f.first == kAmbient) emit(f);
        for (const auto& f : factors_)
            if (f.first != kAmbient) emit(f);
        return out;
    }

private:
    std::vector<Factor> factors_;
};

/// Polynomial in k_1..k_m, K with exact rational coefficients.
/// Canonical: no zero coefficients, so equal polynomials compare equal.
class CurvaturePolynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    CurvaturePolynomial() = default;
    CurvaturePolynomial(long long c) { // NOLINT: implicit constant promotion is the point
        if (c != 0) terms_.emplace(Monomial{}, Rational(c));
    }
    explicit CurvaturePolynomial(const Rational& c) {
        if (c != 0) terms_.emplace(Monomial{}, c);
    }
    CurvaturePolynomial(const Monomial& m, const Rational& c) {
        if (c != 0) terms_.emplace(m, c);
    }

    static CurvaturePolynomial k(int i) { return {Monomial::var(i), Rational(1)}; }
    static CurvaturePolynomial ambient() { return {Monomial::var(kAmbient), Rational(1)}; }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::set<VarId> variables() const {
        std::set<VarId> vars;
        for (const auto& [m, c] : terms_)
            for (const auto& f : m.factors()) vars.insert(f.first);
        return vars;
    }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    CurvaturePolynomial& operator+=(const CurvaturePolynomial& q) {
        for (const auto& [m, c] : q.terms_) add_term(m, c);
        return *this;
    }
    CurvaturePolynomial& operator-=(const CurvaturePolynomial& q) {
        for (const auto& [m, c] : q.terms_) add_term(m, -c);
        return *this;
    }

    friend CurvaturePolynomial operator+(CurvaturePolynomial p, const CurvaturePolynomial& q) {
        return p += q;
    }
    friend CurvaturePolynomial operator-(CurvaturePolynomial p, const CurvaturePolynomial& q) {
        return p -= q;
    }
    friend CurvaturePolynomial operator-(CurvaturePolynomial p) {
        for (auto& [m, c] : p.terms_) c = -c;
        return p;
    }

    friend CurvaturePolynomial operator*(const CurvaturePolynomial& p,
                                         const CurvaturePolynomial& q) {
        CurvaturePolynomial out;
        for (const auto& [mp, cp] : p.terms_)
            for (const auto& [mq, cq] : q.terms_) out.add_term(mp * mq, cp * cq);
        return out;
    }

    /// Multiply by a single term; never creates cancellation.
    CurvaturePolynomial times(const Monomial& m, const Rational& c) const {
        CurvaturePolynomial out;
        if (c == 0) return out;
        for (const auto& [mp, cp] : terms_) out.terms_.emplace_hint(out.terms_.end(), mp * m, cp * c);
        return out;
    }

    friend bool operator==(const CurvaturePolynomial&, const CurvaturePolynomial&) = default;

    /// Drop every term containing one of `vars` (sets those variables to zero).
    CurvaturePolynomial substitute_zero(const std::set<VarId>& vars) const {
        CurvaturePolynomial out;
        for (const auto& [m, c] : terms_)
            if (!m.contains_any(vars)) out.terms_.emplace_hint(out.terms_.end(), m, c);
        return out;
    }

    /// Replace variable `v` by the polynomial `q`.
    CurvaturePolynomial substitute(VarId v, const CurvaturePolynomial& q) const {
        CurvaturePolynomial out;
        std::map<unsigned, CurvaturePolynomial> powers;
        powers[0] = CurvaturePolynomial(1);
        for (const auto& [m, c] : terms_) {
            const unsigned e = m.exponent(v);
            std::vector<Monomial::Factor> rest;
            for (const auto& f : m.factors())
                if (f.first != v) rest.push_back(f);
            auto it = powers.find(e);
            if (it == powers.end()) {
                unsigned have = powers.rbegin()->first;
                CurvaturePolynomial acc = powers.rbegin()->second;
                while (have < e) {
                    acc = acc * q;
                    ++have;
                    powers.emplace(have, acc);
                }
                it = powers.find(e);
            }
            out += it->second.times(Monomial::from_factors(rest), c);
        }
        return out;
    }

    /// Evaluate at a real assignment. Throws std::out_of_range naming the first unbound variable.
    template <class Assignment>
    double evaluate(const Assignment& assignment) const {
        double sum = 0.0;
        for (const auto& [m, c] : terms_) {
            double t = static_cast<double>(c);
            for (const auto& [v, e] : m.factors()) {
                auto it = assignment.find(v);
                if (it == assignment.end())
                    throw std::out_of_range("evaluate: unbound variable " + var_name(v));
                double x = it->second, p = 1.0;
                for (unsigned i = 0; i < e; ++i) p *= x;
                t *= p;
            }
            sum += t;
        }
        return sum;
    }

    /// Largest monomial dividing every term, and the exact cofactor.
    std::pair<Monomial, CurvaturePolynomial> factor_monomial_gcd() const {
        if (terms_.empty()) throw std::domain_error("factor_monomial_gcd: zero polynomial");
        Monomial g = terms_.begin()->first;
        for (const auto& [m, c] : terms_) g = Monomial::gcd(g, m);
        CurvaturePolynomial cofactor;
        for (const auto& [m, c] : terms_) cofactor.terms_.emplace(Monomial::divide(m, g), c);
        return {g, cofactor};
    }

    /// Terms in rendering order.
    std::vector<std::pair<Monomial, Rational>> ordered_terms() const {
        std::vector<std::pair<Monomial, Rational>> out(terms_.begin(), terms_.end());
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            return Monomial::render_before(a.first, b.first);
        });
        return out;
    }

    /// Coefficient of the first term in rendering order.
    Rational leading_coefficient() const {
        if (terms_.empty()) return Rational(0);
        return ordered_terms().front().second;
    }

    /// Deterministic text rendering, e.g. `k1^4 + 2*k1^2*k2^2 + k2^4 - 2*K*k1^2`.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : ordered_terms()) {
            Rational mag = boost::multiprecision::abs(c);
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            first = false;
            if (m.is_one()) {
                os << mag.str();
            } else {
                if (mag != 1) os << mag.str() << '*';
                os << m.to_string();
            }
        }
        return os.str();
    }

    std::string to_latex() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : ordered_terms()) {
            Rational mag = boost::multiprecision::abs(c);
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            first = false;
            const BigInt num = boost::multiprecision::numerator(mag);
            const BigInt den = boost::multiprecision::denominator(mag);
            std::string coef = den == 1 ? num.str() : "\\frac{" + num.str() + "}{" + den.str() + "}";
            if (m.is_one())
                os << coef;
            else
                os << (mag == 1 ? std::string() : coef + " ") << m.to_latex();
        }
        return os.str();
    }

private:
    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TermMap terms_;
};

using Poly = CurvaturePolynomial;

inline Poly pow(const Poly& p, unsigned e) {
    Poly out(1);
    for (unsigned i = 0; i < e; ++i) out = out * p;
    return out;
}

inline Poly operator*(const Poly& p, long long c) { return p * Poly(c); }
inline Poly operator*(long long c, const Poly& p) { return Poly(c) * p; }

/// Polynomial of the monomial itself (coefficient 1).
inline Poly as_poly(const Monomial& m) { return {m, Rational(1)}; }

/// Sum of k_j^2 for j = 1..n.
inline Poly sum_of_squares(int n) {
    Poly s;
    for (int j = 1; j <= n; ++j) s += Poly::k(j) * Poly::k(j);
    return s;
}

/// Product k_lo * ... * k_hi (1 for an empty range).
inline Poly curvature_product(int lo, int hi) {
    std::vector<Monomial::Factor> f;
    for (int i = lo; i <= hi; ++i) f.emplace_back(i, 1u);
    return as_poly(Monomial::from_factors(std::move(f)));
}

/// Rewrite a polynomial in k_j that only has even exponents in the k's as a
/// polynomial in x_j = k_j^2 (stored in the same slots). Throws on odd exponents.
inline Poly to_squared_variables(const Poly& p) {
    Poly out;
    for (const auto& [m, c] : p.terms()) {
        std::vector<Monomial::Factor> f;
        for (const auto& [v, e] : m.factors()) {
            if (v == kAmbient) {
                f.emplace_back(v, e);
                continue;
            }
            if (e % 2 != 0)
                throw std::domain_error("to_squared_variables: odd power of " + var_name(v));
            f.emplace_back(v, e / 2);
        }
        out += Poly(Monomial::from_factors(std::move(f)), c);
    }
    return out;
}

} // namespace polyhelix
