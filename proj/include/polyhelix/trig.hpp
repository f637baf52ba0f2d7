#pragma once

// Closed-form trigonometric polynomials sum_w c cos(w s) + d sin(w s) and
// vectors of them. Exact derivatives and products, so nested s-derivatives of
// scalar products carry no discretisation error.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace polyhelix {

class TrigPoly {
public:
    struct Term {
        double freq; ///< >= 0
        double c;    ///< cos coefficient
        double d;    ///< sin coefficient (ignored at freq 0)
    };

    TrigPoly() = default;
    explicit TrigPoly(double constant) {
        if (constant != 0.0) terms_.push_back({0.0, constant, 0.0});
    }
    static TrigPoly cosine(double w, double amp = 1.0) { return from_term(w, amp, 0.0); }
    static TrigPoly sine(double w, double amp = 1.0) { return from_term(w, 0.0, amp); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    double operator()(double s) const {
        double v = 0.0;
        for (const auto& t : terms_) v += t.c * std::cos(t.freq * s) + t.d * std::sin(t.freq * s);
        return v;
    }

    double max_frequency() const {
        double m = 0.0;
        for (const auto& t : terms_) m = std::max(m, t.freq);
        return m;
    }

    /// Sum of |coefficients|, an upper bound for the sup norm.
    double coefficient_bound() const {
        double b = 0.0;
        for (const auto& t : terms_) b += std::abs(t.c) + std::abs(t.d);
        return b;
    }

    TrigPoly derivative(int order = 1) const {
        TrigPoly out = *this;
        for (int k = 0; k < order; ++k) {
            for (auto& t : out.terms_) {
                const double c = t.freq * t.d, d = -t.freq * t.c;
                t.c = c;
                t.d = d;
            }
            out.normalize();
        }
        return out;
    }

    TrigPoly& operator+=(const TrigPoly& o) {
        terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
        normalize();
        return *this;
    }
    TrigPoly& operator-=(const TrigPoly& o) { return *this += -o; }
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator-(TrigPoly a) {
        for (auto& t : a.terms_) {
            t.c = -t.c;
            t.d = -t.d;
        }
        return a;
    }
    friend TrigPoly operator*(double s, TrigPoly a) {
        for (auto& t : a.terms_) {
            t.c *= s;
            t.d *= s;
        }
        a.normalize();
        return a;
    }
    friend TrigPoly operator*(const TrigPoly& a, double s) { return s * a; }

    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
        TrigPoly out;
        out.terms_.reserve(2 * a.terms_.size() * b.terms_.size());
        for (const auto& p : a.terms_) {
            for (const auto& q : b.terms_) {
                // (c1 cos x + d1 sin x)(c2 cos y + d2 sin y), x = p s, y = q s
                const double cc = p.c * q.c, ss = p.d * q.d, sc = p.d * q.c, cs = p.c * q.d;
                // cos x cos y = (cos(x-y) + cos(x+y))/2, sin x sin y = (cos(x-y) - cos(x+y))/2
                // sin x cos y = (sin(x+y) + sin(x-y))/2, cos x sin y = (sin(x+y) - sin(x-y))/2
                out.push(p.freq + q.freq, 0.5 * (cc - ss), 0.5 * (sc + cs));
                out.push(p.freq - q.freq, 0.5 * (cc + ss), 0.5 * (sc - cs));
            }
        }
        out.normalize();
        return out;
    }

private:
    static TrigPoly from_term(double w, double c, double d) {
        TrigPoly t;
        t.push(w, c, d);
        t.normalize();
        return t;
    }

    void push(double w, double c, double d) {
        if (w < 0) {
            w = -w;
            d = -d;
        }
        terms_.push_back({w, c, d});
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.freq < y.freq; });
        std::vector<Term> merged;
        double scale = 0.0;
        for (const auto& t : terms_) scale = std::max({scale, std::abs(t.c), std::abs(t.d)});
        for (auto t : terms_) {
            if (t.freq < 1e-12) {
                t.freq = 0.0;
                t.d = 0.0;
            }
            if (!merged.empty() && std::abs(merged.back().freq - t.freq) <= 1e-12 * std::max(1.0, t.freq)) {
                merged.back().c += t.c;
                merged.back().d += t.d;
            } else {
                merged.push_back(t);
            }
        }
        terms_.clear();
        for (const auto& t : merged)
            if (std::abs(t.c) > 1e-300 + 1e-17 * scale || std::abs(t.d) > 1e-300 + 1e-17 * scale) terms_.push_back(t);
    }

    std::vector<Term> terms_;
};

class TrigVec {
public:
    TrigVec() = default;
    explicit TrigVec(std::size_t dim) : comp_(dim) {}

    std::size_t dim() const { return comp_.size(); }
    TrigPoly& operator[](std::size_t i) { return comp_[i]; }
    const TrigPoly& operator[](std::size_t i) const { return comp_[i]; }

    std::vector<double> operator()(double s) const {
        std::vector<double> v(comp_.size());
        for (std::size_t i = 0; i < comp_.size(); ++i) v[i] = comp_[i](s);
        return v;
    }

    double max_frequency() const {
        double m = 0.0;
        for (const auto& c : comp_) m = std::max(m, c.max_frequency());
        return m;
    }

    TrigVec derivative(int order = 1) const {
        TrigVec out(dim());
        for (std::size_t i = 0; i < dim(); ++i) out.comp_[i] = comp_[i].derivative(order);
        return out;
    }

    friend TrigPoly dot(const TrigVec& a, const TrigVec& b) {
        check(a, b);
        TrigPoly s;
        for (std::size_t i = 0; i < a.dim(); ++i) s += a.comp_[i] * b.comp_[i];
        return s;
    }

    TrigVec& operator+=(const TrigVec& o) {
        check(*this, o);
        for (std::size_t i = 0; i < dim(); ++i) comp_[i] += o.comp_[i];
        return *this;
    }
    TrigVec& operator-=(const TrigVec& o) {
        check(*this, o);
        for (std::size_t i = 0; i < dim(); ++i) comp_[i] -= o.comp_[i];
        return *this;
    }
    friend TrigVec operator+(TrigVec a, const TrigVec& b) { return a += b; }
    friend TrigVec operator-(TrigVec a, const TrigVec& b) { return a -= b; }
    friend TrigVec operator*(const TrigPoly& f, const TrigVec& v) {
        TrigVec out(v.dim());
        for (std::size_t i = 0; i < v.dim(); ++i) out.comp_[i] = f * v.comp_[i];
        return out;
    }
    friend TrigVec operator*(double f, const TrigVec& v) {
        TrigVec out(v.dim());
        for (std::size_t i = 0; i < v.dim(); ++i) out.comp_[i] = f * v.comp_[i];
        return out;
    }

private:
    static void check(const TrigVec& a, const TrigVec& b) {
        if (a.dim() != b.dim()) throw std::invalid_argument("TrigVec: dimension mismatch");
    }

    std::vector<TrigPoly> comp_;
};

inline double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace polyhelix
