#pragma once

// Truncated Taylor series f(s + e) = sum_{k<=N} c_k e^k.

#include <array>
#include <cmath>
#include <stdexcept>

namespace polyhelix {

template <int N>
struct Jet {
    std::array<double, N + 1> c{};

    Jet() = default;
    Jet(double v) { c[0] = v; } // NOLINT: constants promote

    static Jet variable(double s) {
        Jet j(s);
        if constexpr (N >= 1) j.c[1] = 1.0;
        return j;
    }

    /// k-th derivative at the expansion point.
    double derivative(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return c[static_cast<std::size_t>(k)] * f;
    }

    Jet& operator+=(const Jet& o) {
        for (int k = 0; k <= N; ++k) c[k] += o.c[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int k = 0; k <= N; ++k) c[k] -= o.c[k];
        return *this;
    }
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) {
        for (auto& x : a.c) x = -x;
        return a;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet o;
        for (int i = 0; i <= N; ++i)
            for (int j = 0; i + j <= N; ++j) o.c[i + j] += a.c[i] * b.c[j];
        return o;
    }
    friend Jet operator*(double s, Jet a) {
        for (auto& x : a.c) x *= s;
        return a;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.c[0] == 0.0) throw std::domain_error("Jet: division by zero");
        Jet q;
        for (int k = 0; k <= N; ++k) {
            double v = a.c[k];
            for (int j = 1; j <= k; ++j) v -= b.c[j] * q.c[k - j];
            q.c[k] = v / b.c[0];
        }
        return q;
    }
};

template <int N>
Jet<N> exp(const Jet<N>& a) {
    // f' = a' f
    Jet<N> f;
    f.c[0] = std::exp(a.c[0]);
    for (int k = 1; k <= N; ++k) {
        double v = 0.0;
        for (int j = 1; j <= k; ++j) v += j * a.c[j] * f.c[k - j];
        f.c[k] = v / k;
    }
    return f;
}

template <int N>
Jet<N> sqrt(const Jet<N>& a) {
    if (a.c[0] <= 0.0) throw std::domain_error("Jet: sqrt of non-positive value");
    // f^2 = a
    Jet<N> f;
    f.c[0] = std::sqrt(a.c[0]);
    for (int k = 1; k <= N; ++k) {
        double v = a.c[k];
        for (int j = 1; j < k; ++j) v -= f.c[j] * f.c[k - j];
        f.c[k] = v / (2.0 * f.c[0]);
    }
    return f;
}

} // namespace polyhelix
