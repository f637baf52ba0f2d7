#pragma once

// Derivatives of uniformly sampled data: Fornberg central stencils and
// spectral differentiation for periodic samples. Samples where a stencil
// does not fit come back as NaN so nested operations keep their valid range.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace polyhelix {

/// Fornberg weights for the m-th derivative at x0 on the given nodes.
inline std::vector<double> fornberg_weights(int m, const std::vector<double>& nodes, double x0 = 0.0) {
    const int n = static_cast<int>(nodes.size()) - 1;
    if (m < 0 || n < m) throw std::invalid_argument("fornberg_weights: need more nodes than the derivative order");
    std::vector<std::vector<double>> c(nodes.size(), std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
    double c1 = 1.0, c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[static_cast<std::size_t>(i)] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) w[i] = c[i][static_cast<std::size_t>(m)];
    return w;
}

/// Half-width of the central stencil with 8th-order accuracy for the m-th derivative.
inline int central_half_width(int m) { return (m + 1) / 2 + 3; }

/// Central weights on offsets -p..p (unit spacing).
inline std::vector<double> central_weights(int m) {
    const int p = central_half_width(m);
    std::vector<double> nodes;
    for (int i = -p; i <= p; ++i) nodes.push_back(i);
    return fornberg_weights(m, nodes);
}

/// Stride so that the stencil spacing is at least min_spacing.
inline int fd_stride(double h, double min_spacing = 0.01) {
    if (!(h > 0)) throw std::invalid_argument("fd_stride: h must be positive");
    return std::max(1, static_cast<int>(std::ceil(min_spacing / h - 1e-9)));
}

/// m-th derivative of samples spaced h apart. NaN where the stencil does not fit.
inline std::vector<double> fd_derivative(const std::vector<double>& f, double h, int m, double min_spacing = 0.01) {
    const int stride = fd_stride(h, min_spacing);
    const auto w = central_weights(m);
    const int p = central_half_width(m);
    const double H = h * stride;
    const double scale = 1.0 / std::pow(H, m);
    const long n = static_cast<long>(f.size());
    std::vector<double> out(f.size(), std::numeric_limits<double>::quiet_NaN());
    const long reach = static_cast<long>(p) * stride;
    for (long i = reach; i + reach < n; ++i) {
        double s = 0.0;
        for (int k = -p; k <= p; ++k) s += w[static_cast<std::size_t>(k + p)] * f[static_cast<std::size_t>(i + k * stride)];
        out[static_cast<std::size_t>(i)] = s * scale;
    }
    return out;
}

/// m-th derivative of periodic samples f(j P / N), j = 0..N-1.
inline std::vector<double> spectral_derivative(const std::vector<double>& f, double period, int m) {
    const std::size_t N = f.size();
    if (N < 4) throw std::invalid_argument("spectral_derivative: too few samples");
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> F;
    fft.fwd(F, f);
    double amax = 0.0;
    for (const auto& c : F) amax = std::max(amax, std::abs(c));
    const double w0 = 2.0 * std::acos(-1.0) / period;
    for (std::size_t k = 0; k < N; ++k) {
        if (std::abs(F[k]) < 1e-13 * amax) {
            F[k] = 0.0;
            continue;
        }
        long kk = static_cast<long>(k);
        if (kk > static_cast<long>(N) / 2) kk -= static_cast<long>(N);
        if (N % 2 == 0 && kk == static_cast<long>(N) / 2 && m % 2 == 1) {
            F[k] = 0.0;
            continue;
        }
        F[k] *= std::pow(std::complex<double>(0.0, w0 * static_cast<double>(kk)), m);
    }
    std::vector<double> out;
    fft.inv(out, F);
    return out;
}

} // namespace polyhelix
