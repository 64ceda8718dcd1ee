// Test-only oracles, independent of the library evaluation paths:
// quadrature-based convolution and Fourier inversion for window values,
// brute-force sums for Zak transforms, naive double sums for the DGT.
#ifndef GABORDUAL_TESTS_ORACLES_HPP
#define GABORDUAL_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Gauss-Legendre panel quadrature
// ---------------------------------------------------------------------------

struct GaussLegendre {
    std::vector<double> nodes, weights;

    explicit GaussLegendre(int n = 32) : nodes(n), weights(n) {
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[i] = x;
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            s += weights[i] * f(mid + half * nodes[i]);
        return s * half;
    }

    // Integrate with the interval split at the given break points, each
    // resulting panel further split into unit-length pieces.
    template <class F>
    double integrate_split(F&& f, double a, double b,
                           std::vector<double> breaks) const {
        breaks.push_back(a);
        breaks.push_back(b);
        std::sort(breaks.begin(), breaks.end());
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            double lo = std::max(a, breaks[i]), hi = std::min(b, breaks[i + 1]);
            if (hi - lo < 1e-14) continue;
            const int pieces = std::max(1, static_cast<int>(std::ceil(hi - lo)));
            for (int p = 0; p < pieces; ++p)
                s += integrate(f, lo + (hi - lo) * p / pieces,
                               lo + (hi - lo) * (p + 1) / pieces);
        }
        return s;
    }
};

// ---------------------------------------------------------------------------
// EB-spline by recursive numerical convolution of e^{lambda t} chi_[0,1)
// ---------------------------------------------------------------------------

inline double eb_conv(const std::vector<double>& lams, double x) {
    static const GaussLegendre gl;
    const int n = static_cast<int>(lams.size());
    if (x <= 0.0 || x >= n) return 0.0;
    if (n == 1) return std::exp(lams[0] * x);
    std::vector<double> head(lams.begin(), lams.end() - 1);
    const double lam = lams.back();
    const double lo = std::max(0.0, x - 1.0);
    const double hi = std::min(x, static_cast<double>(n - 1));
    if (hi <= lo) return 0.0;
    std::vector<double> breaks;
    for (int k = 0; k <= n - 1; ++k) breaks.push_back(k);
    return gl.integrate_split(
        [&](double t) { return eb_conv(head, t) * std::exp(lam * (x - t)); }, lo,
        hi, breaks);
}

// ---------------------------------------------------------------------------
// TP window by Fourier inversion of prod (1 + 2 pi i delta w)^{-1}
// ---------------------------------------------------------------------------

inline double tp_fourier(const std::vector<double>& deltas, double x,
                         double w_max = 400.0, double panel = 0.05) {
    static const GaussLegendre gl;
    double s = 0.0;
    const long panels = static_cast<long>(std::ceil(2.0 * w_max / panel));
    for (long p = 0; p < panels; ++p) {
        const double a = -w_max + 2.0 * w_max * p / panels;
        const double b = -w_max + 2.0 * w_max * (p + 1) / panels;
        s += gl.integrate(
            [&](double w) {
                cplx gh = 1.0;
                for (double d : deltas) gh /= cplx(1.0, 2.0 * std::numbers::pi * d * w);
                return std::real(gh * std::polar(1.0, 2.0 * std::numbers::pi * w * x));
            },
            a, b);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Brute-force Zak sum
// ---------------------------------------------------------------------------

template <class F>
cplx zak_bruteforce(F&& f, double alpha, double x, double omega, long radius = 200) {
    cplx s = 0.0;
    for (long j = -radius; j <= radius; ++j)
        s += f(x + alpha * j) *
             std::polar(1.0, -2.0 * std::numbers::pi * j * alpha * omega);
    return s;
}

// ---------------------------------------------------------------------------
// Naive O(K^2) discrete Gabor transform
// ---------------------------------------------------------------------------

inline Eigen::MatrixXcd naive_dgt(const Eigen::VectorXcd& f,
                                  const Eigen::VectorXcd& g, int K, int a,
                                  int M) {
    const int N = K / a;
    Eigen::MatrixXcd c(M, N);
    for (int l = 0; l < M; ++l)
        for (int k = 0; k < N; ++k) {
            cplx s = 0.0;
            for (int n = 0; n < K; ++n) {
                int sh = (n - k * a) % K;
                if (sh < 0) sh += K;
                s += f(n) * std::conj(g(sh)) *
                     std::polar(1.0, -2.0 * std::numbers::pi * l * n / M);
            }
            c(l, k) = s;
        }
    return c;
}

}  // namespace oracles

#endif
