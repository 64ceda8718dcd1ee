#ifndef GABORDUAL_DISCRETE_HPP
#define GABORDUAL_DISCRETE_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gabordual/dual.hpp"
#include "gabordual/fft.hpp"
#include "gabordual/matrix.hpp"
#include "gabordual/zak.hpp"

namespace gabordual {

/// Discrete Gabor system on C^K: time step a, M modulation channels,
/// lattice {e^{2 pi i l n / M} g[(n - ka) mod K]}, k = 0..K/a-1, l = 0..M-1.
struct DiscreteGaborSystem {
    int K;
    int a;
    int M;
    VectorXcd window;

    DiscreteGaborSystem(int K_, int a_, int M_, VectorXcd g)
        : K(K_), a(a_), M(M_), window(std::move(g)) {
        if (K < 1 || a < 1 || M < 1)
            throw std::invalid_argument("DiscreteGaborSystem: bad sizes");
        if (K % a != 0 || K % M != 0)
            throw std::invalid_argument(
                "DiscreteGaborSystem: a and M must divide K");
        if (M < a)
            throw std::invalid_argument(
                "DiscreteGaborSystem: redundancy M/a below 1");
        if (window.size() != K)
            throw std::invalid_argument("DiscreteGaborSystem: window length");
    }

    int time_positions() const { return K / a; }  // N
    int freq_stride() const { return K / M; }     // b
    double redundancy() const { return static_cast<double>(M) / a; }
};

/// M x N coefficient grid c[l][k] = <f, M_{l/M} T_{ka} g>.
struct DgtCoefficients {
    int M = 0;
    int N = 0;
    std::vector<cplx> c;  // row-major, c[l*N + k]

    cplx& at(int l, int k) { return c[static_cast<std::size_t>(l) * N + k]; }
    cplx at(int l, int k) const {
        return c[static_cast<std::size_t>(l) * N + k];
    }
    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& v : c) s += std::norm(v);
        return std::sqrt(s);
    }
};

/// P_K of a finitely supported sequence: out[j] = sum_k samples[j + K k].
inline VectorXcd periodize(const std::vector<cplx>& samples, long first_index,
                           int K) {
    if (K <= 0) throw std::invalid_argument("periodize: K <= 0");
    VectorXcd out = VectorXcd::Zero(K);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        long idx = (first_index + static_cast<long>(i)) % K;
        if (idx < 0) idx += K;
        out(idx) += samples[i];
    }
    return out;
}

/// P_K S_{alpha/a} g computed through the dilation convention of the
/// sampling step: with h = alpha/a the dilated window g~ = h g(h .) has unit
/// sampling rate and P_K S g~(k) = Z_K g~(k, 0). Sampling weight is 1 after
/// the dilation (the dual side is also weight-1, so duality transfers). For
/// TP windows the Zak value comes from the associated EB-spline; the output
/// depends on the weights and alpha/a only through their ratio.
inline VectorXcd discretize_window(const TpWindow& w, double alpha, int a,
                                   int K) {
    if (a < 1) throw std::invalid_argument("discretize_window: a < 1");
    const double h = alpha / a;
    VectorXcd out(K);
    for (int k = 0; k < K; ++k)
        out(k) = zak_tp_via_ebspline(w, h, K, static_cast<double>(k));
    return out;
}

inline VectorXcd discretize_window(const EbWindow& w, double alpha, int a,
                                   int K) {
    if (a < 1) throw std::invalid_argument("discretize_window: a < 1");
    const double h = alpha / a;
    VectorXcd out = VectorXcd::Zero(K);
    // support of B(h t) is t in [0, N/h); finite sum after periodization
    const long tmax = static_cast<long>(std::ceil(w.order() / h)) + 1;
    for (long t = 0; t <= tmax; ++t) {
        const double v = h * w(h * t);
        if (v != 0.0) out(t % K) += v;
    }
    return out;
}

/// Direct sampling + periodization for windows given as a callable with
/// fast decay (the Gaussian experiments); same dilation convention.
template <class F>
VectorXcd discretize_by_sampling(F&& g, double alpha, int a, int K,
                                 double tail_radius) {
    const double h = alpha / a;
    VectorXcd out = VectorXcd::Zero(K);
    const long jmax = static_cast<long>(std::ceil(tail_radius / (h * K))) + 1;
    for (int k = 0; k < K; ++k) {
        double s = 0.0;
        for (long j = -jmax; j <= jmax; ++j)
            s += g(h * (k + static_cast<double>(j) * K));
        out(k) = h * s;
    }
    return out;
}

/// P_K S_{alpha/a} gamma_L from the sample set of Algorithm 3/4; the sum is
/// finite by compact support. Weight-1 sampling (the h of the quadrature
/// lives in the window side's dilation). Returns true in *wrapped if the
/// support is longer than K (the periodization then overlaps itself, which
/// is still a valid dual but worth reporting).
inline VectorXcd discretize_dual(const DualSampleSet& dual, int K,
                                 bool* wrapped = nullptr) {
    if (K <= 0) throw std::invalid_argument("discretize_dual: K <= 0");
    if (wrapped)
        *wrapped = static_cast<long>(dual.values.size()) > K;
    std::vector<cplx> plain(dual.values.size());
    for (std::size_t i = 0; i < dual.values.size(); ++i)
        plain[i] = dual.values[i];
    return periodize(plain, dual.q0, K);
}

/// Analysis: c[l][k] = sum_n f[n] conj(g[(n-ka) mod K]) e^{-2 pi i l n / M},
/// one length-M FFT of the folded product per time position.
inline DgtCoefficients dgt(const VectorXcd& f, const DiscreteGaborSystem& sys) {
    if (f.size() != sys.K) throw std::invalid_argument("dgt: signal length");
    const int K = sys.K, M = sys.M, N = sys.time_positions();
    DgtCoefficients out;
    out.M = M;
    out.N = N;
    out.c.assign(static_cast<std::size_t>(M) * N, cplx(0.0));
    Fft fft(M);
    std::vector<cplx> folded(static_cast<std::size_t>(M));
    for (int k = 0; k < N; ++k) {
        std::fill(folded.begin(), folded.end(), cplx(0.0));
        for (int n = 0; n < K; ++n) {
            int shifted = (n - k * sys.a) % K;
            if (shifted < 0) shifted += K;
            folded[static_cast<std::size_t>(n % M)] +=
                f(n) * std::conj(sys.window(shifted));
        }
        fft.forward(folded);
        for (int l = 0; l < M; ++l) out.at(l, k) = folded[static_cast<std::size_t>(l)];
    }
    return out;
}

/// Synthesis with a window gamma: f = sum_{k,l} c[l][k] M_{l/M} T_{ka} gamma.
inline VectorXcd idgt(const DgtCoefficients& c, const VectorXcd& gamma,
                      const DiscreteGaborSystem& sys) {
    if (c.M != sys.M || c.N != sys.time_positions())
        throw std::invalid_argument("idgt: coefficient shape");
    if (gamma.size() != sys.K)
        throw std::invalid_argument("idgt: window length");
    const int K = sys.K, M = sys.M, N = sys.time_positions();
    VectorXcd f = VectorXcd::Zero(K);
    Fft fft(M);
    std::vector<cplx> spec(static_cast<std::size_t>(M));
    for (int k = 0; k < N; ++k) {
        for (int l = 0; l < M; ++l) spec[static_cast<std::size_t>(l)] = c.at(l, k);
        fft.backward(spec);  // spec[m] = sum_l c[l][k] e^{2 pi i l m / M}
        for (int n = 0; n < K; ++n) {
            int shifted = (n - k * sys.a) % K;
            if (shifted < 0) shifted += K;
            f(n) += spec[static_cast<std::size_t>(n % M)] * gamma(shifted);
        }
    }
    return f;
}

/// Explicit K x K matrix of S = C*_g C_g via the Walnut-type structure:
/// S[n,n'] = M sum_k g[n-ka] conj(g[n'-ka]) when M | (n-n'), else 0.
inline MatrixXcd frame_operator_matrix(const DiscreteGaborSystem& sys) {
    const int K = sys.K, M = sys.M, N = sys.time_positions();
    MatrixXcd s = MatrixXcd::Zero(K, K);
    auto gmod = [&](int n) {
        int r = n % K;
        if (r < 0) r += K;
        return sys.window(r);
    };
    for (int n = 0; n < K; ++n) {
        for (int np = n % M; np < K; np += M) {
            cplx acc = 0.0;
            for (int k = 0; k < N; ++k)
                acc += gmod(n - k * sys.a) * std::conj(gmod(np - k * sys.a));
            s(n, np) = static_cast<double>(M) * acc;
        }
    }
    return s;
}

/// Canonical dual gamma0 = S^{-1} g. Direct Cholesky solve for K <= 4096,
/// matrix-free conjugate gradient beyond.
inline VectorXcd discrete_canonical_dual(const DiscreteGaborSystem& sys) {
    if (sys.K <= 4096) {
        const MatrixXcd s = frame_operator_matrix(sys);
        try {
            return solve_spd(s, sys.window);
        } catch (const std::runtime_error&) {
            throw std::runtime_error(
                "discrete_canonical_dual: not a frame for C^K");
        }
    }
    // CG on S x = g, matrix-free through analysis/synthesis
    auto apply_s = [&](const VectorXcd& v) {
        return idgt(dgt(v, sys), sys.window, sys);
    };
    VectorXcd x = VectorXcd::Zero(sys.K);
    VectorXcd r = sys.window;
    VectorXcd p = r;
    double rs = r.squaredNorm();
    const double tol2 = 1e-28 * rs;
    for (int it = 0; it < 10000 && rs > tol2; ++it) {
        const VectorXcd sp = apply_s(p);
        const double denom = std::real(p.dot(sp));
        if (!(denom > 0.0))
            throw std::runtime_error(
                "discrete_canonical_dual: not a frame for C^K");
        const double alpha = rs / denom;
        x += alpha * p;
        r -= alpha * sp;
        const double rs_new = r.squaredNorm();
        p = r + (rs_new / rs) * p;
        rs = rs_new;
    }
    return x;
}

/// Critical-density check (alpha = M, beta = 1/M): do the K Gabor vectors
/// form a basis of C^K? Decided by the numerical rank of the synthesis
/// matrix.
inline bool critical_basis_check(const VectorXcd& g_d, int M) {
    const int K = static_cast<int>(g_d.size());
    if (M < 1 || K % M != 0)
        throw std::invalid_argument("critical_basis_check: M must divide K");
    const int N = K / M;
    MatrixXcd synth(K, K);
    int col = 0;
    for (int k = 0; k < N; ++k) {
        for (int l = 0; l < M; ++l, ++col) {
            for (int n = 0; n < K; ++n) {
                int sh = (n - k * M) % K;
                if (sh < 0) sh += K;
                synth(n, col) =
                    std::polar(1.0, 2.0 * std::numbers::pi * l * n / M) * g_d(sh);
            }
        }
    }
    auto [smin, smax] = sigma_extremes(synth);
    return smin > K * std::numeric_limits<double>::epsilon() * smax;
}

}  // namespace gabordual

#endif
