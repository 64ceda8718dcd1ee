#ifndef GABORDUAL_SCHULZ_HPP
#define GABORDUAL_SCHULZ_HPP

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gabordual/discrete.hpp"

namespace gabordual {

enum class SchulzVariant { frame_algo, schulz_operator, schulz_vector, schulz_janssen };

inline const char* variant_name(SchulzVariant v) {
    switch (v) {
        case SchulzVariant::frame_algo: return "frame_algo";
        case SchulzVariant::schulz_operator: return "schulz_operator";
        case SchulzVariant::schulz_vector: return "schulz_vector";
        case SchulzVariant::schulz_janssen: return "schulz_janssen";
    }
    return "?";
}

struct IterationTrace {
    SchulzVariant variant;
    double lambda = 0.0;
    struct Record {
        int k;
        double error;       // ||C_{gamma0} - C_{gamma_k}|| spectral norm
        double gamma_norm;
    };
    std::vector<Record> records;

    double min_error() const {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& r : records) m = std::min(m, r.error);
        return m;
    }
    /// max error over the steps after the minimum, divided by the minimum.
    double plateau_growth_factor() const {
        double m = std::numeric_limits<double>::infinity();
        double worst = 0.0;
        for (const auto& r : records) {
            if (r.error < m) {
                m = r.error;
                worst = r.error;
            } else {
                worst = std::max(worst, r.error);
            }
        }
        return worst / m;
    }
};

/// Largest eigenvalue of the (Hermitian PSD) operator v -> apply(v) by power
/// iteration with a fixed-seed start vector.
template <class Apply>
double power_iteration_lmax(Apply&& apply, int dim, double rel_tol = 1e-8,
                            int max_iter = 2000) {
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> nd;
    VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cplx(nd(rng), nd(rng));
    v.normalize();
    double lam = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        VectorXcd w = apply(v);
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        const double lam_new = nw;  // Rayleigh growth for PSD operators
        w /= nw;
        const bool done = std::abs(lam_new - lam) <= rel_tol * lam_new && it > 4;
        lam = lam_new;
        v = std::move(w);
        if (done) break;
    }
    return lam;
}

/// sigma_max of the frame operator, via matrix-free power iteration.
inline double frame_operator_norm(const DiscreteGaborSystem& sys,
                                  double rel_tol = 1e-6) {
    return power_iteration_lmax(
        [&](const VectorXcd& v) { return idgt(dgt(v, sys), sys.window, sys); },
        sys.K, rel_tol);
}

/// lambda = 1/B_est with B_est = sigma_max(S); then ||I - lambda S|| < 1.
inline double estimate_lambda(const DiscreteGaborSystem& sys) {
    const double b = frame_operator_norm(sys);
    if (!(b > 0.0)) throw std::invalid_argument("estimate_lambda: zero window");
    return 1.0 / b;
}

/// Spectral norm of the analysis-operator difference C_{gamma_star} -
/// C_{gamma_hat}. The difference is the analysis operator of the window
/// difference, so the norm is the square root of the largest eigenvalue of
/// its frame operator, computed matrix-free.
inline double error_metric(const VectorXcd& gamma_hat,
                           const VectorXcd& gamma_star,
                           const DiscreteGaborSystem& sys) {
    if (gamma_hat.size() != sys.K || gamma_star.size() != sys.K)
        throw std::invalid_argument("error_metric: size mismatch");
    const VectorXcd d = gamma_star - gamma_hat;
    if (d.norm() == 0.0) return 0.0;
    DiscreteGaborSystem dsys(sys.K, sys.a, sys.M, d);
    const double lmax = power_iteration_lmax(
        [&](const VectorXcd& v) { return idgt(dgt(v, dsys), dsys.window, dsys); },
        sys.K);
    return std::sqrt(lmax);
}

/// Frame algorithm in vector form: gamma_{k+1} = lambda g + (I - lambda S) gamma_k.
inline IterationTrace frame_algo(const DiscreteGaborSystem& sys, double lambda,
                                 int steps,
                                 std::vector<VectorXcd>* iterates = nullptr) {
    const VectorXcd gamma_star = discrete_canonical_dual(sys);
    IterationTrace tr{SchulzVariant::frame_algo, lambda, {}};
    VectorXcd gamma = lambda * sys.window;
    for (int k = 0; k <= steps; ++k) {
        tr.records.push_back({k, error_metric(gamma, gamma_star, sys), gamma.norm()});
        if (iterates) iterates->push_back(gamma);
        if (k == steps) break;
        const VectorXcd sg = idgt(dgt(gamma, sys), sys.window, sys);
        gamma = lambda * sys.window + gamma - lambda * sg;
    }
    return tr;
}

/// Operator form J_{k+1} = 2 J_k - J_k S J_k with explicit matrices.
inline IterationTrace schulz_operator(const DiscreteGaborSystem& sys,
                                      double lambda, int steps,
                                      std::vector<MatrixXcd>* j_iterates = nullptr) {
    if (sys.K > 4096)
        throw std::invalid_argument("schulz_operator: K too large for matrices");
    const VectorXcd gamma_star = discrete_canonical_dual(sys);
    const MatrixXcd s = frame_operator_matrix(sys);
    IterationTrace tr{SchulzVariant::schulz_operator, lambda, {}};
    MatrixXcd j = lambda * MatrixXcd::Identity(sys.K, sys.K);
    for (int k = 0; k <= steps; ++k) {
        const VectorXcd gamma = j * sys.window;
        tr.records.push_back({k, error_metric(gamma, gamma_star, sys), gamma.norm()});
        if (j_iterates) j_iterates->push_back(j);
        if (k == steps) break;
        j = 2.0 * j - j * (s * j);
    }
    return tr;
}

/// Vector form gamma_{k+1} = 2 gamma_k - C*_{gamma_k} C_g gamma_k,
/// matrix-free.
inline IterationTrace schulz_vector(const DiscreteGaborSystem& sys,
                                    double lambda, int steps,
                                    std::vector<VectorXcd>* iterates = nullptr) {
    const VectorXcd gamma_star = discrete_canonical_dual(sys);
    IterationTrace tr{SchulzVariant::schulz_vector, lambda, {}};
    VectorXcd gamma = lambda * sys.window;
    for (int k = 0; k <= steps; ++k) {
        tr.records.push_back({k, error_metric(gamma, gamma_star, sys), gamma.norm()});
        if (iterates) iterates->push_back(gamma);
        if (k == steps) break;
        // C_g gamma_k, then synthesis with window gamma_k
        gamma = 2.0 * gamma - idgt(dgt(gamma, sys), gamma, sys);
    }
    return tr;
}

/// Janssen's form gamma_{k+1} = 2 gamma_k - C*_{gamma_k} C_{gamma_k} g.
/// Identical to the vector form in exact arithmetic; in floating point the
/// error components outside the span of the adjoint-lattice system grow, so
/// the trace is expected to diverge after its minimum when M/a > 1.
inline IterationTrace schulz_janssen(const DiscreteGaborSystem& sys,
                                     double lambda, int steps,
                                     std::vector<VectorXcd>* iterates = nullptr) {
    const VectorXcd gamma_star = discrete_canonical_dual(sys);
    IterationTrace tr{SchulzVariant::schulz_janssen, lambda, {}};
    VectorXcd gamma = lambda * sys.window;
    for (int k = 0; k <= steps; ++k) {
        tr.records.push_back({k, error_metric(gamma, gamma_star, sys), gamma.norm()});
        if (iterates) iterates->push_back(gamma);
        if (k == steps) break;
        DiscreteGaborSystem gsys(sys.K, sys.a, sys.M, gamma);
        gamma = 2.0 * gamma - idgt(dgt(sys.window, gsys), gamma, gsys);
    }
    return tr;
}

}  // namespace gabordual

#endif
