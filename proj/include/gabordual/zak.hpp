#ifndef GABORDUAL_ZAK_HPP
#define GABORDUAL_ZAK_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "gabordual/windows.hpp"

namespace gabordual {

using cplx = std::complex<double>;

namespace detail {

// Estimate of the constant c in g(x) <= c e^{-(tau-eps)|x|} by a coarse
// sweep; the decay bound alone is existence-only.
inline double tp_decay_constant(const TpWindow& w, double rate) {
    double dmax = 0.0;
    for (double d : w.deltas()) dmax = std::max(dmax, std::abs(d));
    const double radius = 10.0 * w.order() * dmax + 10.0;
    double c = 0.0;
    const int steps = 400;
    for (int i = -steps; i <= steps; ++i) {
        const double x = radius * i / steps;
        c = std::max(c, w(x) * std::exp(rate * std::abs(x)));
    }
    return c;
}

}  // namespace detail

/// Zak transform Z_alpha g(x, omega) of a TP window, truncated where the
/// exponential decay bound puts the tail below tol.
inline cplx zak(const TpWindow& w, double alpha, double x, double omega,
                double tol = 1e-12) {
    if (!(alpha > 0.0)) throw std::invalid_argument("zak: alpha <= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("zak: tolerance <= 0");
    const double tau = w.decay_rate();
    const double rate = tau - tau / 10.0;
    const double c = detail::tp_decay_constant(w, rate);
    // tail over |j| >= R: 2 c e^{-rate alpha R} / (1 - e^{-rate alpha}) < tol
    const double denom = 1.0 - std::exp(-rate * alpha);
    long radius = 1;
    while (2.0 * c * std::exp(-rate * alpha * radius) / denom >= tol)
        ++radius;
    cplx sum = 0.0;
    const double phase = -2.0 * std::numbers::pi * alpha * omega;
    for (long j = -radius; j <= radius; ++j)
        sum += w(x + alpha * j) * std::polar(1.0, phase * j);
    return sum;
}

/// Zak transform of an EB-spline: exact finite sum over the support.
inline cplx zak(const EbWindow& w, double alpha, double x, double omega) {
    if (!(alpha > 0.0)) throw std::invalid_argument("zak: alpha <= 0");
    const double n = w.order();
    const long jlo = static_cast<long>(std::floor(-x / alpha)) - 1;
    const long jhi = static_cast<long>(std::ceil((n - x) / alpha)) + 1;
    cplx sum = 0.0;
    const double phase = -2.0 * std::numbers::pi * alpha * omega;
    for (long j = jlo; j <= jhi; ++j)
        sum += w(x + alpha * j) * std::polar(1.0, phase * j);
    return sum;
}

/// lambda / (e^lambda - 1), stable for large |lambda| and lambda -> 0.
inline double lambda_over_expm1(double lam) {
    if (lam == 0.0) return 1.0;
    if (lam > 0.0) return lam * std::exp(-lam) / (-std::expm1(-lam));
    return -lam / (-std::expm1(lam));
}

/// Z_K g_h(x, 0) through the associated EB-spline with weights
/// lambda_nu = -K h / delta_nu:
///   K Z_K g_h(x,0) = prod_nu lambda_nu/(e^{lambda_nu}-1) * Z_1 B(x/K, 0).
inline double zak_tp_via_ebspline(const TpWindow& w, double h, long big_k,
                                  double x) {
    if (!(h > 0.0)) throw std::invalid_argument("zak_tp_via_ebspline: h <= 0");
    if (big_k <= 0) throw std::invalid_argument("zak_tp_via_ebspline: K <= 0");
    std::vector<double> lams;
    lams.reserve(w.deltas().size());
    double prefactor = 1.0;
    for (double d : w.deltas()) {
        const double lam = -static_cast<double>(big_k) * h / d;
        lams.push_back(lam);
        prefactor *= lambda_over_expm1(lam);
    }
    EbWindow b(std::move(lams));
    const double t = x / static_cast<double>(big_k);
    double zb = 0.0;
    for (int j = 0; j < b.order(); ++j) zb += b(t + j);
    return prefactor * zb / static_cast<double>(big_k);
}

/// Z_K g_h(x, omega) as the divided difference of
///   r(y) = (-1)^{N-1} h (prod 1/delta_nu) e^{-hxy} / (1 - e^{-K(hy + 2 pi i omega)})
/// at the knots 1/delta_1,...,1/delta_N. Requires pairwise distinct weights;
/// repeated weights are reported with a pointer to zak_tp_via_ebspline.
inline cplx zak_tp_divdiff(const TpWindow& w, double h, long big_k, double x,
                           double omega) {
    if (!(h > 0.0)) throw std::invalid_argument("zak_tp_divdiff: h <= 0");
    if (big_k <= 0) throw std::invalid_argument("zak_tp_divdiff: K <= 0");
    const auto& deltas = w.deltas();
    const int n = static_cast<int>(deltas.size());
    for (int i = 0; i + 1 < n; ++i)
        if (deltas[i] == deltas[i + 1])
            throw std::invalid_argument(
                "zak_tp_divdiff: repeated weights; use zak_tp_via_ebspline");

    double prefactor = (n % 2 == 0) ? -h : h;
    std::vector<double> knots;
    knots.reserve(n);
    for (double d : deltas) {
        prefactor /= d;
        knots.push_back(1.0 / d);
    }
    // descending-magnitude knot order for the triangular recursion
    std::sort(knots.begin(), knots.end(),
              [](double a, double b) { return std::abs(a) > std::abs(b); });

    const double kd = static_cast<double>(big_k);
    auto r = [&](double y) -> cplx {
        const cplx denom =
            1.0 - std::exp(-cplx(kd * h * y, 2.0 * std::numbers::pi * kd * omega));
        if (std::abs(denom) < 1e-12)
            throw std::runtime_error("zak_tp_divdiff: pole near a knot");
        return prefactor * std::exp(-h * x * y) / denom;
    };

    std::vector<cplx> table(n);
    for (int i = 0; i < n; ++i) table[i] = r(knots[i]);
    for (int level = 1; level < n; ++level)
        for (int i = 0; i + level < n; ++i)
            table[i] = (table[i + 1] - table[i]) / (knots[i + level] - knots[i]);
    return table[0];
}

}  // namespace gabordual

#endif
