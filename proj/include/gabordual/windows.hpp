#ifndef GABORDUAL_WINDOWS_HPP
#define GABORDUAL_WINDOWS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace gabordual {

// ---------------------------------------------------------------------------
// Totally positive windows of finite type
// ---------------------------------------------------------------------------

/// Totally positive window of finite type, the N-fold convolution of
/// one-sided exponentials with weights delta_1,...,delta_N. Immutable after
/// construction; the weights are kept sorted so equal values are adjacent,
/// which lets the evaluation recurrence always split on a distinct pair.
class TpWindow {
public:
    explicit TpWindow(std::vector<double> deltas) : deltas_(std::move(deltas)) {
        if (deltas_.empty())
            throw std::invalid_argument("TpWindow: needs at least one weight");
        for (double d : deltas_)
            if (d == 0.0)
                throw std::invalid_argument("TpWindow: zero weight");
        std::sort(deltas_.begin(), deltas_.end());
    }

    const std::vector<double>& deltas() const { return deltas_; }
    int order() const { return static_cast<int>(deltas_.size()); }
    int positive_count() const {
        return static_cast<int>(std::count_if(deltas_.begin(), deltas_.end(),
                                              [](double d) { return d > 0.0; }));
    }
    int negative_count() const { return order() - positive_count(); }

    double operator()(double x) const { return eval(0, order() - 1, x); }

    /// Weights divided by h; satisfies h * g(h x) = g_scaled(x).
    TpWindow dilate(double h) const {
        if (!(h > 0.0)) throw std::invalid_argument("TpWindow::dilate: h <= 0");
        std::vector<double> d = deltas_;
        for (double& v : d) v /= h;
        return TpWindow(std::move(d));
    }

    /// Decay rate tau = 1 / (2 pi max |delta|); g(x) <= c e^{-(tau-eps)|x|}.
    double decay_rate() const {
        double dmax = 0.0;
        for (double d : deltas_) dmax = std::max(dmax, std::abs(d));
        return 1.0 / (2.0 * std::numbers::pi * dmax);
    }

private:
    // One-sided exponential with the jump-point convention g(0) = 1/(2|d|).
    static double eval_one(double d, double x) {
        if (x == 0.0) return 1.0 / (2.0 * std::abs(d));
        if (d * x > 0.0) return std::exp(-x / d) / std::abs(d);
        return 0.0;
    }

    // g for the sorted weight range [lo, hi].
    double eval(int lo, int hi, double x) const {
        const int n = hi - lo + 1;
        if (n == 1) return eval_one(deltas_[lo], x);
        const double d1 = deltas_[lo], dn = deltas_[hi];
        if (d1 == dn) {
            // equal weights: |x|^{N-1} / (|d|^N (N-1)!) e^{-x/d} on d*x > 0
            if (x == 0.0 || d1 * x < 0.0) return 0.0;
            double lg = (n - 1) * std::log(std::abs(x)) - n * std::log(std::abs(d1)) -
                        std::lgamma(static_cast<double>(n)) - x / d1;
            return std::exp(lg);
        }
        const double a = 1.0 / d1, b = 1.0 / dn;
        return (a * eval(lo + 1, hi, x) - b * eval(lo, hi - 1, x)) / (a - b);
    }

    std::vector<double> deltas_;
};

// ---------------------------------------------------------------------------
// Exponential B-splines
// ---------------------------------------------------------------------------

/// Cardinal polynomial B-spline N_m with knots 0..m (Cox-de Boor recursion).
inline double poly_bspline_eval(int m, double x) {
    if (m < 1) throw std::invalid_argument("poly_bspline_eval: order < 1");
    // support [0, m), closed at the left endpoint: N_1 = chi_[0,1)
    if (x < 0.0 || x >= static_cast<double>(m)) return 0.0;
    std::vector<double> n(m);
    for (int j = 0; j < m; ++j)
        n[j] = (j <= x && x < j + 1) ? 1.0 : 0.0;
    for (int k = 2; k <= m; ++k)
        for (int j = 0; j + k <= m; ++j)
            n[j] = ((x - j) * n[j] + (j + k - x) * n[j + 1]) / (k - 1);
    return n[0];
}

/// Exponential B-spline with weights lambda_1,...,lambda_N and knots 0..N,
/// supported on [0, N]. Evaluation dispatches on the weight pattern:
///   - one weight value (any multiplicity): e^{lambda x} N_m(x)
///   - pairwise distinct weights: closed form with exponential coefficients
///   - mixed multiplicities: four-term recurrence on the sorted weights
class EbWindow {
public:
    explicit EbWindow(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
        if (lambdas_.empty())
            throw std::invalid_argument("EbWindow: needs at least one weight");
        std::sort(lambdas_.begin(), lambdas_.end());
    }

    const std::vector<double>& lambdas() const { return lambdas_; }
    int order() const { return static_cast<int>(lambdas_.size()); }

    double operator()(double x) const { return eval(0, order() - 1, x); }

private:
    double eval(int lo, int hi, double x) const {
        const int n = hi - lo + 1;
        if (x < 0.0 || x >= static_cast<double>(n)) return 0.0;
        const double l1 = lambdas_[lo], ln = lambdas_[hi];
        if (l1 == ln)
            return std::exp(l1 * x) * poly_bspline_eval(n, x);
        bool distinct = true;
        for (int i = lo; i < hi; ++i)
            if (lambdas_[i] == lambdas_[i + 1]) { distinct = false; break; }
        if (distinct && n >= 2)
            return eval_distinct(lo, hi, x);
        return (eval(lo, hi - 1, x) - eval(lo + 1, hi, x) +
                std::exp(l1) * eval(lo + 1, hi, x - 1.0) -
                std::exp(ln) * eval(lo, hi - 1, x - 1.0)) /
               (l1 - ln);
    }

    // Closed form for pairwise distinct weights: on the cell [k-1, k),
    // B(x) = sum_j alpha_j^{(k)} e^{lambda_j (x-k+1)}. Terms are accumulated
    // in log magnitude so large weights (|lambda| > 200 arises from fine
    // discretizations) do not overflow before cancellation.
    double eval_distinct(int lo, int hi, double x) const {
        const int m = hi - lo + 1;
        const int cell = static_cast<int>(std::floor(x));  // 0-based, 0..m-1
        const double t = x - cell;
        double total = 0.0;
        for (int j = 0; j < m; ++j) {
            const double lj = lambdas_[lo + j];
            double logden = 0.0;
            double sgnden = 1.0;
            for (int r = 0; r < m; ++r) {
                if (r == j) continue;
                const double d = lj - lambdas_[lo + r];
                logden += std::log(std::abs(d));
                if (d < 0.0) sgnden = -sgnden;
            }
            double lognum, sgnnum;
            if (cell == 0) {
                lognum = 0.0;
                sgnnum = 1.0;
            } else {
                // log of sum over (cell)-subsets of the other weights of
                // e^{sum lambda}, with sign (-1)^{cell}
                lognum = log_subset_expsum(lo, hi, j, cell);
                sgnnum = (cell % 2 == 0) ? 1.0 : -1.0;
            }
            total += sgnnum * sgnden * std::exp(lognum - logden + lj * t);
        }
        return total;
    }

    // log( sum over size-r subsets of weights in [lo,hi]\{lo+skip} of
    // e^{sum of subset} ), via log-sum-exp.
    double log_subset_expsum(int lo, int hi, int skip, int r) const {
        std::vector<double> others;
        for (int i = lo; i <= hi; ++i)
            if (i - lo != skip) others.push_back(lambdas_[i]);
        std::vector<double> sums;
        std::vector<int> pick(r);
        enumerate_subsets(others, 0, r, 0.0, sums);
        double mx = *std::max_element(sums.begin(), sums.end());
        double acc = 0.0;
        for (double s : sums) acc += std::exp(s - mx);
        return mx + std::log(acc);
    }

    static void enumerate_subsets(const std::vector<double>& v, std::size_t start,
                                  int remaining, double acc,
                                  std::vector<double>& out) {
        if (remaining == 0) {
            out.push_back(acc);
            return;
        }
        for (std::size_t i = start; i + remaining <= v.size() + 0u && i < v.size(); ++i)
            enumerate_subsets(v, i + 1, remaining - 1, acc + v[i], out);
    }

    std::vector<double> lambdas_;
};

}  // namespace gabordual

#endif
