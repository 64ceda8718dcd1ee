#ifndef GABORDUAL_DUAL_HPP
#define GABORDUAL_DUAL_HPP

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "gabordual/matrix.hpp"
#include "gabordual/windows.hpp"

namespace gabordual {

/// Violations of the frame regime (alpha*beta >= 1, rank-deficient
/// sections). Distinct from invalid_argument so front ends can map them to a
/// dedicated exit code.
struct regime_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Lattice {
    double alpha;
    double beta;

    Lattice(double a, double b) : alpha(a), beta(b) {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw std::invalid_argument("Lattice: parameters must be positive");
    }
    double density() const { return alpha * beta; }
};

/// floor/ceil with a snap to the nearest integer. The index formulas divide
/// by alpha*beta, which is rational in every configuration of interest; the
/// exact value is then an integer hit only up to roundoff, and strict
/// floor/ceil semantics would be off by one.
inline long floor_snapped(double u, double tol = 1e-9) {
    const double r = std::round(u);
    if (std::abs(u - r) < tol) return static_cast<long>(r);
    return static_cast<long>(std::floor(u));
}

inline long ceil_snapped(double u, double tol = 1e-9) {
    const double r = std::round(u);
    if (std::abs(u - r) < tol) return static_cast<long>(r);
    return static_cast<long>(std::ceil(u));
}

/// Row/column index window of a finite pre-Gramian section.
struct SectionIndices {
    int L = 0;
    long k1 = 0, k2 = 0;  // column range, k1 <= 0 <= k2
    long i1 = 0, i2 = 0;  // row range

    long row_count() const { return i2 - i1 + 1; }
    long col_count() const { return k2 - k1 + 1; }
};

inline SectionIndices tp_section_indices(const TpWindow& w, const Lattice& lat,
                                         int L, double x) {
    if (L < 0) throw std::invalid_argument("tp_section_indices: L < 0");
    const double ab = lat.density();
    if (!(ab < 1.0))
        throw regime_error("tp_section_indices: alpha*beta >= 1");
    const int m = w.positive_count();
    const int n = w.negative_count();
    const long r = floor_snapped(1.0 / (1.0 - ab));
    const long k1 = -(r + 1) * m;
    const long k2 = (r + 1) * n;
    SectionIndices idx;
    idx.L = L;
    idx.k1 = k1 - L;
    idx.k2 = k2 + L;
    idx.i1 = floor_snapped((k1 - L + m - 1) / ab - x / lat.alpha) + 1;
    idx.i2 = ceil_snapped((k2 + L - n + 1) / ab - x / lat.alpha) - 1;
    return idx;
}

/// Column range from Algorithm-4 step 1; the row range solves the four
/// support conditions of step 2 in closed form using that an EB-spline is
/// nonzero exactly on (0, N).
inline SectionIndices eb_section_indices(const EbWindow& w, const Lattice& lat,
                                         int L, double x) {
    if (L < 0) throw std::invalid_argument("eb_section_indices: L < 0");
    const double ab = lat.density();
    if (!(ab < 1.0))
        throw regime_error("eb_section_indices: alpha*beta >= 1");
    const double n = w.order();
    if (!(x >= (n - lat.alpha) / 2.0 && x < (n + lat.alpha) / 2.0))
        throw std::invalid_argument("eb_section_indices: x out of range");
    SectionIndices idx;
    idx.L = L;
    idx.k2 = floor_snapped((n * lat.beta + ab) / (2.0 * (1.0 - ab))) + 1 + L;
    idx.k1 = -idx.k2;
    const double c1 = (idx.k1 - 1) / lat.beta;
    const double c2 = (idx.k2 + 1) / lat.beta;
    idx.i1 = ceil_snapped((n + c1 - x) / lat.alpha);
    idx.i2 = floor_snapped((c2 - x) / lat.alpha);
    return idx;
}

/// Pre-Gramian section P_L(x) with entries g(x + alpha j - k/beta),
/// logical rows i1..i2 and columns k1..k2 kept in the offsets.
template <class Window>
OffsetMatrix build_section(const Window& w, const Lattice& lat, double x,
                           const SectionIndices& idx) {
    OffsetMatrix p;
    p.m.resize(idx.row_count(), idx.col_count());
    p.row0 = idx.i1;
    p.col0 = idx.k1;
    for (long j = idx.i1; j <= idx.i2; ++j)
        for (long k = idx.k1; k <= idx.k2; ++k)
            p.at(j, k) = w(x + lat.alpha * j - k / lat.beta);
    return p;
}

/// Values gamma_L(x + alpha j), i1 <= j <= i2, of the compactly supported
/// dual on one coarse-grid slice.
struct SampledDual {
    double x = 0.0;
    long i1 = 0, i2 = 0;
    std::vector<double> values;  // beta * row k=0 of the section pseudoinverse
    int L = 0;
    Lattice lattice{1.0, 0.5};

    double value(long j) const {
        if (j < i1 || j > i2) return 0.0;
        return values[static_cast<std::size_t>(j - i1)];
    }
};

template <class Window>
SectionIndices section_indices(const Window& w, const Lattice& lat, int L,
                               double x);

template <>
inline SectionIndices section_indices<TpWindow>(const TpWindow& w,
                                                const Lattice& lat, int L,
                                                double x) {
    return tp_section_indices(w, lat, L, x);
}

template <>
inline SectionIndices section_indices<EbWindow>(const EbWindow& w,
                                                const Lattice& lat, int L,
                                                double x) {
    return eb_section_indices(w, lat, L, x);
}

template <class Window>
SampledDual dual_slice(const Window& w, const Lattice& lat, double x, int L) {
    const SectionIndices idx = section_indices(w, lat, L, x);
    if (idx.row_count() < idx.col_count())
        throw std::runtime_error("dual_slice: section is not tall");
    const OffsetMatrix p = build_section(w, lat, x, idx);
    const double rcond = 1e-13 * std::max(p.rows(), p.cols());
    const MatrixXd q = pinv(p.m, rcond);
    // Far-out columns may be nearly proportional (their peaks fall outside
    // the kept rows and only the dominant exponential tail survives); the
    // truncated pseudoinverse discards those directions harmlessly.  What
    // must be resolvable is the k = 0 coordinate itself, so require
    // (P^+ P) e_{k0} = e_{k0} rather than a full-rank section.
    const long k0col = -idx.k1;
    Eigen::VectorXd resolved = q * p.m.col(k0col);
    resolved(k0col) -= 1.0;
    if (resolved.norm() > 1e-3)
        throw regime_error(
            "dual_slice: section cannot resolve the k=0 coordinate; "
            "frame-regime violation or L too small");
    SampledDual d;
    d.x = x;
    d.i1 = idx.i1;
    d.i2 = idx.i2;
    d.L = L;
    d.lattice = lat;
    d.values.resize(static_cast<std::size_t>(idx.row_count()));
    const long row_of_k0 = -idx.k1;  // pinv rows carry the column indexing of P
    for (long j = 0; j < idx.row_count(); ++j)
        d.values[static_cast<std::size_t>(j)] = lat.beta * q(row_of_k0, j);
    return d;
}

/// Uniform samples gamma_L(q alpha/a), q in Z, assembled from a slices.
struct DualSampleSet {
    Lattice lattice{1.0, 0.5};
    int L = 0;
    int a = 1;     // samples per alpha-step
    long q0 = 0;   // first nonzero sample index
    std::vector<double> values;

    long q_end() const { return q0 + static_cast<long>(values.size()) - 1; }
    double value(long q) const {
        if (q < q0 || q > q_end()) return 0.0;
        return values[static_cast<std::size_t>(q - q0)];
    }
    double step() const { return lattice.alpha / a; }

    double l2_norm_scaled() const {
        double s = 0.0;
        for (double v : values) s += v * v;
        return std::sqrt(s * step());
    }
};

/// For EB windows Algorithm 4 restricts the slice offset to an interval of
/// length alpha around N/2; the slice for x_p = p alpha / a is taken at a
/// shifted representative and reindexed.
template <class Window>
long slice_shift(const Window& w, const Lattice& lat, double x);

template <>
inline long slice_shift<TpWindow>(const TpWindow&, const Lattice&, double) {
    return 0;
}

template <>
inline long slice_shift<EbWindow>(const EbWindow& w, const Lattice& lat,
                                  double x) {
    const double lo = (w.order() - lat.alpha) / 2.0;
    return ceil_snapped((lo - x) / lat.alpha);
}

template <class Window>
DualSampleSet dual_sampled(const Window& w, const Lattice& lat, int L, int a) {
    if (a < 1) throw std::invalid_argument("dual_sampled: a < 1");
    std::map<long, double> samples;
    for (int p = 0; p < a; ++p) {
        const double xp = p * lat.alpha / a;
        const long s = slice_shift(w, lat, xp);
        const SampledDual slice = dual_slice(w, lat, xp + s * lat.alpha, L);
        for (long j = slice.i1; j <= slice.i2; ++j)
            samples[p + static_cast<long>(a) * (j + s)] = slice.value(j);
    }
    DualSampleSet set;
    set.lattice = lat;
    set.L = L;
    set.a = a;
    set.q0 = samples.begin()->first;
    const long qend = samples.rbegin()->first;
    set.values.assign(static_cast<std::size_t>(qend - set.q0 + 1), 0.0);
    for (const auto& [q, v] : samples)
        set.values[static_cast<std::size_t>(q - set.q0)] = v;
    return set;
}

/// Wexler-Raz residual
///   max_{x, |k| <= kmax} | sum_j gamma(x+j alpha) g(x+j alpha - k/beta) - beta delta_{0,k} |
/// over the a slice offsets of the sample set. The j-sum is finite because
/// the dual has compact support.
template <class Window>
double wexler_raz_residual(const Window& g, const DualSampleSet& dual,
                           long kmax) {
    const Lattice& lat = dual.lattice;
    double worst = 0.0;
    for (int p = 0; p < dual.a; ++p) {
        const double x = p * lat.alpha / dual.a;
        // nonzero sample indices congruent to p mod a
        long jlo = floor_snapped(static_cast<double>(dual.q0 - p) / dual.a) - 1;
        long jhi = ceil_snapped(static_cast<double>(dual.q_end() - p) / dual.a) + 1;
        for (long k = -kmax; k <= kmax; ++k) {
            double s = 0.0;
            for (long j = jlo; j <= jhi; ++j) {
                const double gv = dual.value(p + static_cast<long>(dual.a) * j);
                if (gv == 0.0) continue;
                s += gv * g(x + j * lat.alpha - k / lat.beta);
            }
            const double target = (k == 0) ? lat.beta : 0.0;
            worst = std::max(worst, std::abs(s - target));
        }
    }
    return worst;
}

/// A_est = min over the x-grid of sigma_min(P_L(x)), B_est = max of
/// sigma_max; probes the L-independent bounds on the sections.
template <class Window>
std::pair<double, double> frame_bounds(const Window& w, const Lattice& lat,
                                       int L, int x_count = 32) {
    if (x_count < 1) throw std::invalid_argument("frame_bounds: x_count < 1");
    double a_est = std::numeric_limits<double>::infinity();
    double b_est = 0.0;
    for (int i = 0; i < x_count; ++i) {
        const double xp = lat.alpha * i / x_count;
        const double x = xp + slice_shift(w, lat, xp) * lat.alpha;
        const SectionIndices idx = section_indices(w, lat, L, x);
        const OffsetMatrix p = build_section(w, lat, x, idx);
        auto [smin, smax] = sigma_extremes(p.m);
        a_est = std::min(a_est, smin);
        b_est = std::max(b_est, smax);
    }
    return {a_est, b_est};
}

/// Canonical-dual surrogate: gamma_{L_ref} with L_ref large; the surrogate
/// error is O(e^{-rho L_ref}).
template <class Window>
DualSampleSet canonical_dual_ref(const Window& w, const Lattice& lat,
                                 int L_ref, int a) {
    return dual_sampled(w, lat, L_ref, a);
}

struct ConvergencePoint {
    int L;
    double err;  // sqrt(alpha/a)-weighted l2 distance to the reference
};

struct ConvergenceStudy {
    std::vector<ConvergencePoint> points;
    double slope = 0.0;      // least-squares slope of log err vs L
    double r_squared = 0.0;  // fit quality
};

inline void fit_log_linear(ConvergenceStudy& study) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
    for (const auto& p : study.points) {
        if (!(p.err > 0.0)) continue;
        const double y = std::log(p.err);
        sx += p.L; sy += y; sxx += static_cast<double>(p.L) * p.L;
        sxy += p.L * y; n += 1;
    }
    if (n < 2) return;
    study.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - study.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (const auto& p : study.points) {
        if (!(p.err > 0.0)) continue;
        const double y = std::log(p.err);
        const double fit = study.slope * p.L + intercept;
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - ybar) * (y - ybar);
    }
    study.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
}

inline double sample_set_distance(const DualSampleSet& a,
                                  const DualSampleSet& b) {
    const long lo = std::min(a.q0, b.q0);
    const long hi = std::max(a.q_end(), b.q_end());
    double s = 0.0;
    for (long q = lo; q <= hi; ++q) {
        const double d = a.value(q) - b.value(q);
        s += d * d;
    }
    return std::sqrt(s * a.step());
}

template <class Window>
ConvergenceStudy dual_convergence(const Window& w, const Lattice& lat,
                                  const std::vector<int>& l_list, int a,
                                  int l_ref = -1) {
    int l_max = 0;
    for (int l : l_list) l_max = std::max(l_max, l);
    if (l_ref < 0) l_ref = std::max(3 * l_max, l_max + 10);
    if (l_ref < l_max + 2)
        throw std::invalid_argument("dual_convergence: reference L too small");
    const DualSampleSet ref = dual_sampled(w, lat, l_ref, a);
    ConvergenceStudy study;
    for (int l : l_list) {
        const DualSampleSet gl = dual_sampled(w, lat, l, a);
        study.points.push_back({l, sample_set_distance(gl, ref)});
    }
    fit_log_linear(study);
    return study;
}

}  // namespace gabordual

#endif
