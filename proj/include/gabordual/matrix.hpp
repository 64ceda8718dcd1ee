#ifndef GABORDUAL_MATRIX_HPP
#define GABORDUAL_MATRIX_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <utility>

namespace gabordual {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Dense real matrix whose rows and columns carry logical index offsets.
/// Pre-Gramian sections are indexed by lattice positions (j, k) that are
/// usually negative at the top-left corner; the offsets keep that indexing
/// intact so "the row with index k = 0" is a lookup, not arithmetic at the
/// call site.
struct OffsetMatrix {
    MatrixXd m;
    long row0 = 0;  // logical index of row 0
    long col0 = 0;  // logical index of column 0

    long rows() const { return m.rows(); }
    long cols() const { return m.cols(); }
    long row_end() const { return row0 + m.rows() - 1; }
    long col_end() const { return col0 + m.cols() - 1; }

    double& at(long j, long k) { return m(j - row0, k - col0); }
    double at(long j, long k) const { return m(j - row0, k - col0); }
};

inline double default_rcond(long rows, long cols) {
    return 1e-12 * static_cast<double>(std::max(rows, cols));
}

/// Moore-Penrose pseudoinverse via full SVD. Singular values below
/// rcond * sigma_max are treated as zero.
template <class Mat>
Mat pinv(const Mat& a, double rcond) {
    if (a.rows() == 0 || a.cols() == 0)
        throw std::invalid_argument("pinv: empty matrix");
    if (!(rcond > 0.0 && rcond < 1.0))
        throw std::invalid_argument("pinv: rcond must be in (0,1)");
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double cutoff = rcond * s(0);
    Eigen::VectorXd sinv = s;
    for (long i = 0; i < s.size(); ++i)
        sinv(i) = s(i) > cutoff ? 1.0 / s(i) : 0.0;
    return svd.matrixV() * sinv.asDiagonal() * svd.matrixU().adjoint();
}

template <class Mat>
Mat pinv(const Mat& a) {
    return pinv(a, default_rcond(a.rows(), a.cols()));
}

/// Smallest and largest singular value.
template <class Mat>
std::pair<double, double> sigma_extremes(const Mat& a) {
    if (a.rows() == 0 || a.cols() == 0)
        throw std::invalid_argument("sigma_extremes: empty matrix");
    Eigen::JacobiSVD<Mat> svd(a);
    const auto& s = svd.singularValues();
    return {s(s.size() - 1), s(0)};
}

/// Solve A x = b for Hermitian positive definite A (Cholesky).
inline VectorXcd solve_spd(const MatrixXcd& a, const VectorXcd& b) {
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw std::invalid_argument("solve_spd: shape mismatch");
    Eigen::LLT<MatrixXcd> llt(a);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("solve_spd: matrix is not positive definite");
    return llt.solve(b);
}

inline VectorXd solve_spd(const MatrixXd& a, const VectorXd& b) {
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw std::invalid_argument("solve_spd: shape mismatch");
    Eigen::LLT<MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("solve_spd: matrix is not positive definite");
    return llt.solve(b);
}

}  // namespace gabordual

#endif
