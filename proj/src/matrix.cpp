#include "ginv/matrix.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace ginv {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatch(std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
    }
}

// Full unitary factor of the column-pivoted QR of m.
Matrix full_q(const Matrix& m) {
    Eigen::ColPivHouseholderQR<Matrix> qr(m);
    Matrix q = Matrix::Identity(m.rows(), m.rows());
    q.applyOnTheLeft(qr.householderQ());
    return q;
}

}  // namespace

void validate(const ToleranceConfig& cfg) {
    for (double v : {cfg.rank_tol, cfg.eq_tol, cfg.eig_tol}) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw InvalidSpec("tolerances must be strictly positive finite values");
        }
    }
}

int rank(const Matrix& m, const ToleranceConfig& cfg) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::BDCSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    const double cutoff = cfg.rank_tol * sv(0);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) ++r;
    }
    return r;
}

Matrix pinv(const Matrix& m, const ToleranceConfig& cfg) {
    if (m.rows() == 0 || m.cols() == 0) return Matrix::Zero(m.cols(), m.rows());
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = cfg.rank_tol * sv(0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

double rel_residual(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "rel_residual");
    const double scale = std::max({1.0, a.norm(), b.norm()});
    return (a - b).norm() / scale;
}

bool approx_eq(const Matrix& a, const Matrix& b, const ToleranceConfig& cfg) {
    return rel_residual(a, b) <= cfg.eq_tol;
}

double spectral_norm(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

Matrix range_basis(const Matrix& m, const ToleranceConfig& cfg) {
    const int r = rank(m, cfg);
    if (r == 0) return Matrix(m.rows(), 0);
    return full_q(m).leftCols(r);
}

Matrix null_basis(const Matrix& m, const ToleranceConfig& cfg) {
    const int r = rank(m, cfg);
    const Eigen::Index nullity = m.cols() - r;
    if (nullity == 0) return Matrix(m.cols(), 0);
    return full_q(m.adjoint()).rightCols(nullity);
}

Matrix orthoprojector(const Matrix& basis) {
    return basis * basis.adjoint();
}

double containment_residual(const Matrix& sub, const Matrix& space, const ToleranceConfig& cfg) {
    if (sub.rows() != space.rows()) {
        throw ShapeMismatch("containment_residual: row counts differ");
    }
    const Matrix proj = orthoprojector(range_basis(space, cfg));
    const double scale = std::max(1.0, sub.norm());
    return (sub - proj * sub).norm() / scale;
}

bool same_range(const Matrix& a, const Matrix& b, const ToleranceConfig& cfg) {
    if (a.rows() != b.rows()) throw ShapeMismatch("same_range: row counts differ");
    const Matrix pa = orthoprojector(range_basis(a, cfg));
    const Matrix pb = orthoprojector(range_basis(b, cfg));
    return approx_eq(pa, pb, cfg);
}

Matrix oblique_projector(const Matrix& range_cols, const Matrix& null_cols,
                         const ToleranceConfig& cfg) {
    if (range_cols.rows() != null_cols.rows()) {
        throw ShapeMismatch("oblique_projector: bases live in different spaces");
    }
    const Eigen::Index n = range_cols.rows();
    Matrix concat(n, range_cols.cols() + null_cols.cols());
    concat << range_cols, null_cols;
    const int rr = rank(range_cols, cfg);
    const int rn = rank(null_cols, cfg);
    if (rr + rn != n || rank(concat, cfg) != n) {
        throw NonComplementarySubspaces("oblique_projector: spans are not complementary");
    }
    Matrix rhs(n, concat.cols());
    rhs.setZero();
    rhs.leftCols(range_cols.cols()) = range_cols;
    // P [R N] = [R 0]; the concatenation has full row rank, so the
    // least-squares solution is exact.
    return rhs * pinv(concat, cfg);
}

Matrix matrix_power(const Matrix& t, int p) {
    if (t.rows() != t.cols()) throw NotSquare("matrix_power: matrix must be square");
    if (p < 0) throw InvalidExponent("matrix_power: exponent must be >= 0");
    Matrix acc = Matrix::Identity(t.rows(), t.cols());
    for (int i = 0; i < p; ++i) acc = acc * t;
    return acc;
}

Matrix stabilized_power(const Matrix& t, int p, const ToleranceConfig& cfg) {
    if (t.rows() != t.cols()) throw NotSquare("stabilized_power: matrix must be square");
    if (p < 0) throw InvalidExponent("stabilized_power: exponent must be >= 0");
    const double tnorm = t.norm();
    Matrix acc = Matrix::Identity(t.rows(), t.cols());
    for (int i = 0; i < p; ++i) {
        const double prev = acc.norm();
        acc = acc * t;
        if (acc.norm() <= cfg.rank_tol * tnorm * prev) {
            acc.setZero();
            break;  // zero is absorbing
        }
    }
    return acc;
}

}  // namespace ginv
