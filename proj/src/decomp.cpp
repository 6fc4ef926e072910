#include "ginv/decomp.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace ginv {

namespace {

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    if (a.size() > 0) m.topLeftCorner(a.rows(), a.cols()) = a;
    if (b.size() > 0) m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

double smallest_singular_value(const Matrix& m) {
    Eigen::BDCSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1);
}

}  // namespace

int index(const Matrix& t, const ToleranceConfig& cfg) {
    if (t.rows() != t.cols()) throw NotSquare("index: matrix must be square");
    const int n = static_cast<int>(t.rows());
    const double tnorm = t.norm();
    int prev = n;  // rank(T^0)
    Matrix power = Matrix::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        const double prev_norm = power.norm();
        power = power * t;
        // Nilpotency cliff: a one-step collapse past rank_tol means the
        // product is numerically zero; snap it so rank() does not see noise.
        if (power.norm() <= cfg.rank_tol * tnorm * prev_norm) power.setZero();
        const int rk = rank(power, cfg);
        if (rk == prev) return k - 1;
        prev = rk;
    }
    return n;
}

CoreNilpotentDecomposition core_nilpotent(const Matrix& t, const ToleranceConfig& cfg) {
    if (t.rows() != t.cols()) throw NotSquare("core_nilpotent: matrix must be square");
    const Eigen::Index n = t.rows();

    CoreNilpotentDecomposition dec;
    dec.k = index(t, cfg);

    const Matrix tk = stabilized_power(t, dec.k, cfg);
    const Matrix range = range_basis(tk, cfg);
    const Matrix null = null_basis(tk, cfg);
    const Eigen::Index r = range.cols();
    const Eigen::Index s = null.cols();
    if (r + s != n) {
        throw NumericalBreakdown("core_nilpotent: rank and nullity of T^k do not add up");
    }

    dec.Q = Matrix(n, n);
    if (r > 0) dec.Q.leftCols(r) = range;
    if (s > 0) dec.Q.rightCols(s) = null;
    if (rank(dec.Q, cfg) != n) {
        throw NumericalBreakdown("core_nilpotent: R(T^k) and N(T^k) are numerically degenerate");
    }
    dec.Qinv = dec.Q.partialPivLu().inverse();

    const Matrix m = dec.Qinv * t * dec.Q;
    dec.T1 = m.topLeftCorner(r, r);
    dec.T2 = m.bottomRightCorner(s, s);
    // A nilpotent block of order <= 1 is the zero matrix exactly; dropping
    // the similarity-transform rounding keeps pseudoinverses of T2 from
    // amplifying noise singular values into huge spurious entries.
    if (dec.k <= 1) dec.T2.setZero();

    const double scale = std::max(1.0, t.norm());
    const Matrix recon = dec.Q * block_diag(dec.T1, dec.T2) * dec.Qinv;
    if ((recon - t).norm() > cfg.eq_tol * scale) {
        throw NumericalBreakdown("core_nilpotent: block reconstruction residual too large");
    }
    if (r > 0) {
        const double smin = smallest_singular_value(dec.T1);
        if (smin <= cfg.rank_tol * std::max(1.0, spectral_norm(dec.T1))) {
            throw NumericalBreakdown("core_nilpotent: core block is numerically singular");
        }
    }
    if (dec.k >= 1 && matrix_power(dec.T2, dec.k).norm() > cfg.eq_tol * scale) {
        throw NumericalBreakdown("core_nilpotent: nilpotent block fails T2^k = 0");
    }

    dec.P = dec.Q * block_diag(Matrix::Zero(r, r), Matrix::Identity(s, s)) * dec.Qinv;
    dec.core = dec.Q * block_diag(dec.T1, Matrix::Zero(s, s)) * dec.Qinv;
    dec.quasinilpotent_part = dec.Q * block_diag(Matrix::Zero(r, r), dec.T2) * dec.Qinv;
    return dec;
}

ClosedRangeDecomposition closed_range(const Matrix& t, const ToleranceConfig& cfg) {
    if (t.rows() != t.cols()) throw NotSquare("closed_range: matrix must be square");
    const Eigen::Index n = t.rows();
    const int r = rank(t, cfg);

    Eigen::ColPivHouseholderQR<Matrix> qr(t);
    Matrix q = Matrix::Identity(n, n);
    q.applyOnTheLeft(qr.householderQ());

    ClosedRangeDecomposition dec;
    dec.U = q.leftCols(r);
    dec.W = q.rightCols(n - r);  // N(T*) = R(T)^perp
    dec.A1 = dec.U.adjoint() * t * dec.U;
    dec.A2 = dec.U.adjoint() * t * dec.W;
    // Coordinate blocks are rank-decided relative to ||T||: a block whose
    // whole norm sits below that cutoff is mathematically zero (e.g. A1 for a
    // nilpotent T that kills its own range), and snapping it keeps
    // downstream rank and Drazin computations off the rounding noise.
    const double cutoff = cfg.rank_tol * t.norm();
    if (dec.A1.norm() <= cutoff) dec.A1.setZero();
    if (dec.A2.norm() <= cutoff) dec.A2.setZero();
    dec.D = dec.A1 * dec.A1.adjoint() + dec.A2 * dec.A2.adjoint();

    Matrix upper(r, n);
    if (r > 0) upper << dec.A1, dec.A2;
    Matrix recon = Matrix::Zero(n, n);
    if (r > 0) recon = q.leftCols(r) * upper * q.adjoint();
    if ((recon - t).norm() > cfg.eq_tol * std::max(1.0, t.norm())) {
        throw NumericalBreakdown("closed_range: block reconstruction residual too large");
    }
    return dec;
}

bool is_nilpotent(const Matrix& m, const ToleranceConfig& cfg) {
    if (m.rows() != m.cols()) throw NotSquare("is_nilpotent: matrix must be square");
    const Eigen::Index n = m.rows();
    if (n == 0) return true;
    Eigen::ComplexSchur<Matrix> schur(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success) {
        throw NumericalBreakdown("is_nilpotent: Schur iteration failed to converge");
    }
    const double bound = cfg.eig_tol * std::max(1.0, m.norm());
    bool eig_ok = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(schur.matrixT()(i, i)) > bound) {
            eig_ok = false;
            break;
        }
    }
    if (eig_ok) return true;
    // Computed eigenvalues of a rounded nilpotent matrix with a Jordan block of
    // order k scatter like eps^(1/k), far above any fixed cutoff, so a second
    // signal is needed: the n-th power of a nilpotent matrix vanishes, and its
    // rounding noise stays tiny relative to ||m||^n.
    Matrix power = m;
    for (Eigen::Index k = 1; k < n; ++k) power = power * m;
    return power.norm() <= cfg.eig_tol * std::max(1.0, std::pow(m.norm(), static_cast<double>(n)));
}

}  // namespace ginv
