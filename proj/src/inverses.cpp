#include "ginv/inverses.hpp"

#include <algorithm>

#include <Eigen/LU>

namespace ginv {

namespace {

double inner_residual(const Matrix& t, const Matrix& x) {
    return (t * x * t - t).norm() / std::max(1.0, t.norm());
}

void require_inner(const Matrix& t, const InnerInverse& tm, const ToleranceConfig& cfg,
                   const char* who) {
    if (tm.value.rows() != t.cols() || tm.value.cols() != t.rows()) {
        throw ShapeMismatch(std::string(who) + ": inner inverse has the wrong shape");
    }
    if (inner_residual(t, tm.value) > cfg.eq_tol) {
        throw InvalidInnerInverse(std::string(who) + ": ||T X T - T|| exceeds eq_tol");
    }
}

Matrix reconstruct(const CoreNilpotentDecomposition& dec) {
    const Eigen::Index r = dec.T1.rows();
    const Eigen::Index s = dec.T2.rows();
    Matrix m = Matrix::Zero(r + s, r + s);
    if (r > 0) m.topLeftCorner(r, r) = dec.T1;
    if (s > 0) m.bottomRightCorner(s, s) = dec.T2;
    return dec.Q * m * dec.Qinv;
}

Matrix invert_core(const Matrix& t1) {
    if (t1.rows() == 0) return Matrix(0, 0);
    return t1.partialPivLu().inverse();
}

}  // namespace

const char* provenance_name(const InnerProvenance& p) {
    if (std::holds_alternative<PseudoinverseTag>(p)) return "pseudoinverse";
    if (std::holds_alternative<FreeParameter>(p)) return "free_parameter";
    return "block";
}

Matrix drazin(const CoreNilpotentDecomposition& dec) {
    const Eigen::Index r = dec.T1.rows();
    const Eigen::Index s = dec.T2.rows();
    Matrix m = Matrix::Zero(r + s, r + s);
    if (r > 0) m.topLeftCorner(r, r) = invert_core(dec.T1);
    return dec.Q * m * dec.Qinv;
}

Matrix drazin(const Matrix& t, const ToleranceConfig& cfg) {
    return drazin(core_nilpotent(t, cfg));
}

Matrix drazin_oracle(const Matrix& t, const ToleranceConfig& cfg) {
    if (t.rows() != t.cols()) throw NotSquare("drazin_oracle: matrix must be square");
    const int n = static_cast<int>(t.rows());
    const Matrix tn = stabilized_power(t, n, cfg);
    return tn * pinv(stabilized_power(t, 2 * n + 1, cfg), cfg) * tn;
}

InnerInverse inner_from_pinv(const Matrix& t, const ToleranceConfig& cfg) {
    InnerInverse inner;
    inner.value = pinv(t, cfg);
    inner.provenance = PseudoinverseTag{};
    inner.residual = inner_residual(t, inner.value);
    return inner;
}

InnerInverse inner_sample(const Matrix& t, const Matrix& v, const ToleranceConfig& cfg) {
    if (v.rows() != t.cols() || v.cols() != t.rows()) {
        throw ShapeMismatch("inner_sample: V must have shape cols(T) x rows(T)");
    }
    const Matrix tp = pinv(t, cfg);
    InnerInverse inner;
    inner.value = tp + v - tp * t * v * t * tp;
    inner.provenance = FreeParameter{v};
    inner.residual = inner_residual(t, inner.value);
    return inner;
}

InnerInverse inner_block(const CoreNilpotentDecomposition& dec, const Matrix& y, const Matrix& z,
                         const Matrix& t2_inner, const ToleranceConfig& cfg) {
    const Eigen::Index r = dec.T1.rows();
    const Eigen::Index s = dec.T2.rows();
    if (y.rows() != r || y.cols() != s) throw ShapeMismatch("inner_block: Y must be r x s");
    if (z.rows() != s || z.cols() != r) throw ShapeMismatch("inner_block: Z must be s x r");
    if (t2_inner.rows() != s || t2_inner.cols() != s) {
        throw ShapeMismatch("inner_block: T2_inner must be s x s");
    }

    const double scale_y = std::max(1.0, y.norm());
    const double scale_z = std::max(1.0, z.norm());
    if ((y * dec.T2).norm() > cfg.eq_tol * scale_y) {
        throw ConstraintViolated("inner_block: R(T2) must lie in N(Y), i.e. Y T2 = 0");
    }
    if ((dec.T2 * z).norm() > cfg.eq_tol * scale_z) {
        throw ConstraintViolated("inner_block: R(Z) must lie in N(T2), i.e. T2 Z = 0");
    }
    if ((dec.T2 * t2_inner * dec.T2 - dec.T2).norm() > cfg.eq_tol * std::max(1.0, dec.T2.norm())) {
        throw ConstraintViolated("inner_block: T2_inner must satisfy T2 T2_inner T2 = T2");
    }

    Matrix blocks = Matrix::Zero(r + s, r + s);
    if (r > 0) blocks.topLeftCorner(r, r) = invert_core(dec.T1);
    if (r > 0 && s > 0) {
        blocks.topRightCorner(r, s) = y;
        blocks.bottomLeftCorner(s, r) = z;
    }
    if (s > 0) blocks.bottomRightCorner(s, s) = t2_inner;

    InnerInverse inner;
    inner.value = dec.Q * blocks * dec.Qinv;
    inner.provenance = BlockParameters{y, z, t2_inner};
    inner.residual = inner_residual(reconstruct(dec), inner.value);
    return inner;
}

BlockParameters inner_block_params(const CoreNilpotentDecomposition& dec, const Matrix& inner) {
    const Eigen::Index r = dec.T1.rows();
    const Eigen::Index s = dec.T2.rows();
    if (inner.rows() != r + s || inner.cols() != r + s) {
        throw ShapeMismatch("inner_block_params: inner inverse has the wrong shape");
    }
    const Matrix m = dec.Qinv * inner * dec.Q;
    BlockParameters p;
    p.Y = m.topRightCorner(r, s);
    p.Z = m.bottomLeftCorner(s, r);
    p.T2_inner = m.bottomRightCorner(s, s);
    return p;
}

Matrix gd1(const Matrix& t, const InnerInverse& tm, const ToleranceConfig& cfg) {
    require_inner(t, tm, cfg, "gd1");
    return drazin(t, cfg) * t * tm.value;
}

Matrix onegd(const Matrix& t, const InnerInverse& tm, const ToleranceConfig& cfg) {
    require_inner(t, tm, cfg, "onegd");
    return tm.value * t * drazin(t, cfg);
}

Matrix gd1_power(const Matrix& t, const InnerInverse& tm, int m, const ToleranceConfig& cfg) {
    if (m < 2) throw InvalidExponent("gd1_power: exponent must be >= 2");
    require_inner(t, tm, cfg, "gd1_power");
    return matrix_power(drazin(t, cfg), m - 1) * tm.value;
}

Matrix cline(const Matrix& s, const Matrix& t, const ToleranceConfig& cfg) {
    if (s.rows() != t.cols() || s.cols() != t.rows()) {
        throw ShapeMismatch("cline: need S m x n and T n x m");
    }
    const Matrix ts_d = drazin(t * s, cfg);
    return s * ts_d * ts_d * t;
}

Matrix t2tm_drazin(const Matrix& t, const InnerInverse& tm, const ToleranceConfig& cfg) {
    require_inner(t, tm, cfg, "t2tm_drazin");
    Matrix prod = t * (t * tm.value);
    // Collapse guard, same convention as stabilized_power: for a nilpotent T
    // of order <= 2 the product T^2 X is mathematically zero, and its
    // rounding residue must not reach the rank decisions inside drazin().
    if (prod.norm() <= cfg.rank_tol * t.norm() * t.norm() * tm.value.norm()) prod.setZero();
    return drazin(prod, cfg);
}

GD1Result gd1_result(const Matrix& t, const InnerInverse& tm, const ToleranceConfig& cfg) {
    require_inner(t, tm, cfg, "gd1_result");
    GD1Result res;
    res.drazin = drazin(t, cfg);
    res.inner = tm;
    res.gd1 = res.drazin * t * tm.value;
    res.onegd = tm.value * t * res.drazin;
    return res;
}

}  // namespace ginv
