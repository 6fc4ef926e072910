#pragma once

#include <variant>

#include "ginv/decomp.hpp"
#include "ginv/matrix.hpp"

namespace ginv {

/// How an inner inverse was produced.
struct PseudoinverseTag {};
struct FreeParameter {
    Matrix V;  // X = T^+ + V - T^+ T V T T^+
};
struct BlockParameters {
    Matrix Y;         // top-right block, Y T2 = 0
    Matrix Z;         // bottom-left block, T2 Z = 0
    Matrix T2_inner;  // inner inverse of the nilpotent block
};
using InnerProvenance = std::variant<PseudoinverseTag, FreeParameter, BlockParameters>;

/// A solution X of T X T = T together with how it was built and the relative
/// residual ||T X T - T|| / max(1, ||T||) it achieved.
struct InnerInverse {
    Matrix value;
    InnerProvenance provenance;
    double residual = 0.0;
};

const char* provenance_name(const InnerProvenance& p);

/// Drazin inverse through the core-nilpotent decomposition:
/// T^d = Q diag(T1^-1, 0) Q^-1.
Matrix drazin(const Matrix& t, const ToleranceConfig& cfg = {});
Matrix drazin(const CoreNilpotentDecomposition& dec);

/// Independent cross-check: T^d = T^n (T^(2n+1))^+ T^n with n = dimension.
/// Avoids the similarity transform entirely; intended for tests.
Matrix drazin_oracle(const Matrix& t, const ToleranceConfig& cfg = {});

/// The pseudoinverse packaged as an inner inverse.
InnerInverse inner_from_pinv(const Matrix& t, const ToleranceConfig& cfg = {});

/// Full parameterization of T{1}: X = T^+ + V - T^+ T V T T^+. Every inner
/// inverse arises from some V (take V = X itself).
InnerInverse inner_sample(const Matrix& t, const Matrix& v, const ToleranceConfig& cfg = {});

/// Structured inner inverse Q [[T1^-1, Y], [Z, T2_inner]] Q^-1. The side
/// conditions Y T2 = 0, T2 Z = 0 and T2 T2_inner T2 = T2 are validated to
/// eq_tol; violations raise ConstraintViolated naming the failed condition.
InnerInverse inner_block(const CoreNilpotentDecomposition& dec, const Matrix& y, const Matrix& z,
                         const Matrix& t2_inner, const ToleranceConfig& cfg = {});

/// Blocks of an inner inverse in the coordinates of dec:
/// Q^-1 X Q = [[T1^-1, Y], [Z, T2_inner]].
BlockParameters inner_block_params(const CoreNilpotentDecomposition& dec, const Matrix& inner);

/// GD1 inverse T^d T T^-; equals Q [[T1^-1, Y], [0, 0]] Q^-1.
Matrix gd1(const Matrix& t, const InnerInverse& tm, const ToleranceConfig& cfg = {});

/// 1GD inverse T^- T T^d; equals Q [[T1^-1, 0], [Z, 0]] Q^-1.
Matrix onegd(const Matrix& t, const InnerInverse& tm, const ToleranceConfig& cfg = {});

/// (T^(GD-))^m = (T^d)^(m-1) T^- for m >= 2 (InvalidExponent otherwise).
Matrix gd1_power(const Matrix& t, const InnerInverse& tm, int m, const ToleranceConfig& cfg = {});

/// (s t)^d computed as s ((t s)^d)^2 t. s is m x n, t is n x m.
Matrix cline(const Matrix& s, const Matrix& t, const ToleranceConfig& cfg = {});

/// Drazin inverse of T^2 T^-; coincides with the GD1 inverse.
Matrix t2tm_drazin(const Matrix& t, const InnerInverse& tm, const ToleranceConfig& cfg = {});

/// Convenience bundle of the four inverses attached to one (T, T^-) pair.
struct GD1Result {
    Matrix drazin;
    InnerInverse inner;
    Matrix gd1;
    Matrix onegd;
};
GD1Result gd1_result(const Matrix& t, const InnerInverse& tm, const ToleranceConfig& cfg = {});

}  // namespace ginv
