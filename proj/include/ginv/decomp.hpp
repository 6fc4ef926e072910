#pragma once

#include "ginv/matrix.hpp"

namespace ginv {

/// Similarity T = Q diag(T1, T2) Q^-1 splitting the space into R(T^k) (where
/// T restricts to the invertible T1) and N(T^k) (where it restricts to the
/// nilpotent T2), k being the index of T. Either block may be 0x0.
struct CoreNilpotentDecomposition {
    Matrix Q;      // columns: orthonormal basis of R(T^k), then of N(T^k)
    Matrix Qinv;   // cached inverse of Q
    Matrix T1;     // invertible block
    Matrix T2;     // nilpotent block, T2^k = 0
    Matrix P;      // spectral projector onto N(T^k) along R(T^k); P = I - T T^d
    int k = 0;     // index of T
    Matrix core;                 // Q diag(T1, 0) Q^-1, equals T^2 T^d
    Matrix quasinilpotent_part;  // Q diag(0, T2) Q^-1, equals T P
};

/// Orthogonal splitting against R(T) (+)perp N(T*):
/// T = [U W] [[A1, A2], [0, 0]] [U W]*. D = A1 A1* + A2 A2* is positive
/// definite whenever rank(T) > 0.
struct ClosedRangeDecomposition {
    Matrix U;   // orthonormal basis of R(T)
    Matrix W;   // orthonormal basis of N(T*)
    Matrix A1;  // U* T U
    Matrix A2;  // U* T W
    Matrix D;   // A1 A1* + A2 A2*
};

/// Smallest k >= 0 with rank(T^k) == rank(T^(k+1)); convention T^0 = I, so
/// k == 0 exactly for invertible T. Always <= dimension.
int index(const Matrix& t, const ToleranceConfig& cfg = {});

/// Core-nilpotent decomposition. Throws NumericalBreakdown when the computed
/// blocks fail to reproduce T within eq_tol or T1 is numerically singular.
CoreNilpotentDecomposition core_nilpotent(const Matrix& t, const ToleranceConfig& cfg = {});

ClosedRangeDecomposition closed_range(const Matrix& t, const ToleranceConfig& cfg = {});

/// True when every eigenvalue magnitude is <= eig_tol * max(1, ||m||), or,
/// failing that, when ||m^n|| <= eig_tol * max(1, ||m||^n) for n = dimension.
/// The power fallback is needed because rounded nilpotent matrices with Jordan
/// structure of order k have computed eigenvalues of size ~eps^(1/k).
/// Vacuously true for 0x0 input.
bool is_nilpotent(const Matrix& m, const ToleranceConfig& cfg = {});

}  // namespace ginv
