#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ginv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Tolerances shared by every operation. All three must be strictly positive.
///  - rank_tol: relative singular-value cutoff (sigma > rank_tol * sigma_max counts)
///  - eq_tol:   relative Frobenius tolerance for matrix equality tests
///  - eig_tol:  relative eigenvalue-magnitude cutoff for nilpotency tests
struct ToleranceConfig {
    double rank_tol = 1e-10;
    double eq_tol = 1e-8;
    double eig_tol = 1e-8;
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error { using Error::Error; };
struct NotSquare : Error { using Error::Error; };
struct NonComplementarySubspaces : Error { using Error::Error; };
struct NumericalBreakdown : Error { using Error::Error; };
struct InvalidInnerInverse : Error { using Error::Error; };
struct ConstraintViolated : Error { using Error::Error; };
struct InvalidExponent : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };
struct UnknownTheorem : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Throws InvalidSpec unless every tolerance is strictly positive and finite.
void validate(const ToleranceConfig& cfg);

/// Numerical rank: number of singular values exceeding rank_tol * sigma_max.
/// The zero matrix has rank 0.
int rank(const Matrix& m, const ToleranceConfig& cfg = {});

/// Moore-Penrose pseudoinverse via SVD with the rank_tol cutoff.
Matrix pinv(const Matrix& m, const ToleranceConfig& cfg = {});

/// Relative Frobenius distance: ||a - b|| / max(1, ||a||, ||b||).
double rel_residual(const Matrix& a, const Matrix& b);

/// True when rel_residual(a, b) <= eq_tol. Shapes must agree.
bool approx_eq(const Matrix& a, const Matrix& b, const ToleranceConfig& cfg = {});

/// Largest singular value (operator 2-norm). Zero for empty matrices.
double spectral_norm(const Matrix& m);

/// Orthonormal basis of the column space, chosen deterministically by
/// column-pivoted Householder orthogonalization. Returns rows x rank(m).
Matrix range_basis(const Matrix& m, const ToleranceConfig& cfg = {});

/// Orthonormal basis of the null space N(m) = R(m*)^perp, from the trailing
/// columns of the column-pivoted orthogonalization of m*. Returns cols x nullity.
Matrix null_basis(const Matrix& m, const ToleranceConfig& cfg = {});

/// Orthogonal projector B B* for a matrix with orthonormal columns.
Matrix orthoprojector(const Matrix& basis);

/// Residual of R(sub) being contained in R(space):
/// ||(I - proj_R(space)) sub|| / max(1, ||sub||).
double containment_residual(const Matrix& sub, const Matrix& space,
                            const ToleranceConfig& cfg = {});

/// True when R(a) and R(b) coincide (orthoprojector comparison).
bool same_range(const Matrix& a, const Matrix& b, const ToleranceConfig& cfg = {});

/// Projector onto span(range_cols) along span(null_cols). The two column
/// spans must be complementary: rank(range) + rank(null) == dimension and the
/// concatenation must have full rank, otherwise NonComplementarySubspaces.
/// Computed by solving P [R N] = [R 0].
Matrix oblique_projector(const Matrix& range_cols, const Matrix& null_cols,
                         const ToleranceConfig& cfg = {});

/// t^p for p >= 0, with t^0 = I. Throws NotSquare / InvalidExponent.
Matrix matrix_power(const Matrix& t, int p);

/// t^p with a collapse guard for rank decisions: when one multiplication
/// shrinks the norm below rank_tol * ||t|| * ||previous power||, every
/// singular value has collapsed at once, which only happens when the product
/// is mathematically zero (a nilpotency cliff). The result is snapped to the
/// exact zero matrix from that point on, so downstream rank or pseudoinverse
/// computations never amplify rounding noise into spurious directions.
Matrix stabilized_power(const Matrix& t, int p, const ToleranceConfig& cfg = {});

}  // namespace ginv
