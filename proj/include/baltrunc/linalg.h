#pragma once

#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace baltrunc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace linalg {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// "3x4" style shape string used in error messages.
std::string shape(const Matrix& m);

bool all_finite(const Matrix& m);

/// Standard product; throws DimensionMismatch naming both shapes.
Matrix multiply(const Matrix& a, const Matrix& b);

/// Solves a·X = b by partially pivoted LU. Throws SingularMatrix when the
/// smallest pivot is below n·eps times the largest.
Matrix solve(const Matrix& a, const Matrix& b);

struct Svd {
  Matrix u;
  Vector s;  // descending, non-negative
  Matrix v;
};

/// m = U·diag(s)·Vᵀ. With `full`, U and V are square orthogonal; otherwise
/// thin (min(rows, cols) columns).
Svd svd(const Matrix& m, bool full = false);

/// All eigenvalues via Hessenberg reduction and shifted QR.
ComplexVector eigenvalues(const Matrix& a);

/// Largest real part over the eigenvalues of a.
double spectral_abscissa(const Matrix& a);

struct Cholesky {
  Matrix l;         // lower triangular, l·lᵀ ≈ s
  int clamped = 0;  // number of pivots raised to the clamp floor
};

/// Cholesky factorization with pivot clamping for numerically semidefinite
/// input. Pivots with |p| < shift_tol·‖s‖ are replaced by shift_tol·‖s‖;
/// pivots below −shift_tol·‖s‖ throw NotPositiveDefinite.
Cholesky cholesky(const Matrix& s, double shift_tol);

/// Matrix exponential, scaling-and-squaring with a degree-13 Padé approximant.
Matrix expm(const Matrix& a);

/// max(rows, cols)·eps.
double default_rank_tol(const Matrix& m);

/// Number of singular values above rel_tol·σ_max; zero matrix has rank 0.
/// rel_tol <= 0 selects default_rank_tol(m).
int numerical_rank(const Matrix& m, double rel_tol = 0.0);

/// Orthonormal basis of the range of m, ncols columns taken from its SVD.
Matrix orthonormal_range(const Matrix& m, int ncols);

/// σ_max of a complex matrix; 0 for empty.
double max_singular_value(const ComplexMatrix& m);

}  // namespace linalg
}  // namespace baltrunc
