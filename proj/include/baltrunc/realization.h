#pragma once

#include "baltrunc/statespace.h"

namespace baltrunc {

/// Default relative tolerance for rank decisions made by the staircase
/// separations and the Kalman decomposition. Singular values are compared
/// against rel_tol times model_scale().
inline constexpr double kDefaultRealizationTol = 1e-10;

Matrix controllability_matrix(const Matrix& a, const Matrix& b);
Matrix observability_matrix(const Matrix& c, const Matrix& a);

/// Rank tests on the Krylov matrices. rel_tol is relative to σ_max of that
/// matrix; rel_tol <= 0 selects linalg::default_rank_tol.
bool is_controllable_pair(const Matrix& a, const Matrix& b,
                          double rel_tol = 0.0);
bool is_observable_pair(const Matrix& c, const Matrix& a, double rel_tol = 0.0);

struct Staircase {
  StateSpaceModel transformed;
  SimilarityTransform transform;  // orthogonal
  int rank = 0;                   // r_c or r_o
};

/// Orthogonal T with TAT⁻¹ block upper triangular and TB = [B₁; 0], where
/// the leading rank×rank pair (A₁₁, B₁) is controllable.
Staircase controllable_staircase(const StateSpaceModel& model,
                                 double rel_tol = kDefaultRealizationTol);

/// Dual form: TAT⁻¹ block lower triangular, CT⁻¹ = [C₁ 0].
Staircase observable_staircase(const StateSpaceModel& model,
                               double rel_tol = kDefaultRealizationTol);

/// Four-block Kalman form. States are ordered
/// (controllable+observable, controllable only, observable only, neither).
struct KalmanDecomposition {
  StateSpaceModel transformed;
  SimilarityTransform transform;
  int dim_co = 0;
  int dim_cno = 0;
  int dim_nco = 0;
  int dim_ncno = 0;
  /// Set when no state is both controllable and observable.
  bool empty_minimal = false;
};

KalmanDecomposition kalman_decompose(const StateSpaceModel& model,
                                     double rel_tol = kDefaultRealizationTol);

struct MinimalRealization {
  StateSpaceModel model;
  KalmanDecomposition decomposition;
};

/// The controllable-and-observable subsystem (Ã₁₁, B̃₁, C̃₁, D). Returns an
/// order-0 model when nothing survives.
MinimalRealization minimal_realization(const StateSpaceModel& model,
                                       double rel_tol = kDefaultRealizationTol);

}  // namespace baltrunc
