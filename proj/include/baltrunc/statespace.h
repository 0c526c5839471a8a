#pragma once

#include <string>
#include <vector>

#include "baltrunc/linalg.h"

namespace baltrunc {

/// Continuous-time LTI model ẋ = Ax + Bu, y = Cx + Du.
///
/// Order-0 models (n == 0) are allowed and represent pure feed-through maps;
/// they appear when a minimal realization removes every state.
struct StateSpaceModel {
  Matrix a;
  Matrix b;
  Matrix c;
  Matrix d;

  Eigen::Index n() const { return a.rows(); }
  Eigen::Index m() const { return d.cols(); }
  Eigen::Index p() const { return d.rows(); }

  static StateSpaceModel from(Matrix a, Matrix b, Matrix c, Matrix d);
  /// Model with D = 0.
  static StateSpaceModel from(Matrix a, Matrix b, Matrix c);
};

/// z = T·x. Holds both T and T⁻¹ so callers that can build the inverse
/// accurately (balancing) never go through a generic inversion.
struct SimilarityTransform {
  Matrix t;
  Matrix t_inv;
  double condition_estimate = 1.0;

  static SimilarityTransform identity(Eigen::Index n);
  /// Orthogonal T; t_inv is Tᵀ.
  static SimilarityTransform orthogonal(Matrix q);
  /// General T; the inverse is computed by LU.
  static SimilarityTransform from_matrix(Matrix t);
  /// Both factors supplied by the caller.
  static SimilarityTransform from_pair(Matrix t, Matrix t_inv);
};

/// Type-invariant violations, each naming the field and the broken rule.
std::vector<std::string> validate(const StateSpaceModel& model);

/// Throws ValidationError when validate() reports anything.
void require_valid(const StateSpaceModel& model);

/// (T A T⁻¹, T B, C T⁻¹, D). D is copied unchanged.
StateSpaceModel apply_similarity(const StateSpaceModel& model,
                                 const SimilarityTransform& t);

struct Stability {
  bool stable = false;
  double spectral_abscissa = 0.0;
};

/// Stable iff max Re(λ) < −margin. An order-0 model is stable.
Stability is_stable(const StateSpaceModel& model, double margin = 0.0);

/// H(iω) = C(iωI − A)⁻¹B + D.
ComplexMatrix transfer_at(const StateSpaceModel& model, double omega);

/// max(‖A‖_F, ‖B‖_F, ‖C‖_F); the reference scale for zero-block tests.
double model_scale(const StateSpaceModel& model);

}  // namespace baltrunc
