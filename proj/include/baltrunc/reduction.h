#pragma once

#include <limits>
#include <variant>
#include <vector>

#include "baltrunc/realization.h"
#include "baltrunc/statespace.h"

namespace baltrunc {

inline constexpr double kDefaultGapTol = 1e-8;
inline constexpr double kDistinctHsvTol = 1e-6;
inline constexpr double kHsvFloor = 1e-14;

/// Balanced coordinates: both infinite gramians equal diag(hsv).
struct BalancedRealization {
  StateSpaceModel model;
  SimilarityTransform transform;  // original → balanced
  Vector hsv;                     // descending
  /// Number of HSVs raised to the floor 1e-14·h₁. Nonzero means the input
  /// was numerically non-minimal.
  int floor_clamped = 0;
};

struct ReductionReport {
  int original_order = 0;
  int minimal_order = 0;
  int reduced_order = 0;
  std::vector<double> hsv_kept;
  std::vector<double> hsv_truncated;
  std::vector<double> distinct_truncated;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  /// h_r / h_{r+1}; +inf when nothing is truncated.
  double gap_ratio = std::numeric_limits<double>::infinity();
};

struct ExplicitOrder {
  int r;
};
/// Smallest order whose upper bound 2·Σ distinct truncated HSVs is ≤ epsilon.
struct ErrorBudget {
  double epsilon;
};
/// Keep every h_i ≥ rho·h₁.
struct RelativeFloor {
  double rho;
};
using OrderCriterion = std::variant<ExplicitOrder, ErrorBudget, RelativeFloor>;

struct HsvDiagnostics {
  int floor_clamped = 0;
};

/// Descending HSVs, the singular values of L_oᵀL_c for triangular factors
/// of the infinite gramians.
Vector hankel_singular_values(const StateSpaceModel& model,
                              HsvDiagnostics* diagnostics = nullptr);

struct BalanceOptions {
  /// Throw NotPositiveDefinite instead of clamping HSVs below the floor.
  bool strict = false;
};

/// Square-root balancing. The input should be stable and minimal.
BalancedRealization balance(const StateSpaceModel& model,
                            const BalanceOptions& options = {});

/// Deduplicates a descending list: values within rel_tol of the current
/// cluster's largest member merge into it.
std::vector<double> distinct_values(const std::vector<double>& descending,
                                    double rel_tol = kDistinctHsvTol);

/// 2·Σ of the distinct HSVs beyond index r.
double truncation_upper_bound(const Vector& hsv, int r);

int select_order(const Vector& hsv, const OrderCriterion& criterion,
                 double gap_tol = kDefaultGapTol);

struct Truncation {
  StateSpaceModel model;
  ReductionReport report;
};

Truncation truncate(const BalancedRealization& balanced, int r,
                    double gap_tol = kDefaultGapTol);

struct ReductionOptions {
  double rel_tol = kDefaultRealizationTol;
  double gap_tol = kDefaultGapTol;
  BalanceOptions balance;
};

struct ReductionResult {
  StateSpaceModel model;
  ReductionReport report;
  KalmanDecomposition decomposition;
};

/// minimal_realization → stability check → balance → select_order → truncate.
ReductionResult balanced_truncation(const StateSpaceModel& model,
                                    const OrderCriterion& criterion,
                                    const ReductionOptions& options = {});

}  // namespace baltrunc
