#pragma once

#include <cstdint>
#include <vector>

#include "baltrunc/reduction.h"
#include "baltrunc/statespace.h"

namespace baltrunc {

/// Uniformly sampled multichannel signal; row k is the sample at t0 + k·dt.
struct Signal {
  double dt = 1.0;
  double t0 = 0.0;
  Matrix samples;  // num_steps × channels

  Eigen::Index num_steps() const { return samples.rows(); }
  Eigen::Index channels() const { return samples.cols(); }
};

/// Throws InvalidArgument if dt, sample count or finiteness is violated.
void check_signal(const Signal& s);

struct FrequencyResponse {
  std::vector<double> omegas;  // strictly ascending
  std::vector<ComplexMatrix> values;
};

struct SimulationResult {
  Signal y;
  Vector x_final;  // state at t0 + num_steps·dt
};

/// Exact zero-order-hold simulation. y_k = C x_k + D u_k is sampled at the
/// start of each step.
SimulationResult simulate(const StateSpaceModel& model, const Signal& u,
                          const Vector& x0);

/// Trapezoid-rule approximation of sqrt(∫ sᵀs dt).
double l2_norm(const Signal& s);

/// `points` log-spaced frequencies in [w_min, w_max]. When w_min == 0 the
/// log grid starts at 1e-6·w_max and ω = 0 is prepended.
FrequencyResponse frequency_sweep(const StateSpaceModel& model, double w_min,
                                  double w_max, int points);

struct HinfEstimate {
  double estimate = 0.0;
  double argmax_omega = 0.0;
};

/// Grid maximum of σ_max(H_full(iω) − H_reduced(iω)) over ω = 0 and the log
/// grid, followed by golden-section refinement around the best grid point.
/// The result is a lower estimate of the true H∞ norm of the error system.
HinfEstimate hinf_error_estimate(const StateSpaceModel& full,
                                 const StateSpaceModel& reduced, double w_min,
                                 double w_max, int points, int refine_iters);

struct BoundVerification {
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double freq_error_estimate = 0.0;
  double argmax_omega = 0.0;
  double worst_time_ratio = 0.0;
  int num_trials = 0;
  bool passed = false;
};

struct VerifyOptions {
  int grid_points = 400;
  int refine_iters = 20;
  /// Upper limit on simulation steps per trial; dt grows past the
  /// 50-steps-per-fastest-time-constant target when this would be exceeded.
  Eigen::Index max_steps = 400000;
};

/// Checks the a-priori bounds of `report` in the frequency domain and against
/// `trials` seeded, windowed multi-sine inputs in the time domain.
BoundVerification verify_bound(const StateSpaceModel& full,
                               const StateSpaceModel& reduced,
                               const ReductionReport& report, int trials,
                               std::uint64_t seed,
                               const VerifyOptions& options = {});

}  // namespace baltrunc
