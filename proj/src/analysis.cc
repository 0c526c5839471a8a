#include "baltrunc/analysis.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "baltrunc/errors.h"

namespace baltrunc {

void check_signal(const Signal& s) {
  if (!(s.dt > 0.0) || !std::isfinite(s.dt)) {
    throw InvalidArgument("signal: dt must be positive and finite");
  }
  if (s.num_steps() < 1) throw InvalidArgument("signal: no samples");
  if (s.channels() < 1) throw InvalidArgument("signal: no channels");
  if (!s.samples.allFinite()) {
    throw InvalidArgument("signal: samples must be finite");
  }
}

namespace {

struct Zoh {
  Matrix phi;    // e^{A dt}
  Matrix gamma;  // ∫₀^dt e^{As} ds · B
};

Zoh discretize(const StateSpaceModel& model, double dt) {
  const auto n = model.n();
  const auto m = model.m();
  Matrix aug = Matrix::Zero(n + m, n + m);
  aug.topLeftCorner(n, n) = model.a;
  aug.topRightCorner(n, m) = model.b;
  const Matrix e = linalg::expm(aug * dt);
  return {e.topLeftCorner(n, n), e.topRightCorner(n, m)};
}

}  // namespace

SimulationResult simulate(const StateSpaceModel& model, const Signal& u,
                          const Vector& x0) {
  check_signal(u);
  if (u.channels() != model.m()) {
    throw DimensionMismatch("simulate: input has " +
                            std::to_string(u.channels()) +
                            " channels, model has " +
                            std::to_string(model.m()) + " inputs");
  }
  if (x0.size() != model.n()) {
    throw DimensionMismatch("simulate: x0 has length " +
                            std::to_string(x0.size()) + ", model order is " +
                            std::to_string(model.n()));
  }
  const auto steps = u.num_steps();
  const Zoh zoh = discretize(model, u.dt);
  // Work on column-per-sample copies so every step touches contiguous data.
  const Matrix input = u.samples.transpose();
  Matrix output(model.p(), steps);
  Vector x = x0;
  Vector next(model.n());
  for (Eigen::Index k = 0; k < steps; ++k) {
    const auto uk = input.col(k);
    output.col(k).noalias() = model.c * x;
    output.col(k).noalias() += model.d * uk;
    next.noalias() = zoh.phi * x;
    next.noalias() += zoh.gamma * uk;
    x.swap(next);
  }
  SimulationResult out;
  out.y.dt = u.dt;
  out.y.t0 = u.t0;
  out.y.samples = output.transpose();
  out.x_final = std::move(x);
  return out;
}

double l2_norm(const Signal& s) {
  const auto steps = s.num_steps();
  if (steps < 2) return 0.0;
  const Vector energy = s.samples.rowwise().squaredNorm();
  const double sum =
      energy.sum() - 0.5 * (energy(0) + energy(steps - 1));
  return std::sqrt(std::max(0.0, sum * s.dt));
}

namespace {

std::vector<double> log_grid(double w_min, double w_max, int points) {
  if (!(w_min >= 0.0) || !(w_max > w_min) || !std::isfinite(w_max)) {
    throw InvalidArgument("frequency grid requires 0 <= w_min < w_max");
  }
  if (points < 2) throw InvalidArgument("frequency grid requires points >= 2");
  const double lo = w_min > 0.0 ? w_min : 1e-6 * w_max;
  const double log_lo = std::log(lo);
  const double log_hi = std::log(w_max);
  std::vector<double> grid;
  grid.reserve(points + 1);
  if (w_min == 0.0) grid.push_back(0.0);
  for (int i = 0; i < points; ++i) {
    const double frac = static_cast<double>(i) / (points - 1);
    grid.push_back(i == points - 1 ? w_max
                                   : std::exp(log_lo + frac * (log_hi - log_lo)));
  }
  if (w_min > 0.0) grid.front() = w_min;
  return grid;
}

}  // namespace

FrequencyResponse frequency_sweep(const StateSpaceModel& model, double w_min,
                                  double w_max, int points) {
  require_valid(model);
  FrequencyResponse out;
  out.omegas = log_grid(w_min, w_max, points);
  out.values.reserve(out.omegas.size());
  for (double w : out.omegas) out.values.push_back(transfer_at(model, w));
  return out;
}

HinfEstimate hinf_error_estimate(const StateSpaceModel& full,
                                 const StateSpaceModel& reduced, double w_min,
                                 double w_max, int points, int refine_iters) {
  if (full.m() != reduced.m() || full.p() != reduced.p()) {
    throw DimensionMismatch(
        "hinf_error_estimate: models have different input/output dimensions");
  }
  auto error_at = [&](double w) {
    return linalg::max_singular_value(transfer_at(full, w) -
                                      transfer_at(reduced, w));
  };
  std::vector<double> grid = log_grid(w_min, w_max, points);
  if (grid.front() != 0.0) grid.insert(grid.begin(), 0.0);

  HinfEstimate best{-1.0, 0.0};
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double e = error_at(grid[i]);
    if (e > best.estimate) {
      best = {e, grid[i]};
      best_index = i;
    }
  }

  double lo = grid[best_index == 0 ? 0 : best_index - 1];
  double hi = grid[std::min(best_index + 1, grid.size() - 1)];
  if (refine_iters > 0 && hi > lo) {
    // Golden-section search for a maximum; log-spaced when the bracket
    // excludes ω = 0.
    const bool use_log = lo > 0.0;
    auto to_w = [&](double s) { return use_log ? std::exp(s) : s; };
    double a = use_log ? std::log(lo) : lo;
    double b = use_log ? std::log(hi) : hi;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = error_at(to_w(x1));
    double f2 = error_at(to_w(x2));
    for (int it = 0; it < refine_iters; ++it) {
      if (f1 > best.estimate) best = {f1, to_w(x1)};
      if (f2 > best.estimate) best = {f2, to_w(x2)};
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = error_at(to_w(x1));
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = error_at(to_w(x2));
      }
    }
    if (f1 > best.estimate) best = {f1, to_w(x1)};
    if (f2 > best.estimate) best = {f2, to_w(x2)};
  }
  best.estimate = std::max(best.estimate, 0.0);
  return best;
}

namespace {

double fastest_rate(const StateSpaceModel& model) {
  if (model.n() == 0) return 0.0;
  return linalg::eigenvalues(model.a).cwiseAbs().maxCoeff();
}

// Tukey window: cosine tapers over the first and last 10% of the support.
double tukey(double t, double support) {
  if (t < 0.0 || t > support) return 0.0;
  const double taper = 0.1 * support;
  if (t < taper) return 0.5 * (1.0 - std::cos(std::numbers::pi * t / taper));
  if (t > support - taper) {
    return 0.5 * (1.0 - std::cos(std::numbers::pi * (support - t) / taper));
  }
  return 1.0;
}

}  // namespace

BoundVerification verify_bound(const StateSpaceModel& full,
                               const StateSpaceModel& reduced,
                               const ReductionReport& report, int trials,
                               std::uint64_t seed,
                               const VerifyOptions& options) {
  require_valid(full);
  require_valid(reduced);
  if (trials < 1) throw InvalidArgument("verify_bound: trials must be >= 1");
  if (full.m() != reduced.m() || full.p() != reduced.p()) {
    throw DimensionMismatch(
        "verify_bound: models have different input/output dimensions");
  }
  BoundVerification out;
  out.lower_bound = report.lower_bound;
  out.upper_bound = report.upper_bound;
  out.num_trials = trials;

  const Stability sf = is_stable(full);
  const Stability sr = is_stable(reduced);
  if (!sf.stable || !sr.stable) {
    // An unstable error system has no finite bound; report as failed.
    out.freq_error_estimate = std::numeric_limits<double>::infinity();
    out.worst_time_ratio = std::numeric_limits<double>::infinity();
    out.passed = false;
    return out;
  }
  double rate = std::abs(std::max(sf.spectral_abscissa, sr.spectral_abscissa));
  if (!std::isfinite(rate) || rate == 0.0) rate = 1.0;

  const double w_lo = 1e-3 * rate;
  const double w_hi = 1e3 * rate;
  const HinfEstimate freq = hinf_error_estimate(
      full, reduced, w_lo, w_hi, options.grid_points, options.refine_iters);
  out.freq_error_estimate = freq.estimate;
  out.argmax_omega = freq.argmax_omega;

  const double horizon = 80.0 / rate;
  const double support = 60.0 / rate;
  const double fastest = std::max({fastest_rate(full), fastest_rate(reduced), rate});
  double dt = 1.0 / (50.0 * fastest);
  auto steps = static_cast<Eigen::Index>(std::ceil(horizon / dt)) + 1;
  if (steps > options.max_steps) {
    steps = options.max_steps;
    dt = horizon / static_cast<double>(steps - 1);
  }

  const auto m = full.m();
  const Vector x0_full = Vector::Zero(full.n());
  const Vector x0_red = Vector::Zero(reduced.n());
  std::uniform_int_distribution<int> count_dist(1, 10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double log_lo = std::log(w_lo);
  const double log_hi = std::log(w_hi);

  for (int trial = 0; trial < trials; ++trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    const int count = count_dist(rng);
    std::vector<double> omega(count);
    std::vector<double> phase(count);
    Matrix amp(m, count);
    for (int s = 0; s < count; ++s) {
      omega[s] = std::exp(log_lo + unit(rng) * (log_hi - log_lo));
      phase[s] = 2.0 * std::numbers::pi * unit(rng);
      for (Eigen::Index ch = 0; ch < m; ++ch) amp(ch, s) = normal(rng);
    }
    // Seed the first trial at the measured frequency-domain peak.
    if (trial == 0) omega[0] = std::max(freq.argmax_omega, w_lo);

    Signal u;
    u.dt = dt;
    u.samples = Matrix::Zero(steps, m);
    for (Eigen::Index k = 0; k < steps; ++k) {
      const double t = static_cast<double>(k) * dt;
      const double w = tukey(t, support);
      if (w == 0.0) continue;
      for (int s = 0; s < count; ++s) {
        u.samples.row(k) +=
            (w * std::sin(omega[s] * t + phase[s])) * amp.col(s).transpose();
      }
    }
    const double u_norm = l2_norm(u);
    if (u_norm == 0.0) continue;
    const SimulationResult yf = simulate(full, u, x0_full);
    const SimulationResult yr = simulate(reduced, u, x0_red);
    Signal err;
    err.dt = dt;
    err.samples = yr.y.samples - yf.y.samples;
    out.worst_time_ratio = std::max(out.worst_time_ratio, l2_norm(err) / u_norm);
  }

  const double limit = out.upper_bound * (1.0 + 1e-6) + 1e-10;
  out.passed =
      out.worst_time_ratio <= limit && out.freq_error_estimate <= limit;
  return out;
}

}  // namespace baltrunc
