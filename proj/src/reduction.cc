#include "baltrunc/reduction.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "baltrunc/errors.h"
#include "baltrunc/gramians.h"

namespace baltrunc {

namespace {

struct SquareRootFactors {
  Matrix l_c;
  Matrix l_o;
  linalg::Svd svd;  // of l_oᵀ·l_c
};

// Gramian factors come straight from the Lyapunov equations rather than from
// Cholesky of the gramians, which keeps small HSVs accurate.
SquareRootFactors square_root_factors(const StateSpaceModel& model) {
  const Stability st = is_stable(model);
  if (!st.stable) {
    std::ostringstream os;
    os << "system is not asymptotically stable (spectral abscissa "
       << st.spectral_abscissa << ")";
    throw UnstableSystem(os.str(), st.spectral_abscissa);
  }
  SquareRootFactors f;
  f.l_c = lyapunov_factor(model.a, model.b);
  f.l_o = lyapunov_factor(model.a.transpose(), model.c.transpose());
  f.svd = linalg::svd(f.l_o.transpose() * f.l_c);
  return f;
}

int clamp_to_floor(Vector& hsv) {
  if (hsv.size() == 0) return 0;
  const double floor = kHsvFloor * hsv(0);
  int clamped = 0;
  for (Eigen::Index i = 0; i < hsv.size(); ++i) {
    if (hsv(i) < floor) {
      hsv(i) = floor;
      ++clamped;
    }
  }
  return clamped;
}

std::vector<double> to_std(const Vector& v) {
  return {v.data(), v.data() + v.size()};
}

void check_hsv(const Vector& hsv) {
  for (Eigen::Index i = 0; i < hsv.size(); ++i) {
    if (!(hsv(i) > 0.0) || !std::isfinite(hsv(i))) {
      throw InvalidArgument("HSVs must be positive and finite");
    }
    if (i > 0 && hsv(i) > hsv(i - 1)) {
      throw InvalidArgument("HSVs must be sorted in descending order");
    }
  }
}

bool has_gap(const Vector& hsv, int r, double gap_tol) {
  const auto n = static_cast<int>(hsv.size());
  return r == n || hsv(r - 1) > (1.0 + gap_tol) * hsv(r);
}

// The run of HSVs tied to h_r, i.e. linked to it by ratios within the gap
// tolerance.
[[noreturn]] void throw_no_gap(const Vector& hsv, int r, double gap_tol) {
  const auto n = static_cast<int>(hsv.size());
  int lo = r - 1, hi = r - 1;
  while (lo > 0 && hsv(lo - 1) <= (1.0 + gap_tol) * hsv(lo)) --lo;
  while (hi + 1 < n && hsv(hi) <= (1.0 + gap_tol) * hsv(hi + 1)) ++hi;
  std::vector<double> cluster(hsv.data() + lo, hsv.data() + hi + 1);
  std::ostringstream os;
  os << "no strict HSV gap at or below order " << r << "; cluster [";
  for (std::size_t i = 0; i < cluster.size(); ++i) {
    os << (i ? ", " : "") << cluster[i];
  }
  os << "]";
  throw NoValidGap(os.str(), std::move(cluster));
}

int adjust_down(const Vector& hsv, int r, double gap_tol) {
  for (int k = r; k >= 1; --k) {
    if (has_gap(hsv, k, gap_tol)) return k;
  }
  throw_no_gap(hsv, r, gap_tol);
}

}  // namespace

Vector hankel_singular_values(const StateSpaceModel& model,
                              HsvDiagnostics* diagnostics) {
  require_valid(model);
  if (model.n() == 0) return Vector(0);
  SquareRootFactors f = square_root_factors(model);
  Vector hsv = f.svd.s;
  const int clamped = clamp_to_floor(hsv);
  if (diagnostics != nullptr) diagnostics->floor_clamped = clamped;
  return hsv;
}

BalancedRealization balance(const StateSpaceModel& model,
                            const BalanceOptions& options) {
  require_valid(model);
  const auto n = model.n();
  if (n == 0) {
    return {model, SimilarityTransform::identity(0), Vector(0), 0};
  }
  SquareRootFactors f = square_root_factors(model);
  Vector hsv = f.svd.s;
  const int clamped = clamp_to_floor(hsv);
  if (options.strict && clamped > 0) {
    throw NotPositiveDefinite("balance: HSV below floor; input is not minimal",
                              hsv(n - 1));
  }
  const Vector inv_sqrt = hsv.cwiseSqrt().cwiseInverse();
  // T = Σ^{-1/2} Uᵀ L_oᵀ,  T⁻¹ = L_c V Σ^{-1/2}.
  Matrix t = inv_sqrt.asDiagonal() * f.svd.u.transpose() * f.l_o.transpose();
  Matrix t_inv = f.l_c * f.svd.v * inv_sqrt.asDiagonal();
  auto transform = SimilarityTransform::from_pair(std::move(t), std::move(t_inv));
  BalancedRealization out;
  out.model = apply_similarity(model, transform);
  out.transform = std::move(transform);
  out.hsv = std::move(hsv);
  out.floor_clamped = clamped;
  return out;
}

std::vector<double> distinct_values(const std::vector<double>& descending,
                                    double rel_tol) {
  std::vector<double> out;
  for (double v : descending) {
    if (out.empty() || out.back() - v > rel_tol * out.back()) out.push_back(v);
  }
  return out;
}

double truncation_upper_bound(const Vector& hsv, int r) {
  std::vector<double> tail(hsv.data() + r, hsv.data() + hsv.size());
  const auto distinct = distinct_values(tail);
  return 2.0 * std::accumulate(distinct.begin(), distinct.end(), 0.0);
}

int select_order(const Vector& hsv, const OrderCriterion& criterion,
                 double gap_tol) {
  check_hsv(hsv);
  const auto n = static_cast<int>(hsv.size());
  if (n == 0) throw InvalidArgument("select_order: empty HSV list");
  if (const auto* explicit_order = std::get_if<ExplicitOrder>(&criterion)) {
    const int r = explicit_order->r;
    if (r < 1 || r > n) {
      throw InvalidArgument("select_order: order " + std::to_string(r) +
                            " outside [1, " + std::to_string(n) + "]");
    }
    return adjust_down(hsv, r, gap_tol);
  }
  if (const auto* floor = std::get_if<RelativeFloor>(&criterion)) {
    if (!(floor->rho > 0.0)) {
      throw InvalidArgument("select_order: floor must be positive");
    }
    int r = 0;
    while (r < n && hsv(r) >= floor->rho * hsv(0)) ++r;
    return adjust_down(hsv, std::max(r, 1), gap_tol);
  }
  const double eps = std::get<ErrorBudget>(criterion).epsilon;
  if (!(eps >= 0.0)) {
    throw InvalidArgument("select_order: error budget must be non-negative");
  }
  for (int r = 1; r < n; ++r) {
    if (has_gap(hsv, r, gap_tol) && truncation_upper_bound(hsv, r) <= eps) {
      return r;
    }
  }
  return n;
}

Truncation truncate(const BalancedRealization& balanced, int r,
                    double gap_tol) {
  const Vector& hsv = balanced.hsv;
  const auto n = static_cast<int>(balanced.model.n());
  if (r < 1 || r > n) {
    throw InvalidArgument("truncate: order " + std::to_string(r) +
                          " outside [1, " + std::to_string(n) + "]");
  }
  if (!has_gap(hsv, r, gap_tol)) throw_no_gap(hsv, r, gap_tol);

  Truncation out;
  const StateSpaceModel& full = balanced.model;
  out.model.a = full.a.topLeftCorner(r, r);
  out.model.b = full.b.topRows(r);
  out.model.c = full.c.leftCols(r);
  out.model.d = full.d;

  ReductionReport& rep = out.report;
  rep.original_order = n;
  rep.minimal_order = n;
  rep.reduced_order = r;
  const auto all = to_std(hsv);
  rep.hsv_kept.assign(all.begin(), all.begin() + r);
  rep.hsv_truncated.assign(all.begin() + r, all.end());
  rep.distinct_truncated = distinct_values(rep.hsv_truncated);
  rep.lower_bound =
      rep.distinct_truncated.empty() ? 0.0 : rep.distinct_truncated.front();
  rep.upper_bound = 2.0 * std::accumulate(rep.distinct_truncated.begin(),
                                          rep.distinct_truncated.end(), 0.0);
  rep.gap_ratio = r == n ? std::numeric_limits<double>::infinity()
                         : hsv(r - 1) / hsv(r);
  return out;
}

ReductionResult balanced_truncation(const StateSpaceModel& model,
                                    const OrderCriterion& criterion,
                                    const ReductionOptions& options) {
  require_valid(model);
  MinimalRealization minimal = minimal_realization(model, options.rel_tol);
  const auto n_min = static_cast<int>(minimal.model.n());

  ReductionResult out;
  if (n_min == 0) {
    out.model = std::move(minimal.model);
    out.report.original_order = static_cast<int>(model.n());
    out.decomposition = std::move(minimal.decomposition);
    return out;
  }
  const Stability st = is_stable(minimal.model);
  if (!st.stable) {
    std::ostringstream os;
    os << "balanced_truncation: minimal realization is unstable (spectral "
          "abscissa "
       << st.spectral_abscissa << ")";
    throw UnstableSystem(os.str(), st.spectral_abscissa);
  }
  const BalancedRealization balanced = balance(minimal.model, options.balance);
  const int r = select_order(balanced.hsv, criterion, options.gap_tol);
  Truncation tr = truncate(balanced, r, options.gap_tol);
  tr.report.original_order = static_cast<int>(model.n());
  tr.report.minimal_order = n_min;
  out.model = std::move(tr.model);
  out.report = std::move(tr.report);
  out.decomposition = std::move(minimal.decomposition);
  return out;
}

}  // namespace baltrunc
