#include "baltrunc/realization.h"

#include "baltrunc/errors.h"

namespace baltrunc {

Matrix controllability_matrix(const Matrix& a, const Matrix& b) {
  const auto n = a.rows();
  if (a.cols() != n || b.rows() != n) {
    throw DimensionMismatch("controllability_matrix: A " + linalg::shape(a) +
                            " and B " + linalg::shape(b) +
                            " are not conformable");
  }
  const auto m = b.cols();
  Matrix k(n, n * m);
  if (n == 0) return k;
  Matrix block = b;
  for (Eigen::Index i = 0; i < n; ++i) {
    k.middleCols(i * m, m) = block;
    if (i + 1 < n) block = a * block;
  }
  return k;
}

Matrix observability_matrix(const Matrix& c, const Matrix& a) {
  const auto n = a.rows();
  if (a.cols() != n || c.cols() != n) {
    throw DimensionMismatch("observability_matrix: C " + linalg::shape(c) +
                            " and A " + linalg::shape(a) +
                            " are not conformable");
  }
  const auto p = c.rows();
  Matrix o(n * p, n);
  if (n == 0) return o;
  Matrix block = c;
  for (Eigen::Index i = 0; i < n; ++i) {
    o.middleRows(i * p, p) = block;
    if (i + 1 < n) block = block * a;
  }
  return o;
}

bool is_controllable_pair(const Matrix& a, const Matrix& b, double rel_tol) {
  const Matrix k = controllability_matrix(a, b);
  return linalg::numerical_rank(k, rel_tol) == a.rows();
}

bool is_observable_pair(const Matrix& c, const Matrix& a, double rel_tol) {
  const Matrix o = observability_matrix(c, a);
  return linalg::numerical_rank(o, rel_tol) == a.rows();
}

namespace {

struct PairStaircase {
  Matrix q;  // orthogonal, z = q·x
  int rank = 0;
};

// Iterated range deflation on (A, B). Each pass splits the current input
// block by its SVD and rotates the trailing coordinates so that only the
// leading `rho` rows are reached; the sub-diagonal block of the rotated A
// becomes the next input block.
PairStaircase staircase_pair(const Matrix& a, const Matrix& b,
                             double tol_abs) {
  const auto n = a.rows();
  Matrix at = a;
  Matrix q = Matrix::Identity(n, n);
  Matrix block = b;
  Eigen::Index offset = 0;
  while (offset < n && block.cols() > 0) {
    const auto rest = n - offset;
    const linalg::Svd d = linalg::svd(block, /*full=*/true);
    Eigen::Index rho = 0;
    while (rho < d.s.size() && d.s(rho) > tol_abs) ++rho;
    if (rho == 0) break;
    const Matrix ut = d.u.transpose();
    at.bottomRows(rest) = ut * at.bottomRows(rest);
    at.rightCols(rest) = at.rightCols(rest) * d.u;
    q.bottomRows(rest) = ut * q.bottomRows(rest);
    block = at.block(offset + rho, offset, rest - rho, rho);
    offset += rho;
  }
  return {std::move(q), static_cast<int>(offset)};
}

double absolute_tol(const StateSpaceModel& model, double rel_tol) {
  if (rel_tol <= 0.0) {
    throw InvalidArgument("realization: rel_tol must be positive");
  }
  return rel_tol * model_scale(model);
}

}  // namespace

Staircase controllable_staircase(const StateSpaceModel& model,
                                 double rel_tol) {
  require_valid(model);
  const double tol = absolute_tol(model, rel_tol);
  PairStaircase sc = staircase_pair(model.a, model.b, tol);
  auto t = SimilarityTransform::orthogonal(std::move(sc.q));
  return {apply_similarity(model, t), std::move(t), sc.rank};
}

Staircase observable_staircase(const StateSpaceModel& model, double rel_tol) {
  require_valid(model);
  const double tol = absolute_tol(model, rel_tol);
  PairStaircase sc =
      staircase_pair(model.a.transpose(), model.c.transpose(), tol);
  auto t = SimilarityTransform::orthogonal(std::move(sc.q));
  return {apply_similarity(model, t), std::move(t), sc.rank};
}

KalmanDecomposition kalman_decompose(const StateSpaceModel& model,
                                     double rel_tol) {
  require_valid(model);
  const auto n = model.n();
  const double tol = absolute_tol(model, rel_tol);

  // Controllable subspace R, then its unobservable part R ∩ N through the
  // observable split of the restricted pair.
  const PairStaircase ctrb = staircase_pair(model.a, model.b, tol);
  const int r_c = ctrb.rank;
  const Matrix basis_r = ctrb.q.transpose().leftCols(r_c);
  const Matrix a_cc = basis_r.transpose() * model.a * basis_r;
  const Matrix c_c = model.c * basis_r;
  const PairStaircase obsv_c =
      staircase_pair(a_cc.transpose(), c_c.transpose(), tol);
  const int dim_co = obsv_c.rank;
  const int dim_cno = r_c - dim_co;
  const Matrix rotated = basis_r * obsv_c.q.transpose();
  const Matrix v1 = rotated.leftCols(dim_co);
  const Matrix v2 = rotated.rightCols(dim_cno);

  // Unobservable subspace N of the whole model; its part orthogonal to
  // R ∩ N fills the fourth block.
  const PairStaircase obsv =
      staircase_pair(model.a.transpose(), model.c.transpose(), tol);
  const int dim_n = static_cast<int>(n) - obsv.rank;
  const int dim_ncno = std::max(0, dim_n - dim_cno);
  const Matrix basis_n = obsv.q.transpose().rightCols(dim_n);
  const Matrix n_perp = basis_n - v2 * (v2.transpose() * basis_n);
  const Matrix v4 = linalg::orthonormal_range(n_perp, dim_ncno);

  const int known = r_c + dim_ncno;
  const int dim_nco = static_cast<int>(n) - known;
  Matrix left(n, known);
  left << v1, v2, v4;
  const Matrix v3 =
      known == n ? Matrix(n, 0)
                 : Matrix(linalg::svd(left, /*full=*/true).u.rightCols(n - known));

  Matrix t_inv(n, n);
  t_inv << v1, v2, v3, v4;
  Matrix t = linalg::solve(t_inv, Matrix::Identity(n, n));
  auto transform = SimilarityTransform::from_pair(std::move(t), std::move(t_inv));

  KalmanDecomposition out;
  out.transformed = apply_similarity(model, transform);
  out.transform = std::move(transform);
  out.dim_co = dim_co;
  out.dim_cno = dim_cno;
  out.dim_nco = dim_nco;
  out.dim_ncno = dim_ncno;
  out.empty_minimal = dim_co == 0;
  return out;
}

MinimalRealization minimal_realization(const StateSpaceModel& model,
                                       double rel_tol) {
  KalmanDecomposition kd = kalman_decompose(model, rel_tol);
  // The leading columns of T⁻¹ are orthonormal and span an A-invariant
  // complement inside R, so the projection equals the Kalman (1,1) block.
  const Matrix v1 = kd.transform.t_inv.leftCols(kd.dim_co);
  StateSpaceModel reduced;
  reduced.a = v1.transpose() * model.a * v1;
  reduced.b = v1.transpose() * model.b;
  reduced.c = model.c * v1;
  reduced.d = model.d;
  return {std::move(reduced), std::move(kd)};
}

}  // namespace baltrunc
