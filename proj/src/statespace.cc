#include "baltrunc/statespace.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "baltrunc/errors.h"

namespace baltrunc {

StateSpaceModel StateSpaceModel::from(Matrix a, Matrix b, Matrix c, Matrix d) {
  StateSpaceModel model{std::move(a), std::move(b), std::move(c), std::move(d)};
  require_valid(model);
  return model;
}

StateSpaceModel StateSpaceModel::from(Matrix a, Matrix b, Matrix c) {
  Matrix d = Matrix::Zero(c.rows(), b.cols());
  return from(std::move(a), std::move(b), std::move(c), std::move(d));
}

SimilarityTransform SimilarityTransform::identity(Eigen::Index n) {
  return {Matrix::Identity(n, n), Matrix::Identity(n, n), 1.0};
}

SimilarityTransform SimilarityTransform::orthogonal(Matrix q) {
  Matrix qt = q.transpose();
  return {std::move(q), std::move(qt), 1.0};
}

namespace {

double condition_number(const Matrix& t) {
  if (t.size() == 0) return 1.0;
  const Vector s = linalg::svd(t).s;
  const double smallest = s(s.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

}  // namespace

SimilarityTransform SimilarityTransform::from_matrix(Matrix t) {
  if (t.rows() != t.cols()) {
    throw DimensionMismatch("similarity transform must be square, got " +
                            linalg::shape(t));
  }
  Matrix t_inv =
      linalg::solve(t, Matrix::Identity(t.rows(), t.cols()));
  const double cond = condition_number(t);
  return {std::move(t), std::move(t_inv), cond};
}

SimilarityTransform SimilarityTransform::from_pair(Matrix t, Matrix t_inv) {
  if (t.rows() != t.cols() || t_inv.rows() != t.rows() ||
      t_inv.cols() != t.cols()) {
    throw DimensionMismatch("similarity transform pair has shapes " +
                            linalg::shape(t) + " and " +
                            linalg::shape(t_inv));
  }
  const double cond = condition_number(t);
  return {std::move(t), std::move(t_inv), cond};
}

std::vector<std::string> validate(const StateSpaceModel& model) {
  std::vector<std::string> out;
  const auto n = model.a.rows();
  auto dims = [](const Matrix& x) { return linalg::shape(x); };
  if (model.a.cols() != n) {
    out.push_back("a: must be square, got " + dims(model.a));
  }
  if (model.b.rows() != n) {
    out.push_back("b: must have n = " + std::to_string(n) + " rows, got " +
                  dims(model.b));
  }
  if (model.b.cols() < 1) out.push_back("b: must have at least one column");
  if (model.c.cols() != n) {
    out.push_back("c: must have n = " + std::to_string(n) + " columns, got " +
                  dims(model.c));
  }
  if (model.c.rows() < 1) out.push_back("c: must have at least one row");
  if (model.d.rows() != model.c.rows() || model.d.cols() != model.b.cols()) {
    out.push_back("d: must be " + std::to_string(model.c.rows()) + "x" +
                  std::to_string(model.b.cols()) + ", got " + dims(model.d));
  }
  const std::pair<const char*, const Matrix*> fields[] = {
      {"a", &model.a}, {"b", &model.b}, {"c", &model.c}, {"d", &model.d}};
  for (const auto& [name, mat] : fields) {
    if (!mat->allFinite()) {
      out.push_back(std::string(name) + ": contains non-finite entries");
    }
  }
  return out;
}

void require_valid(const StateSpaceModel& model) {
  auto violations = validate(model);
  if (violations.empty()) return;
  std::string msg = "invalid state-space model: " + violations.front();
  for (std::size_t i = 1; i < violations.size(); ++i) {
    msg += "; " + violations[i];
  }
  throw ValidationError(msg, std::move(violations));
}

StateSpaceModel apply_similarity(const StateSpaceModel& model,
                                 const SimilarityTransform& t) {
  const auto n = model.n();
  if (t.t.rows() != n || t.t.cols() != n || t.t_inv.rows() != n ||
      t.t_inv.cols() != n) {
    throw DimensionMismatch("apply_similarity: transform " +
                            linalg::shape(t.t) + " does not match order " +
                            std::to_string(n));
  }
  if (t.t.isIdentity(0.0) && t.t_inv.isIdentity(0.0)) return model;
  StateSpaceModel out;
  out.a = t.t * model.a * t.t_inv;
  out.b = t.t * model.b;
  out.c = model.c * t.t_inv;
  out.d = model.d;
  return out;
}

Stability is_stable(const StateSpaceModel& model, double margin) {
  if (margin < 0.0) throw InvalidArgument("is_stable: margin must be >= 0");
  if (model.n() == 0) {
    return {true, -std::numeric_limits<double>::infinity()};
  }
  const double abscissa = linalg::spectral_abscissa(model.a);
  return {abscissa < -margin, abscissa};
}

ComplexMatrix transfer_at(const StateSpaceModel& model, double omega) {
  const auto n = model.n();
  ComplexMatrix h = model.d.cast<std::complex<double>>();
  if (n == 0 || model.b.isZero(0.0) || model.c.isZero(0.0)) return h;
  ComplexMatrix resolvent = (-model.a).cast<std::complex<double>>();
  resolvent.diagonal().array() += std::complex<double>(0.0, omega);
  Eigen::PartialPivLU<ComplexMatrix> lu(resolvent);
  const Vector pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double scale = std::max(pivots.maxCoeff(), 1e-300);
  if (!(pivots.minCoeff() > static_cast<double>(n) * linalg::kEps * scale)) {
    std::ostringstream os;
    os << "transfer_at: iwI - A is singular at omega = " << omega;
    throw Resonance(os.str(), omega);
  }
  h.noalias() += model.c.cast<std::complex<double>>() *
                 lu.solve(model.b.cast<std::complex<double>>());
  return h;
}

double model_scale(const StateSpaceModel& model) {
  return std::max({model.a.norm(), model.b.norm(), model.c.norm()});
}

}  // namespace baltrunc
