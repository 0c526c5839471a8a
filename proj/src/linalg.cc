#include "baltrunc/linalg.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "baltrunc/errors.h"

namespace baltrunc::linalg {

std::string shape(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("multiply: cannot multiply " + shape(a) + " by " +
                            shape(b));
  }
  return a * b;
}

Matrix solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("solve: coefficient matrix must be square, got " +
                            shape(a));
  }
  if (b.rows() != a.rows()) {
    throw DimensionMismatch("solve: right-hand side " + shape(b) +
                            " does not match " + shape(a));
  }
  const Eigen::Index n = a.rows();
  if (n == 0) return Matrix(0, b.cols());
  Eigen::PartialPivLU<Matrix> lu(a);
  const Vector pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double smallest = pivots.minCoeff();
  const double largest = pivots.maxCoeff();
  if (!(smallest > static_cast<double>(n) * kEps * largest)) {
    std::ostringstream os;
    os << "solve: matrix is singular to working precision (pivot " << smallest
       << ")";
    throw SingularMatrix(os.str(), smallest);
  }
  return lu.solve(b);
}

Svd svd(const Matrix& m, bool full) {
  const unsigned options =
      full ? (Eigen::ComputeFullU | Eigen::ComputeFullV)
           : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (m.rows() == 0 || m.cols() == 0) {
    const Eigen::Index ur = m.rows();
    const Eigen::Index vr = m.cols();
    return {full ? Matrix::Identity(ur, ur) : Matrix(ur, 0), Vector(0),
            full ? Matrix::Identity(vr, vr) : Matrix(vr, 0)};
  }
  if (!m.allFinite()) throw NumericalFailure("svd: non-finite input");
  Eigen::BDCSVD<Matrix> dec(m, options);
  if (dec.info() != Eigen::Success) {
    throw NumericalFailure("svd: iteration failed to converge for " +
                           shape(m));
  }
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

ComplexVector eigenvalues(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("eigenvalues: matrix must be square, got " +
                            shape(a));
  }
  if (a.rows() == 0) return ComplexVector(0);
  if (!a.allFinite()) throw NumericalFailure("eigenvalues: non-finite input");
  Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("eigenvalues: QR iteration did not converge for " +
                           shape(a));
  }
  return es.eigenvalues();
}

double spectral_abscissa(const Matrix& a) {
  const ComplexVector ev = eigenvalues(a);
  if (ev.size() == 0) return -std::numeric_limits<double>::infinity();
  return ev.real().maxCoeff();
}

Cholesky cholesky(const Matrix& s, double shift_tol) {
  if (s.rows() != s.cols()) {
    throw DimensionMismatch("cholesky: matrix must be square, got " + shape(s));
  }
  const Eigen::Index n = s.rows();
  const double norm = s.norm();
  if ((s - s.transpose()).norm() > 1e-12 * norm) {
    throw InvalidArgument("cholesky: matrix is not symmetric");
  }
  const double floor = shift_tol * norm;
  Cholesky out{Matrix::Zero(n, n), 0};
  Matrix& l = out.l;
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = s(j, j) - l.row(j).head(j).squaredNorm();
    if (pivot < -floor) {
      std::ostringstream os;
      os << "cholesky: pivot " << pivot << " at index " << j
         << " is below the clamp window";
      throw NotPositiveDefinite(os.str(), pivot);
    }
    if (pivot < floor || pivot == 0.0) {
      pivot = floor;
      ++out.clamped;
    }
    if (pivot == 0.0) {
      // Zero matrix with zero tolerance: leave the column empty.
      continue;
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      l(i, j) = (s(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / ljj;
    }
  }
  return out;
}

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("expm: matrix must be square, got " + shape(a));
  }
  if (a.rows() == 0) return Matrix(0, 0);
  if (!a.allFinite()) throw NumericalFailure("expm: non-finite input");
  Matrix e = a.exp();
  if (!e.allFinite()) {
    throw NumericalFailure("expm: result overflowed for input of norm " +
                           std::to_string(a.norm()));
  }
  return e;
}

double default_rank_tol(const Matrix& m) {
  return static_cast<double>(std::max<Eigen::Index>({m.rows(), m.cols(), 1})) *
         kEps;
}

int numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  if (rel_tol <= 0.0) rel_tol = default_rank_tol(m);
  const Vector s = svd(m).s;
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double threshold = rel_tol * s(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) ++rank;
  }
  return rank;
}

Matrix orthonormal_range(const Matrix& m, int ncols) {
  if (ncols == 0) return Matrix(m.rows(), 0);
  const Svd d = svd(m, /*full=*/true);
  return d.u.leftCols(ncols);
}

double max_singular_value(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::JacobiSVD<ComplexMatrix> dec(m);
  return dec.singularValues()(0);
}

}  // namespace baltrunc::linalg
