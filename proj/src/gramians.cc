#include "baltrunc/gramians.h"

#include <cmath>
#include <sstream>

#include "baltrunc/errors.h"

namespace baltrunc {

namespace {

Matrix symmetrize(const Matrix& x) { return 0.5 * (x + x.transpose()); }

void check_lyapunov_args(const Matrix& a, const Matrix& q) {
  if (a.rows() != a.cols() || q.rows() != q.cols() || a.rows() != q.rows()) {
    throw DimensionMismatch("lyapunov_solve: A " + linalg::shape(a) +
                            " and Q " + linalg::shape(q) +
                            " must be square and of equal size");
  }
  if ((q - q.transpose()).norm() > 1e-10 * q.norm()) {
    throw InvalidArgument("lyapunov_solve: Q is not symmetric");
  }
}

[[noreturn]] void throw_unstable(double abscissa) {
  std::ostringstream os;
  os << "system is not asymptotically stable (spectral abscissa "
     << abscissa << ")";
  throw UnstableSystem(os.str(), abscissa);
}

void check_operator(double abscissa, const Matrix& a) {
  if (abscissa >= 0.0) throw_unstable(abscissa);
  if (-2.0 * abscissa <=
      static_cast<double>(a.rows()) * linalg::kEps * a.norm()) {
    throw NumericalFailure(
        "lyapunov_solve: Lyapunov operator is singular to working precision");
  }
}

Matrix solve_kronecker(const Matrix& a, const Matrix& q) {
  const auto n = a.rows();
  const auto nn = n * n;
  // Column-major vec: vec(AX + XAᵀ) = (I⊗A + A⊗I)·vec(X).
  Matrix k = Matrix::Zero(nn, nn);
  for (Eigen::Index j = 0; j < n; ++j) {
    k.block(j * n, j * n, n, n) += a;
    for (Eigen::Index l = 0; l < n; ++l) {
      if (a(j, l) == 0.0) continue;
      k.block(j * n, l * n, n, n).diagonal().array() += a(j, l);
    }
  }
  const Matrix rhs = -Eigen::Map<const Vector>(q.data(), nn);
  const Vector x = linalg::solve(k, rhs);
  return Eigen::Map<const Matrix>(x.data(), n, n);
}

// Bartels–Stewart on the complex Schur form A = U T Uᴴ. With Y = Uᴴ X U the
// equation becomes T Y + Y Tᴴ = −Uᴴ Q U, solved column by column from the
// right with upper-triangular back-substitution.
class SchurLyapunov {
 public:
  explicit SchurLyapunov(const Matrix& a) : schur_(a, /*computeU=*/true) {
    if (schur_.info() != Eigen::Success) {
      throw NumericalFailure("lyapunov_solve: Schur decomposition failed");
    }
  }

  double abscissa() const {
    return schur_.matrixT().diagonal().real().maxCoeff();
  }

  Matrix solve(const Matrix& q) const {
    const ComplexMatrix& t = schur_.matrixT();
    const ComplexMatrix& u = schur_.matrixU();
    const auto n = t.rows();
    const ComplexMatrix f = u.adjoint() * q * u;
    ComplexMatrix y = ComplexMatrix::Zero(n, n);
    ComplexMatrix shifted = t;
    for (Eigen::Index j = n - 1; j >= 0; --j) {
      ComplexVector rhs = -f.col(j);
      const auto tail = n - 1 - j;
      if (tail > 0) {
        rhs.noalias() -=
            y.rightCols(tail) * t.row(j).tail(tail).adjoint();
      }
      const std::complex<double> shift = std::conj(t(j, j));
      shifted.diagonal() = t.diagonal().array() + shift;
      y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
    }
    return (u * y * u.adjoint()).real();
  }

  // Upper-triangular R with T Y + Y Tᴴ + G Gᴴ = 0 for Y = R Rᴴ, G = Uᴴ b.
  // Peels off the last state each step: with υ = R(k,k) and u the part of
  // column k above it, υ² = −‖g‖²/(2 Re τ), (T₁ + τ̄ I) u = −(t υ + G₁ gᴴ/υ),
  // and the leading problem continues with G₁ − u g/υ.
  ComplexMatrix factor(const Matrix& b) const {
    const ComplexMatrix& t = schur_.matrixT();
    const auto n = t.rows();
    ComplexMatrix g = schur_.matrixU().adjoint() * b;
    if (g.cols() > n) {
      // Same G Gᴴ with at most n columns.
      Eigen::HouseholderQR<ComplexMatrix> qr(g.adjoint());
      g = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
      g.adjointInPlace();
    }
    ComplexMatrix r = ComplexMatrix::Zero(n, n);
    ComplexMatrix shifted = t;
    for (Eigen::Index k = n - 1; k >= 0; --k) {
      const Eigen::RowVectorXcd gk = g.row(k);
      const double gnorm2 = gk.squaredNorm();
      if (gnorm2 == 0.0) continue;
      const std::complex<double> tau = t(k, k);
      const double ups = std::sqrt(gnorm2 / (-2.0 * tau.real()));
      r(k, k) = ups;
      if (k == 0) break;
      const ComplexVector rhs =
          -(t.col(k).head(k) * ups + g.topRows(k) * gk.adjoint() / ups);
      auto lead = shifted.topLeftCorner(k, k);
      lead.diagonal() = t.diagonal().head(k).array() + std::conj(tau);
      const ComplexVector u = lead.triangularView<Eigen::Upper>().solve(rhs);
      r.col(k).head(k) = u;
      g.topRows(k).noalias() -= u * gk / ups;
    }
    return schur_.matrixU() * r;
  }

 private:
  Eigen::ComplexSchur<Matrix> schur_;
};

}  // namespace

Matrix lyapunov_solve(const Matrix& a, const Matrix& q,
                      LyapunovMethod method) {
  check_lyapunov_args(a, q);
  const auto n = a.rows();
  if (n == 0) return Matrix(0, 0);
  if (!a.allFinite() || !q.allFinite()) {
    throw NumericalFailure("lyapunov_solve: non-finite input");
  }
  if (method == LyapunovMethod::kAuto) {
    method = n <= kKroneckerMaxOrder ? LyapunovMethod::kKronecker
                                     : LyapunovMethod::kSchur;
  }
  if (method == LyapunovMethod::kKronecker) {
    check_operator(linalg::spectral_abscissa(a), a);
    if (q.isZero(0.0)) return Matrix::Zero(n, n);
    return symmetrize(solve_kronecker(a, q));
  }
  const SchurLyapunov solver(a);
  check_operator(solver.abscissa(), a);
  if (q.isZero(0.0)) return Matrix::Zero(n, n);
  Matrix x = symmetrize(solver.solve(q));
  // One step of residual correction.
  const Matrix residual = a * x + x * a.transpose() + q;
  x += symmetrize(solver.solve(symmetrize(residual)));
  return x;
}

Matrix lyapunov_factor(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) {
    throw DimensionMismatch("lyapunov_factor: A " + linalg::shape(a) +
                            " and B " + linalg::shape(b) + " do not conform");
  }
  const auto n = a.rows();
  if (n == 0) return Matrix(0, 0);
  if (!a.allFinite() || !b.allFinite()) {
    throw NumericalFailure("lyapunov_factor: non-finite input");
  }
  const SchurLyapunov solver(a);
  check_operator(solver.abscissa(), a);
  // X = Z Zᴴ is real, so X = W Wᵀ with W = [Re Z, Im Z]; a QR of Wᵀ brings
  // that back to a square triangular factor.
  const ComplexMatrix z = solver.factor(b);
  Matrix wt(2 * n, n);
  wt << z.real().transpose(), z.imag().transpose();
  Eigen::HouseholderQR<Matrix> qr(wt);
  Matrix l = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  l.transposeInPlace();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (l(j, j) < 0.0) l.col(j) *= -1.0;
  }
  return l;
}

GramianPair infinite_gramians(const StateSpaceModel& model) {
  require_valid(model);
  const Stability st = is_stable(model);
  if (!st.stable) throw_unstable(st.spectral_abscissa);
  GramianPair g;
  g.xc = lyapunov_solve(model.a, model.b * model.b.transpose());
  g.yo = lyapunov_solve(model.a.transpose(), model.c.transpose() * model.c);
  g.horizon = InfiniteHorizon{};
  return g;
}

namespace {

// ∫₀^τ e^{As} Q e^{Aᵀs} ds. The Van Loan block exponential is taken over a
// short step and the interval is then doubled: X(2h) = X(h) + Φ X(h) Φᵀ.
Matrix finite_integral(const Matrix& a, const Matrix& q, double tau) {
  const auto n = a.rows();
  const double norm = a.lpNorm<1>();
  int doublings = 0;
  double h = tau;
  while (norm * h > 0.5 && doublings < 64) {
    h *= 0.5;
    ++doublings;
  }
  Matrix m(2 * n, 2 * n);
  m << a, q, Matrix::Zero(n, n), -a.transpose();
  const Matrix e = linalg::expm(m * h);
  Matrix phi = e.topLeftCorner(n, n);
  Matrix x = e.topRightCorner(n, n) * phi.transpose();
  for (int i = 0; i < doublings; ++i) {
    x += phi * x * phi.transpose();
    phi = phi * phi;
  }
  if (!x.allFinite()) {
    throw NumericalFailure("finite_gramians: integral overflowed");
  }
  return symmetrize(x);
}

}  // namespace

GramianPair finite_gramians(const StateSpaceModel& model, double tau) {
  require_valid(model);
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidArgument("finite_gramians: tau must be positive and finite");
  }
  GramianPair g;
  g.xc = finite_integral(model.a, model.b * model.b.transpose(), tau);
  g.yo = finite_integral(model.a.transpose(), model.c.transpose() * model.c,
                         tau);
  g.horizon = FiniteHorizon{tau};
  return g;
}

double output_energy(const GramianPair& gramians, const Vector& x0) {
  if (x0.size() != gramians.yo.rows()) {
    throw DimensionMismatch("output_energy: x0 has length " +
                            std::to_string(x0.size()) + ", gramian is " +
                            linalg::shape(gramians.yo));
  }
  return x0.dot(gramians.yo * x0);
}

double min_input_energy(const GramianPair& gramians, const Vector& x0) {
  const Matrix& xc = gramians.xc;
  if (x0.size() != xc.rows()) {
    throw DimensionMismatch("min_input_energy: x0 has length " +
                            std::to_string(x0.size()) + ", gramian is " +
                            linalg::shape(xc));
  }
  if (xc.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(xc, Eigen::EigenvaluesOnly);
  const double smallest = es.eigenvalues()(0);
  const double trace = xc.trace();
  if (!(smallest > 1e-12 * trace)) {
    std::ostringstream os;
    os << "min_input_energy: controllability gramian is not strictly positive "
          "definite (eigenvalue "
       << smallest << ")";
    throw NotPositiveDefinite(os.str(), smallest);
  }
  if (x0.isZero(0.0)) return 0.0;
  const Matrix l = linalg::cholesky(xc, 0.0).l;
  const Vector z = l.triangularView<Eigen::Lower>().solve(x0);
  return z.squaredNorm();
}

}  // namespace baltrunc
