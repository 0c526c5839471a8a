#include "baltrunc/linalg.h"

#include <gtest/gtest.h>

#include "baltrunc/errors.h"
#include "test_support.h"

namespace baltrunc {
namespace {

using testing::naive_multiply;
using testing::random_matrix;

// Greedy multiset match of two complex vectors; returns the worst distance.
double multiset_distance(ComplexVector x, ComplexVector y) {
  double worst = 0.0;
  std::vector<bool> used(y.size(), false);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index arg = -1;
    for (Eigen::Index j = 0; j < y.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x(i) - y(j));
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

TEST(Multiply, IdentityAndHandArithmetic) {
  std::mt19937_64 rng(1);
  const Matrix m = random_matrix(3, 4, rng);
  EXPECT_EQ(linalg::multiply(Matrix::Identity(3, 3), m), m);
  Matrix a(2, 2), b(2, 1), expected(2, 1);
  a << 1, 2, 3, 4;
  b << 0, 1;
  expected << 2, 4;
  EXPECT_EQ(linalg::multiply(a, b), expected);
}

TEST(Multiply, AgreesWithTripleLoop) {
  std::mt19937_64 rng(2);
  const Matrix a = random_matrix(5, 7, rng);
  const Matrix b = random_matrix(7, 3, rng);
  EXPECT_LE((linalg::multiply(a, b) - naive_multiply(a, b)).cwiseAbs().maxCoeff(),
            1e-13);
}

TEST(Multiply, DimensionMismatchNamesShapes) {
  try {
    linalg::multiply(Matrix::Zero(2, 3), Matrix::Zero(2, 3));
    FAIL();
  } catch (const DimensionMismatch& e) {
    EXPECT_NE(std::string(e.what()).find("2x3"), std::string::npos);
  }
}

TEST(Multiply, Associativity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(6, 4, rng);
    const Matrix b = random_matrix(4, 5, rng);
    const Matrix c = random_matrix(5, 3, rng);
    const double scale = a.norm() * b.norm() * c.norm();
    const Matrix left = linalg::multiply(linalg::multiply(a, b), c);
    const Matrix right = linalg::multiply(a, linalg::multiply(b, c));
    EXPECT_LE((left - right).norm(), 1e-10 * scale);
  }
}

TEST(Solve, IdentityAndDiagonal) {
  Matrix b(2, 1);
  b << 2, 8;
  EXPECT_EQ(linalg::solve(Matrix::Identity(2, 2), b), b);
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 2, 4;
  Matrix expected(2, 1);
  expected << 1, 2;
  EXPECT_LE((linalg::solve(d, b) - expected).norm(), 1e-15);
}

TEST(Solve, ResidualWellConditioned) {
  std::mt19937_64 rng(4);
  Matrix a = random_matrix(10, 10, rng);
  a.diagonal().array() += 10.0;
  const Matrix b = random_matrix(10, 2, rng);
  const Matrix x = linalg::solve(a, b);
  EXPECT_LE((a * x - b).lpNorm<Eigen::Infinity>(),
            1e-10 * b.lpNorm<Eigen::Infinity>());
}

TEST(Solve, ResidualUpToCondition1e8) {
  std::mt19937_64 rng(5);
  for (double cond : {1e2, 1e5, 1e8}) {
    const Matrix a = testing::random_with_condition(12, cond, rng);
    const Matrix b = random_matrix(12, 1, rng);
    const Matrix x = linalg::solve(a, b);
    EXPECT_LE((a * x - b).norm(), 1e-9 * (a.norm() * x.norm() + b.norm()));
  }
}

TEST(Solve, SingularCarriesPivot) {
  Matrix a(2, 2);
  a << 1, 2, 2, 4;
  try {
    linalg::solve(a, Matrix::Ones(2, 1));
    FAIL();
  } catch (const SingularMatrix& e) {
    EXPECT_LT(e.pivot(), 1e-12);
  }
}

TEST(Svd, IdentityAndDiagonal) {
  EXPECT_EQ(linalg::svd(Matrix::Identity(2, 2)).s, Vector::Ones(2));
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 3, -2;
  const Vector s = linalg::svd(d).s;
  EXPECT_NEAR(s(0), 3.0, 1e-15);
  EXPECT_NEAR(s(1), 2.0, 1e-15);
}

TEST(Svd, ReconstructionAndOrthogonality) {
  std::mt19937_64 rng(6);
  for (auto [r, c] : {std::pair{8, 5}, {5, 8}, {20, 20}, {50, 50}, {50, 31}}) {
    const Matrix m = random_matrix(r, c, rng);
    const linalg::Svd d = linalg::svd(m);
    const Matrix rebuilt = d.u * d.s.asDiagonal() * d.v.transpose();
    EXPECT_LE((rebuilt - m).norm(), 1e-12 * m.norm()) << r << "x" << c;
    const auto k = d.s.size();
    EXPECT_LE((d.u.transpose() * d.u - Matrix::Identity(k, k)).norm(), 1e-12);
    EXPECT_LE((d.v.transpose() * d.v - Matrix::Identity(k, k)).norm(), 1e-12);
    for (Eigen::Index i = 1; i < k; ++i) EXPECT_GE(d.s(i - 1), d.s(i));
    EXPECT_GE(d.s.minCoeff(), 0.0);
  }
}

TEST(Svd, FullFactorsAreSquare) {
  std::mt19937_64 rng(7);
  const Matrix m = random_matrix(6, 2, rng);
  const linalg::Svd d = linalg::svd(m, /*full=*/true);
  EXPECT_EQ(d.u.rows(), 6);
  EXPECT_EQ(d.u.cols(), 6);
  EXPECT_LE((d.u.transpose() * d.u - Matrix::Identity(6, 6)).norm(), 1e-12);
}

TEST(Eigenvalues, DiagonalAndRotation) {
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << -1, -2;
  ComplexVector expected(2);
  expected << -1.0, -2.0;
  EXPECT_LE(multiset_distance(linalg::eigenvalues(d), expected), 1e-14);

  Matrix rot(2, 2);
  rot << 0, 1, -1, 0;
  ComplexVector pm(2);
  pm << std::complex<double>(0, 1), std::complex<double>(0, -1);
  EXPECT_LE(multiset_distance(linalg::eigenvalues(rot), pm), 1e-14);
}

TEST(Eigenvalues, CompanionCubicRoots) {
  // (λ+1)(λ+2)(λ+3) = λ³ + 6λ² + 11λ + 6.
  Matrix comp(3, 3);
  comp << 0, 1, 0, 0, 0, 1, -6, -11, -6;
  const ComplexVector ev = linalg::eigenvalues(comp);
  for (Eigen::Index i = 0; i < 3; ++i) {
    const auto l = ev(i);
    EXPECT_LE(std::abs(l * l * l + 6.0 * l * l + 11.0 * l + 6.0), 1e-10);
  }
  ComplexVector roots(3);
  roots << -1.0, -2.0, -3.0;
  EXPECT_LE(multiset_distance(ev, roots), 1e-10);
}

TEST(Eigenvalues, TransposeHasSameSpectrum) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(9, 9, rng);
    EXPECT_LE(multiset_distance(linalg::eigenvalues(a),
                                linalg::eigenvalues(a.transpose())),
              1e-9);
  }
}

TEST(Cholesky, HandFactorization) {
  EXPECT_EQ(linalg::cholesky(Matrix::Identity(3, 3), 0.0).l,
            Matrix::Identity(3, 3));
  Matrix s(2, 2), expected(2, 2);
  s << 4, 2, 2, 2;
  expected << 2, 0, 1, 1;
  const auto f = linalg::cholesky(s, 0.0);
  EXPECT_LE((f.l - expected).norm(), 1e-15);
  EXPECT_EQ(f.clamped, 0);
}

TEST(Cholesky, RandomReconstruction) {
  std::mt19937_64 rng(9);
  const Matrix g = random_matrix(12, 12, rng);
  const Matrix s = g.transpose() * g + 1e-3 * Matrix::Identity(12, 12);
  const Matrix l = linalg::cholesky(s, 0.0).l;
  EXPECT_LE((l * l.transpose() - s).norm(), 1e-12 * s.norm());
  EXPECT_TRUE(l.isLowerTriangular());
}

TEST(Cholesky, ClampsSemidefiniteAndRejectsIndefinite) {
  Matrix semi(2, 2);
  semi << 1, 1, 1, 1;
  const auto f = linalg::cholesky(semi, 1e-12);
  EXPECT_EQ(f.clamped, 1);
  EXPECT_LE((f.l * f.l.transpose() - semi).norm(), 1e-11);

  Matrix indef(2, 2);
  indef << 1, 0, 0, -1;
  EXPECT_THROW(linalg::cholesky(indef, 1e-12), NotPositiveDefinite);
}

TEST(Expm, ZeroDiagonalNilpotent) {
  EXPECT_EQ(linalg::expm(Matrix::Zero(3, 3)), Matrix::Identity(3, 3));
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 1, -1;
  const Matrix e = linalg::expm(d);
  EXPECT_NEAR(e(0, 0), std::exp(1.0), 1e-15);
  EXPECT_NEAR(e(1, 1), std::exp(-1.0), 1e-16);
  EXPECT_EQ(e(0, 1), 0.0);
  Matrix nil = Matrix::Zero(2, 2);
  nil(0, 1) = 0.7;
  Matrix expected = Matrix::Identity(2, 2);
  expected(0, 1) = 0.7;
  EXPECT_LE((linalg::expm(nil) - expected).norm(), 1e-15);
}

TEST(Expm, Semigroup) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = random_matrix(6, 6, rng);
    a *= (5.0 * (trial + 1) / 20.0) / a.norm();
    const Matrix e = linalg::expm(a);
    const Matrix e2 = linalg::expm(2.0 * a);
    EXPECT_LE((e * e - e2).norm(), 1e-9 * e2.norm());
  }
}

TEST(Expm, RotationGenerator) {
  Matrix a(2, 2);
  const double t = 2.5;
  a << 0, t, -t, 0;
  Matrix expected(2, 2);
  expected << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
  EXPECT_LE((linalg::expm(a) - expected).norm(), 1e-13);
}

TEST(Expm, OverflowIsNumericalFailure) {
  EXPECT_THROW(linalg::expm(Matrix::Constant(1, 1, 1e4)), NumericalFailure);
}

TEST(NumericalRank, Cases) {
  EXPECT_EQ(linalg::numerical_rank(Matrix::Identity(4, 4)), 4);
  EXPECT_EQ(linalg::numerical_rank(Matrix::Zero(3, 3)), 0);
  std::mt19937_64 rng(11);
  const Matrix u = random_matrix(6, 1, rng);
  const Matrix v = random_matrix(6, 1, rng);
  EXPECT_EQ(linalg::numerical_rank(u * v.transpose()), 1);
  EXPECT_EQ(linalg::numerical_rank(random_matrix(5, 3, rng)), 3);
}

}  // namespace
}  // namespace baltrunc
