#include "baltrunc/realization.h"

#include <gtest/gtest.h>

#include "baltrunc/errors.h"
#include "test_support.h"

namespace baltrunc {
namespace {

using testing::random_matrix;

Matrix nilpotent2() {
  Matrix a(2, 2);
  a << 0, 1, 0, 0;
  return a;
}

StateSpaceModel decoupled_siso() {
  Matrix a = Matrix::Zero(2, 2);
  a.diagonal() << -1, -2;
  Matrix b(2, 1), c(1, 2);
  b << 1, 0;
  c << 1, 0;
  return StateSpaceModel::from(a, b, c);
}

// Zero blocks of the four-block form, as (row block, column block).
void expect_kalman_pattern(const KalmanDecomposition& kd, double tol) {
  const StateSpaceModel& s = kd.transformed;
  const int sz[4] = {kd.dim_co, kd.dim_cno, kd.dim_nco, kd.dim_ncno};
  int off[4] = {0, 0, 0, 0};
  for (int k = 1; k < 4; ++k) off[k] = off[k - 1] + sz[k - 1];
  const double scale = model_scale(s);
  const std::pair<int, int> zeros[] = {{0, 1}, {0, 3}, {2, 0}, {2, 1},
                                       {2, 3}, {3, 0}, {3, 1}};
  for (auto [i, j] : zeros) {
    if (sz[i] == 0 || sz[j] == 0) continue;
    EXPECT_LE(s.a.block(off[i], off[j], sz[i], sz[j]).norm(), tol * scale)
        << "A" << i + 1 << j + 1;
  }
  for (int k : {2, 3}) {
    if (sz[k]) {
      EXPECT_LE(s.b.middleRows(off[k], sz[k]).norm(), tol * scale);
    }
  }
  for (int k : {1, 3}) {
    if (sz[k]) {
      EXPECT_LE(s.c.middleCols(off[k], sz[k]).norm(), tol * scale);
    }
  }
}

TEST(KrylovMatrices, HandExamples) {
  Matrix b(2, 1), expected(2, 2);
  b << 0, 1;
  expected << 0, 1, 1, 0;
  EXPECT_EQ(controllability_matrix(nilpotent2(), b), expected);
  Matrix c(1, 2);
  c << 1, 0;
  EXPECT_EQ(observability_matrix(c, nilpotent2()), Matrix::Identity(2, 2));

  EXPECT_EQ(controllability_matrix(nilpotent2(), Matrix::Zero(2, 2)),
            Matrix::Zero(2, 4));
  EXPECT_EQ(observability_matrix(Matrix::Zero(3, 2), nilpotent2()),
            Matrix::Zero(6, 2));
  const Matrix b1 = Matrix::Constant(1, 2, 4.0);
  EXPECT_EQ(controllability_matrix(Matrix::Constant(1, 1, -3.0), b1), b1);
}

TEST(KrylovMatrices, Duality) {
  std::mt19937_64 rng(31);
  const Matrix a = random_matrix(5, 5, rng);
  const Matrix c = random_matrix(2, 5, rng);
  EXPECT_LE((observability_matrix(c, a) -
             controllability_matrix(a.transpose(), c.transpose()).transpose())
                .norm(),
            1e-12 * observability_matrix(c, a).norm());
}

TEST(KrylovMatrices, DimensionMismatch) {
  EXPECT_THROW(controllability_matrix(Matrix::Zero(2, 2), Matrix::Zero(3, 1)),
               DimensionMismatch);
  EXPECT_THROW(observability_matrix(Matrix::Zero(1, 3), Matrix::Zero(2, 2)),
               DimensionMismatch);
}

TEST(PairTests, Examples) {
  Matrix b(2, 1), c(1, 2);
  b << 0, 1;
  c << 1, 0;
  EXPECT_TRUE(is_controllable_pair(nilpotent2(), b));
  EXPECT_FALSE(is_controllable_pair(nilpotent2(), Matrix::Zero(2, 1)));
  const StateSpaceModel s = decoupled_siso();
  EXPECT_FALSE(is_controllable_pair(s.a, s.b));
  EXPECT_TRUE(is_observable_pair(c, nilpotent2()));
  EXPECT_FALSE(is_observable_pair(Matrix::Zero(1, 2), nilpotent2()));
}

TEST(PairTests, ObservableIsDualOfControllable) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 6;
    Matrix a = random_matrix(n, n, rng);
    Matrix c = random_matrix(1 + trial % 2, n, rng);
    if (trial % 3 == 0) {
      // e₀ becomes an unobservable eigenvector.
      c.col(0).setZero();
      a.col(0).tail(n - 1).setZero();
    }
    EXPECT_EQ(is_observable_pair(c, a),
              is_controllable_pair(a.transpose(), c.transpose()));
  }
}

TEST(ControllableStaircase, FullRankAndZero) {
  const auto s = testing::random_minimal(5, 1, 1, 7);
  EXPECT_EQ(controllable_staircase(s).rank, 5);
  StateSpaceModel z = s;
  z.b.setZero();
  EXPECT_EQ(controllable_staircase(z).rank, 0);
}

TEST(ControllableStaircase, PlantedUncontrollableMode) {
  const Staircase st = controllable_staircase(decoupled_siso());
  EXPECT_EQ(st.rank, 1);
  EXPECT_LE(std::abs(st.transformed.b(1, 0)), 1e-12);
  EXPECT_LE(std::abs(st.transformed.a(1, 0)), 1e-12);
}

TEST(ControllableStaircase, StructureOnPlantedModels) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const testing::KalmanDims dims{1 + trial % 3, trial % 2, 1 + trial % 2,
                                   trial % 3 == 0};
    const auto planted = testing::planted_kalman(dims, 2, 2, rng);
    const Staircase st = controllable_staircase(planted.masked);
    const int n = dims.total();
    const int rc = dims.co + dims.cno;
    ASSERT_EQ(st.rank, rc);
    const double scale = model_scale(planted.masked);
    EXPECT_LE(st.transformed.a.bottomLeftCorner(n - rc, rc).norm(), 1e-8 * scale);
    EXPECT_LE(st.transformed.b.bottomRows(n - rc).norm(), 1e-8 * scale);
    EXPECT_TRUE(is_controllable_pair(st.transformed.a.topLeftCorner(rc, rc),
                                     st.transformed.b.topRows(rc)));
    const Matrix& t = st.transform.t;
    EXPECT_LE((t.transpose() * t - Matrix::Identity(n, n)).norm(), 1e-10 * n);
  }
}

TEST(ControllableStaircase, RankMatchesKrylovRank) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 18;
    // Stable, well-scaled A and three inputs keep the Krylov matrix's rank
    // numerically unambiguous.
    const Matrix a = testing::random_stable_block(n, rng) / std::sqrt(double(n));
    Matrix b = random_matrix(n, 3, rng);
    if (trial % 2) b.col(2) = b.col(0) + b.col(1);
    const auto s = StateSpaceModel::from(a, b, random_matrix(1, n, rng));
    const int expected = static_cast<int>(
        linalg::numerical_rank(controllability_matrix(a, b), 1e-10));
    EXPECT_EQ(controllable_staircase(s).rank, expected) << "n=" << n;
  }
}

TEST(ObservableStaircase, Examples) {
  StateSpaceModel z = testing::random_minimal(4, 1, 1, 8);
  z.c.setZero();
  EXPECT_EQ(observable_staircase(z).rank, 0);
  EXPECT_EQ(observable_staircase(decoupled_siso()).rank, 1);
  const auto s = testing::random_minimal(7, 1, 2, 9);
  EXPECT_EQ(observable_staircase(s).rank,
            linalg::numerical_rank(observability_matrix(s.c, s.a)));
}

TEST(ObservableStaircase, DualStructure) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const testing::KalmanDims dims{1 + trial % 2, 1, trial % 3, trial % 2};
    const auto planted = testing::planted_kalman(dims, 1, 2, rng);
    const Staircase st = observable_staircase(planted.masked);
    const int n = dims.total();
    const int ro = dims.co + dims.nco;
    ASSERT_EQ(st.rank, ro);
    const double scale = model_scale(planted.masked);
    EXPECT_LE(st.transformed.a.topRightCorner(ro, n - ro).norm(), 1e-8 * scale);
    EXPECT_LE(st.transformed.c.rightCols(n - ro).norm(), 1e-8 * scale);
    const StateSpaceModel& m = planted.masked;
    const StateSpaceModel dual = StateSpaceModel::from(
        m.a.transpose(), m.c.transpose(), m.b.transpose(), m.d.transpose());
    EXPECT_EQ(st.rank, controllable_staircase(dual).rank);
  }
}

TEST(KalmanDecompose, MinimalModel) {
  const auto kd = kalman_decompose(testing::random_minimal(6, 2, 2, 10));
  EXPECT_EQ(kd.dim_co, 6);
  EXPECT_EQ(kd.dim_cno + kd.dim_nco + kd.dim_ncno, 0);
  EXPECT_FALSE(kd.empty_minimal);
}

TEST(KalmanDecompose, DecoupledSubsystems) {
  // Block diagonal: (2 co), (1 c only), (1 o only), (1 neither).
  Matrix a = Matrix::Zero(5, 5);
  a.diagonal() << -1, -2, -3, -4, -5;
  a(0, 1) = 1.0;
  Matrix b = Matrix::Zero(5, 1), c = Matrix::Zero(1, 5);
  b(1, 0) = 1;
  b(2, 0) = 1;
  c(0, 0) = 1;
  c(0, 3) = 1;
  const auto kd = kalman_decompose(StateSpaceModel::from(a, b, c));
  EXPECT_EQ(kd.dim_co, 2);
  EXPECT_EQ(kd.dim_cno, 1);
  EXPECT_EQ(kd.dim_nco, 1);
  EXPECT_EQ(kd.dim_ncno, 1);
  expect_kalman_pattern(kd, 1e-8);
}

TEST(KalmanDecompose, FullyDisconnected) {
  std::mt19937_64 rng(36);
  const auto s = StateSpaceModel::from(testing::random_stable_block(4, rng),
                                       Matrix::Zero(4, 1), Matrix::Zero(1, 4));
  const auto kd = kalman_decompose(s);
  EXPECT_EQ(kd.dim_ncno, 4);
  EXPECT_TRUE(kd.empty_minimal);
}

TEST(KalmanDecompose, PlantedBlockPattern) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const testing::KalmanDims dims{1 + trial % 3, trial % 2, (trial / 2) % 3,
                                   (trial / 3) % 2};
    const auto planted = testing::planted_kalman(dims, 2, 2, rng);
    const auto kd = kalman_decompose(planted.masked);
    ASSERT_EQ(kd.dim_co, dims.co);
    ASSERT_EQ(kd.dim_cno, dims.cno);
    ASSERT_EQ(kd.dim_nco, dims.nco);
    ASSERT_EQ(kd.dim_ncno, dims.ncno);
    expect_kalman_pattern(kd, 1e-8);
    const auto& tr = kd.transform;
    const int n = dims.total();
    EXPECT_LE((tr.t * tr.t_inv - Matrix::Identity(n, n)).norm(), 1e-8 * n);
  }
}

TEST(MinimalRealization, AlreadyMinimal) {
  const auto s = testing::random_minimal(5, 1, 2, 11);
  const auto mr = minimal_realization(s);
  EXPECT_EQ(mr.model.n(), 5);
  EXPECT_LE(testing::max_relative_tf_error(s, mr.model,
                                           testing::log_omegas(1e-3, 1e3, 50)),
            1e-8);
}

TEST(MinimalRealization, PlantedFiveStateCore) {
  std::mt19937_64 rng(38);
  const auto planted = testing::planted_kalman({2, 1, 1, 1}, 1, 1, rng);
  const auto mr = minimal_realization(planted.masked);
  EXPECT_EQ(mr.model.n(), 2);
  EXPECT_LE(testing::max_relative_tf_error(planted.masked, mr.model,
                                           testing::log_omegas(1e-3, 1e3, 50)),
            1e-8);
  EXPECT_TRUE(is_controllable_pair(mr.model.a, mr.model.b));
  EXPECT_TRUE(is_observable_pair(mr.model.c, mr.model.a));
  EXPECT_EQ(mr.model.d, planted.masked.d);
}

TEST(MinimalRealization, SingleSurvivingState) {
  const auto mr = minimal_realization(decoupled_siso());
  ASSERT_EQ(mr.model.n(), 1);
  EXPECT_NEAR(transfer_at(mr.model, 0.0)(0, 0).real(), 1.0, 1e-12);
}

TEST(MinimalRealization, EmptyCoreKeepsD) {
  Matrix a = Matrix::Zero(2, 2);
  a.diagonal() << -1, -2;
  Matrix b(2, 1), c(1, 2);
  b << 1, 0;
  c << 0, 1;
  const auto s = StateSpaceModel::from(a, b, c, Matrix::Constant(1, 1, 0.3));
  const auto mr = minimal_realization(s);
  EXPECT_EQ(mr.model.n(), 0);
  EXPECT_TRUE(mr.decomposition.empty_minimal);
  EXPECT_EQ(mr.model.d, s.d);
  EXPECT_NEAR(transfer_at(mr.model, 2.0)(0, 0).real(), 0.3, 0.0);
}

TEST(MinimalRealization, PreservesTransferAndIsIdempotent) {
  std::mt19937_64 rng(39);
  const auto omegas = testing::log_omegas(1e-3, 1e3, 50);
  for (int trial = 0; trial < 20; ++trial) {
    const testing::KalmanDims dims{1 + trial % 4, trial % 3, (trial + 1) % 3,
                                   trial % 2};
    const auto planted = testing::planted_kalman(dims, 1 + trial % 2, 2, rng);
    const auto mr = minimal_realization(planted.masked);
    EXPECT_EQ(mr.model.n(), dims.co);
    EXPECT_LE(testing::max_relative_tf_error(planted.masked, mr.model, omegas),
              1e-7);
    EXPECT_EQ(minimal_realization(mr.model).model.n(), mr.model.n());
  }
}

}  // namespace
}  // namespace baltrunc
