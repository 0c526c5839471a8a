#pragma once

#include <variant>

#include "baltrunc/statespace.h"

namespace baltrunc {

struct FiniteHorizon {
  double tau;
};
struct InfiniteHorizon {};
using Horizon = std::variant<FiniteHorizon, InfiniteHorizon>;

/// Controllability gramian xc and observability gramian yo.
struct GramianPair {
  Matrix xc;
  Matrix yo;
  Horizon horizon = InfiniteHorizon{};
};

enum class LyapunovMethod {
  kAuto,       // Kronecker for n <= kKroneckerMaxOrder, Schur otherwise
  kKronecker,  // dense n²×n² solve
  kSchur,      // complex Schur + triangular back-substitution
};

inline constexpr Eigen::Index kKroneckerMaxOrder = 16;

/// Solves aX + Xaᵀ + q = 0 for stable a and symmetric q. The result is
/// symmetrized. Throws UnstableSystem when a has an eigenvalue with
/// non-negative real part.
Matrix lyapunov_solve(const Matrix& a, const Matrix& q,
                      LyapunovMethod method = LyapunovMethod::kAuto);

/// Lower-triangular L with L·Lᵀ = X, where aX + Xaᵀ + bbᵀ = 0 (Hammarling's
/// method on the complex Schur form of a). X itself is never formed, so its
/// small eigenvalues keep much more relative accuracy than a Cholesky
/// factorization of the computed X would give.
Matrix lyapunov_factor(const Matrix& a, const Matrix& b);

/// xc solves AX + XAᵀ + BBᵀ = 0, yo solves AᵀY + YA + CᵀC = 0.
GramianPair infinite_gramians(const StateSpaceModel& model);

/// ∫₀^τ e^{At}BBᵀe^{Aᵀt}dt and its dual, from the block-triangular
/// exponential of [[A, BBᵀ], [0, −Aᵀ]]. Stability is not required.
GramianPair finite_gramians(const StateSpaceModel& model, double tau);

/// x0ᵀ·yo·x0: the output energy of the free response from x0.
double output_energy(const GramianPair& gramians, const Vector& x0);

/// x0ᵀ·xc⁻¹·x0: the least input energy steering the state from rest to x0.
/// Requires xc strictly positive definite (min eigenvalue above
/// 1e-12·trace(xc)); otherwise throws NotPositiveDefinite.
double min_input_energy(const GramianPair& gramians, const Vector& x0);

}  // namespace baltrunc
