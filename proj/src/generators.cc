#include "baltrunc/generators.h"

#include <random>

#include "baltrunc/errors.h"

namespace baltrunc {

StateSpaceModel random_stable(int n, int inputs, int outputs, double shift,
                              std::uint64_t seed) {
  if (n < 1 || inputs < 1 || outputs < 1) {
    throw InvalidArgument("random_stable: dimensions must be positive");
  }
  if (!(shift > 0.0)) throw InvalidArgument("random_stable: shift must be > 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&](int rows, int cols) {
    Matrix out(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) out(i, j) = normal(rng);
    }
    return out;
  };
  Matrix g = draw(n, n);
  Matrix b = draw(n, inputs);
  Matrix c = draw(outputs, n);
  const double radius = linalg::eigenvalues(g).cwiseAbs().maxCoeff();
  g.diagonal().array() -= radius + shift;
  return StateSpaceModel::from(std::move(g), std::move(b), std::move(c));
}

StateSpaceModel mass_spring_chain(int masses, double mass, double stiffness,
                                  double damping) {
  if (masses < 1) throw InvalidArgument("mass_spring_chain: size must be >= 1");
  if (!(mass > 0.0) || !(stiffness > 0.0) || !(damping >= 0.0)) {
    throw InvalidArgument(
        "mass_spring_chain: mass, stiffness must be > 0 and damping >= 0");
  }
  const int k = masses;
  // Coupling Laplacian with a wall spring on the first mass.
  Matrix lap = Matrix::Zero(k, k);
  lap(0, 0) += 1.0;
  for (int i = 0; i + 1 < k; ++i) {
    lap(i, i) += 1.0;
    lap(i + 1, i + 1) += 1.0;
    lap(i, i + 1) -= 1.0;
    lap(i + 1, i) -= 1.0;
  }
  Matrix a = Matrix::Zero(2 * k, 2 * k);
  a.topRightCorner(k, k).setIdentity();
  a.bottomLeftCorner(k, k) = -(stiffness / mass) * lap;
  a.bottomRightCorner(k, k) = -(damping / mass) * lap;
  Matrix b = Matrix::Zero(2 * k, 1);
  b(k, 0) = 1.0 / mass;
  Matrix c = Matrix::Zero(1, 2 * k);
  c(0, k - 1) = 1.0;
  return StateSpaceModel::from(std::move(a), std::move(b), std::move(c));
}

StateSpaceModel rc_ladder(int sections, double resistance, double capacitance) {
  if (sections < 1) throw InvalidArgument("rc_ladder: size must be >= 1");
  if (!(resistance > 0.0) || !(capacitance > 0.0)) {
    throw InvalidArgument("rc_ladder: resistance and capacitance must be > 0");
  }
  const int k = sections;
  const double rate = 1.0 / (resistance * capacitance);
  Matrix a = Matrix::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    // Current in from the left resistor, out through the right one.
    a(i, i) -= rate;
    if (i > 0) a(i, i - 1) += rate;
    if (i + 1 < k) {
      a(i, i) -= rate;
      a(i, i + 1) += rate;
    }
  }
  Matrix b = Matrix::Zero(k, 1);
  b(0, 0) = rate;
  Matrix c = Matrix::Zero(1, k);
  c(0, k - 1) = 1.0;
  return StateSpaceModel::from(std::move(a), std::move(b), std::move(c));
}

namespace {

double param(const GeneratorParams& params, std::string_view key,
             double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

StateSpaceModel gen_example(std::string_view kind, int size,
                            const GeneratorParams& params, std::uint64_t seed) {
  if (kind == "random_stable") {
    return random_stable(size, static_cast<int>(param(params, "inputs", 1)),
                         static_cast<int>(param(params, "outputs", 1)),
                         param(params, "shift", 0.5), seed);
  }
  if (kind == "mass_spring_chain") {
    return mass_spring_chain(size, param(params, "mass", 1.0),
                             param(params, "stiffness", 1.0),
                             param(params, "damping", 0.1));
  }
  if (kind == "rc_ladder") {
    return rc_ladder(size, param(params, "resistance", 1.0),
                     param(params, "capacitance", 1.0));
  }
  throw InvalidArgument("unknown example kind '" + std::string(kind) +
                        "' (expected random_stable, mass_spring_chain or "
                        "rc_ladder)");
}

}  // namespace baltrunc
