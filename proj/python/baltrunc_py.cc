#include <optional>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "baltrunc/analysis.h"
#include "baltrunc/errors.h"
#include "baltrunc/generators.h"
#include "baltrunc/gramians.h"
#include "baltrunc/io.h"
#include "baltrunc/realization.h"
#include "baltrunc/reduction.h"
#include "baltrunc/statespace.h"

namespace py = pybind11;
using namespace baltrunc;

namespace {

OrderCriterion make_criterion(std::optional<int> order,
                              std::optional<double> error,
                              std::optional<double> floor) {
  const int given = (order ? 1 : 0) + (error ? 1 : 0) + (floor ? 1 : 0);
  if (given != 1) {
    throw InvalidArgument("exactly one of order, error, floor is required");
  }
  if (order) return ExplicitOrder{*order};
  if (error) return ErrorBudget{*error};
  return RelativeFloor{*floor};
}

}  // namespace

PYBIND11_MODULE(_baltrunc, m) {
  m.doc() = "Balanced truncation for continuous-time LTI state-space models";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base);
  py::register_exception<SingularMatrix>(m, "SingularMatrix", base);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", base);
  py::register_exception<NotPositiveDefinite>(m, "NotPositiveDefinite", base);
  py::register_exception<UnstableSystem>(m, "UnstableSystem", base);
  py::register_exception<Resonance>(m, "Resonance", base);
  py::register_exception<NoValidGap>(m, "NoValidGap", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);

  py::class_<StateSpaceModel>(m, "StateSpaceModel")
      .def(py::init([](Matrix a, Matrix b, Matrix c, std::optional<Matrix> d) {
             if (d) return StateSpaceModel::from(a, b, c, *d);
             return StateSpaceModel::from(a, b, c);
           }),
           py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d") = py::none())
      .def_readonly("a", &StateSpaceModel::a)
      .def_readonly("b", &StateSpaceModel::b)
      .def_readonly("c", &StateSpaceModel::c)
      .def_readonly("d", &StateSpaceModel::d)
      .def_property_readonly("n", &StateSpaceModel::n)
      .def_property_readonly("m", &StateSpaceModel::m)
      .def_property_readonly("p", &StateSpaceModel::p)
      .def("__repr__", [](const StateSpaceModel& s) {
        return "<StateSpaceModel n=" + std::to_string(s.n()) +
               " m=" + std::to_string(s.m()) + " p=" + std::to_string(s.p()) +
               ">";
      });

  py::class_<SimilarityTransform>(m, "SimilarityTransform")
      .def_readonly("t", &SimilarityTransform::t)
      .def_readonly("t_inv", &SimilarityTransform::t_inv)
      .def_readonly("condition_estimate",
                    &SimilarityTransform::condition_estimate);

  py::class_<KalmanDecomposition>(m, "KalmanDecomposition")
      .def_readonly("transformed", &KalmanDecomposition::transformed)
      .def_readonly("transform", &KalmanDecomposition::transform)
      .def_readonly("dim_co", &KalmanDecomposition::dim_co)
      .def_readonly("dim_cno", &KalmanDecomposition::dim_cno)
      .def_readonly("dim_nco", &KalmanDecomposition::dim_nco)
      .def_readonly("dim_ncno", &KalmanDecomposition::dim_ncno);

  py::class_<GramianPair>(m, "GramianPair")
      .def_readonly("xc", &GramianPair::xc)
      .def_readonly("yo", &GramianPair::yo);

  py::class_<BalancedRealization>(m, "BalancedRealization")
      .def_readonly("model", &BalancedRealization::model)
      .def_readonly("transform", &BalancedRealization::transform)
      .def_readonly("hsv", &BalancedRealization::hsv)
      .def_readonly("floor_clamped", &BalancedRealization::floor_clamped);

  py::class_<ReductionReport>(m, "ReductionReport")
      .def_readonly("original_order", &ReductionReport::original_order)
      .def_readonly("minimal_order", &ReductionReport::minimal_order)
      .def_readonly("reduced_order", &ReductionReport::reduced_order)
      .def_readonly("hsv_kept", &ReductionReport::hsv_kept)
      .def_readonly("hsv_truncated", &ReductionReport::hsv_truncated)
      .def_readonly("distinct_truncated", &ReductionReport::distinct_truncated)
      .def_readonly("lower_bound", &ReductionReport::lower_bound)
      .def_readonly("upper_bound", &ReductionReport::upper_bound)
      .def_readonly("gap_ratio", &ReductionReport::gap_ratio);

  py::class_<BoundVerification>(m, "BoundVerification")
      .def_readonly("lower_bound", &BoundVerification::lower_bound)
      .def_readonly("upper_bound", &BoundVerification::upper_bound)
      .def_readonly("freq_error_estimate",
                    &BoundVerification::freq_error_estimate)
      .def_readonly("argmax_omega", &BoundVerification::argmax_omega)
      .def_readonly("worst_time_ratio", &BoundVerification::worst_time_ratio)
      .def_readonly("num_trials", &BoundVerification::num_trials)
      .def_readonly("passed", &BoundVerification::passed);

  m.def("is_stable", [](const StateSpaceModel& s, double margin) {
    const Stability st = is_stable(s, margin);
    return py::make_tuple(st.stable, st.spectral_abscissa);
  }, py::arg("model"), py::arg("margin") = 0.0);
  m.def("transfer_at", &transfer_at, py::arg("model"), py::arg("omega"));
  m.def("lyapunov_solve",
        [](const Matrix& a, const Matrix& q) { return lyapunov_solve(a, q); },
        py::arg("a"), py::arg("q"));
  m.def("infinite_gramians", &infinite_gramians, py::arg("model"));
  m.def("finite_gramians", &finite_gramians, py::arg("model"), py::arg("tau"));
  m.def("kalman_decompose", &kalman_decompose, py::arg("model"),
        py::arg("rel_tol") = kDefaultRealizationTol);
  m.def("minimal_realization",
        [](const StateSpaceModel& s, double tol) {
          MinimalRealization mr = minimal_realization(s, tol);
          return py::make_tuple(mr.model, mr.decomposition);
        },
        py::arg("model"), py::arg("rel_tol") = kDefaultRealizationTol);
  m.def("hankel_singular_values",
        [](const StateSpaceModel& s) { return hankel_singular_values(s); },
        py::arg("model"));
  m.def("balance", [](const StateSpaceModel& s) { return balance(s); },
        py::arg("model"));
  m.def("truncate",
        [](const BalancedRealization& b, int r) {
          Truncation t = truncate(b, r);
          return py::make_tuple(t.model, t.report);
        },
        py::arg("balanced"), py::arg("r"));
  m.def("balanced_truncation",
        [](const StateSpaceModel& s, std::optional<int> order,
           std::optional<double> error, std::optional<double> floor,
           double tol) {
          ReductionOptions opts;
          opts.rel_tol = tol;
          ReductionResult res =
              balanced_truncation(s, make_criterion(order, error, floor), opts);
          return py::make_tuple(res.model, res.report, res.decomposition);
        },
        py::arg("model"), py::kw_only(), py::arg("order") = py::none(),
        py::arg("error") = py::none(), py::arg("floor") = py::none(),
        py::arg("rel_tol") = kDefaultRealizationTol);
  m.def("frequency_sweep",
        [](const StateSpaceModel& s, double w_min, double w_max, int points) {
          FrequencyResponse r = frequency_sweep(s, w_min, w_max, points);
          return py::make_tuple(r.omegas, r.values);
        },
        py::arg("model"), py::arg("w_min"), py::arg("w_max"),
        py::arg("points"));
  m.def("hinf_error_estimate",
        [](const StateSpaceModel& full, const StateSpaceModel& reduced,
           double w_min, double w_max, int points, int refine_iters) {
          HinfEstimate e = hinf_error_estimate(full, reduced, w_min, w_max,
                                               points, refine_iters);
          return py::make_tuple(e.estimate, e.argmax_omega);
        },
        py::arg("full"), py::arg("reduced"), py::arg("w_min"),
        py::arg("w_max"), py::arg("points") = 400,
        py::arg("refine_iters") = 20);
  m.def("simulate",
        [](const StateSpaceModel& s, const Matrix& u, double dt,
           std::optional<Vector> x0) {
          Signal sig;
          sig.dt = dt;
          sig.samples = u;
          SimulationResult r =
              simulate(s, sig, x0 ? *x0 : Vector::Zero(s.n()));
          return py::make_tuple(r.y.samples, r.x_final);
        },
        py::arg("model"), py::arg("u"), py::arg("dt"),
        py::arg("x0") = py::none());
  py::class_<VerifyOptions>(m, "VerifyOptions")
      .def(py::init<>())
      .def_readwrite("grid_points", &VerifyOptions::grid_points)
      .def_readwrite("refine_iters", &VerifyOptions::refine_iters)
      .def_readwrite("max_steps", &VerifyOptions::max_steps);
  m.def("verify_bound", &verify_bound, py::arg("full"), py::arg("reduced"),
        py::arg("report"), py::arg("trials") = 5, py::arg("seed") = 0,
        py::arg("options") = VerifyOptions{});
  m.def("gen_example",
        [](const std::string& kind, int size, const GeneratorParams& params,
           std::uint64_t seed) { return gen_example(kind, size, params, seed); },
        py::arg("kind"), py::arg("size"),
        py::arg("params") = GeneratorParams{}, py::arg("seed") = 0);
  m.def("save_model",
        [](const StateSpaceModel& s, const std::filesystem::path& p) {
          io::save_model(s, p);
        },
        py::arg("model"), py::arg("path"));
  m.def("load_model",
        [](const std::filesystem::path& p) { return io::load_model(p); },
        py::arg("path"));
}
