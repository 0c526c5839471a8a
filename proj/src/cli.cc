#include "baltrunc/cli.h"

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "baltrunc/analysis.h"
#include "baltrunc/errors.h"
#include "baltrunc/generators.h"
#include "baltrunc/io.h"
#include "baltrunc/realization.h"
#include "baltrunc/reduction.h"

namespace baltrunc::cli {

namespace {

using io::format_double;

double resolve_tol(const std::optional<double>& flag) {
  if (flag) {
    if (!(*flag > 0.0)) throw InvalidArgument("--tol must be positive");
    return *flag;
  }
  if (const char* env = std::getenv(kTolEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      throw InvalidArgument(std::string(kTolEnv) + " must be a positive number");
    }
    return v;
  }
  return kDefaultRealizationTol;
}

struct Options {
  // shared
  std::string model_path;
  std::string output_path;
  std::optional<double> tol;
  // hsv
  std::string csv_path;
  // reduce
  std::optional<int> order;
  std::optional<double> error_budget;
  std::optional<double> floor;
  std::string report_path;
  // bode
  double w_min = 1e-3;
  double w_max = 1e3;
  int points = 200;
  // simulate
  std::string input_path;
  std::string x0_path;
  // verify
  std::string full_path;
  std::string reduced_path;
  int trials = 5;
  std::uint64_t seed = 0;
  // gen
  std::string kind;
  int size = 0;
  std::vector<std::string> params;
  std::string label;
};

void run_info(const Options& o, std::ostream& out) {
  const StateSpaceModel model = io::load_model(o.model_path);
  const Stability st = is_stable(model);
  out << "order: " << model.n() << '\n'
      << "inputs: " << model.m() << '\n'
      << "outputs: " << model.p() << '\n'
      << "stable: " << (st.stable ? "true" : "false") << '\n'
      << "spectral_abscissa: " << format_double(st.spectral_abscissa) << '\n';
}

void run_minreal(const Options& o, std::ostream& out) {
  const StateSpaceModel model = io::load_model(o.model_path);
  const MinimalRealization mr = minimal_realization(model, resolve_tol(o.tol));
  io::save_model(mr.model, o.output_path);
  const KalmanDecomposition& kd = mr.decomposition;
  out << "original_order: " << model.n() << '\n'
      << "minimal_order: " << mr.model.n() << '\n'
      << "dim_co: " << kd.dim_co << '\n'
      << "dim_cno: " << kd.dim_cno << '\n'
      << "dim_nco: " << kd.dim_nco << '\n'
      << "dim_ncno: " << kd.dim_ncno << '\n';
}

void run_hsv(const Options& o, std::ostream& out, std::ostream& err) {
  const StateSpaceModel model = io::load_model(o.model_path);
  HsvDiagnostics diag;
  const Vector hsv = hankel_singular_values(model, &diag);
  out << std::left << std::setw(8) << "index" << "hsv\n";
  std::string csv = "index,hsv\n";
  for (Eigen::Index i = 0; i < hsv.size(); ++i) {
    out << std::left << std::setw(8) << (i + 1) << format_double(hsv(i))
        << '\n';
    csv += std::to_string(i + 1) + "," + format_double(hsv(i)) + "\n";
  }
  if (diag.floor_clamped > 0) {
    err << "warning: " << diag.floor_clamped
        << " HSV(s) clamped to the numerical floor; the model is close to "
           "non-minimal\n";
  }
  if (!o.csv_path.empty()) io::write_file(o.csv_path, csv);
}

void run_reduce(const Options& o, std::ostream& out) {
  const int given = (o.order ? 1 : 0) + (o.error_budget ? 1 : 0) + (o.floor ? 1 : 0);
  if (given != 1) {
    throw CLI::ValidationError("reduce",
                               "exactly one of --order, --error, --floor is required");
  }
  OrderCriterion criterion = ExplicitOrder{0};
  if (o.order) criterion = ExplicitOrder{*o.order};
  if (o.error_budget) criterion = ErrorBudget{*o.error_budget};
  if (o.floor) criterion = RelativeFloor{*o.floor};
  const StateSpaceModel model = io::load_model(o.model_path);
  ReductionOptions options;
  options.rel_tol = resolve_tol(o.tol);
  const ReductionResult res = balanced_truncation(model, criterion, options);
  io::save_model(res.model, o.output_path);
  if (!o.report_path.empty()) io::save_report(res.report, o.report_path);
  const ReductionReport& r = res.report;
  out << "original_order: " << r.original_order << '\n'
      << "minimal_order: " << r.minimal_order << '\n'
      << "reduced_order: " << r.reduced_order << '\n'
      << "lower_bound: " << format_double(r.lower_bound) << '\n'
      << "upper_bound: " << format_double(r.upper_bound) << '\n';
}

void run_bode(const Options& o) {
  const StateSpaceModel model = io::load_model(o.model_path);
  const FrequencyResponse r =
      frequency_sweep(model, o.w_min, o.w_max, o.points);
  io::write_file(o.output_path, io::response_to_csv(r));
}

void run_simulate(const Options& o) {
  const StateSpaceModel model = io::load_model(o.model_path);
  const Signal u = io::load_signal(o.input_path);
  Vector x0 = Vector::Zero(model.n());
  if (!o.x0_path.empty()) x0 = io::load_vector(o.x0_path);
  const SimulationResult res = simulate(model, u, x0);
  io::save_signal(res.y, o.output_path, "y");
}

int run_verify(const Options& o, std::ostream& out) {
  const StateSpaceModel full = io::load_model(o.full_path);
  const StateSpaceModel reduced = io::load_model(o.reduced_path);
  const ReductionReport report = io::load_report(o.report_path);
  const BoundVerification v =
      verify_bound(full, reduced, report, o.trials, o.seed);
  out << "lower_bound: " << format_double(v.lower_bound) << '\n'
      << "upper_bound: " << format_double(v.upper_bound) << '\n'
      << "freq_error_estimate: " << format_double(v.freq_error_estimate) << '\n'
      << "argmax_omega: " << format_double(v.argmax_omega) << '\n'
      << "worst_time_ratio: " << format_double(v.worst_time_ratio) << '\n'
      << "trials: " << v.num_trials << '\n'
      << "passed: " << (v.passed ? "true" : "false") << '\n';
  return v.passed ? kSuccess : kVerificationFailed;
}

void run_gen(const Options& o) {
  GeneratorParams params;
  for (const std::string& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CLI::ValidationError("--param", "expected key=value, got '" + kv + "'");
    }
    const std::string value = kv.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') {
      throw CLI::ValidationError("--param", "value of '" + kv + "' is not a number");
    }
    params[kv.substr(0, eq)] = v;
  }
  const StateSpaceModel model = gen_example(o.kind, o.size, params, o.seed);
  io::save_model(model, o.output_path, o.label.empty() ? o.kind : o.label);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Balanced truncation of continuous-time LTI state-space models",
               "baltrunc"};
  app.require_subcommand(1);
  Options o;

  auto* info = app.add_subcommand("info", "Order, dimensions and stability");
  info->add_option("model", o.model_path, "Model file")->required();

  auto* minreal = app.add_subcommand("minreal", "Minimal realization");
  minreal->add_option("model", o.model_path, "Model file")->required();
  minreal->add_option("-o,--output", o.output_path, "Output model")->required();
  minreal->add_option("--tol", o.tol, "Relative rank tolerance");

  auto* hsv = app.add_subcommand("hsv", "Hankel singular values");
  hsv->add_option("model", o.model_path, "Model file")->required();
  hsv->add_option("--csv", o.csv_path, "Also write index,hsv CSV");

  auto* reduce = app.add_subcommand("reduce", "Balanced truncation pipeline");
  reduce->add_option("model", o.model_path, "Model file")->required();
  reduce->add_option("-o,--output", o.output_path, "Reduced model")->required();
  reduce->add_option("--order", o.order, "Target order");
  reduce->add_option("--error", o.error_budget, "Upper error bound budget");
  reduce->add_option("--floor", o.floor, "Keep HSVs >= floor * h1");
  reduce->add_option("--report", o.report_path, "Write reduction report");
  reduce->add_option("--tol", o.tol, "Relative rank tolerance");

  auto* bode = app.add_subcommand("bode", "Frequency sweep to CSV");
  bode->add_option("model", o.model_path, "Model file")->required();
  bode->add_option("--wmin", o.w_min, "Lowest frequency (rad/time)");
  bode->add_option("--wmax", o.w_max, "Highest frequency (rad/time)");
  bode->add_option("--points", o.points, "Number of log-spaced points");
  bode->add_option("-o,--output", o.output_path, "Output CSV")->required();

  auto* sim = app.add_subcommand("simulate", "Zero-order-hold simulation");
  sim->add_option("model", o.model_path, "Model file")->required();
  sim->add_option("--input", o.input_path, "Input signal CSV")->required();
  sim->add_option("--x0", o.x0_path, "Initial state file");
  sim->add_option("-o,--output", o.output_path, "Output signal CSV")->required();

  auto* verify = app.add_subcommand("verify", "Check the truncation error bounds");
  verify->add_option("full", o.full_path, "Full model")->required();
  verify->add_option("reduced", o.reduced_path, "Reduced model")->required();
  verify->add_option("--report", o.report_path, "Reduction report")->required();
  verify->add_option("--trials", o.trials, "Time-domain trials");
  verify->add_option("--seed", o.seed, "Random seed");

  auto* gen = app.add_subcommand("gen", "Generate an example model");
  gen->add_option("--kind", o.kind,
                  "random_stable | mass_spring_chain | rc_ladder")
      ->required();
  gen->add_option("--size", o.size, "Order / number of masses / sections")
      ->required();
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--param", o.params, "Family parameter key=value");
  gen->add_option("--label", o.label, "Label stored in the model file");
  gen->add_option("-o,--output", o.output_path, "Output model")->required();

  std::vector<const char*> argv;
  argv.push_back("baltrunc");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*info) run_info(o, out);
    if (*minreal) run_minreal(o, out);
    if (*hsv) run_hsv(o, out, err);
    if (*reduce) run_reduce(o, out);
    if (*bode) run_bode(o);
    if (*sim) run_simulate(o);
    if (*verify) return run_verify(o, out);
    if (*gen) run_gen(o);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kSuccess;
}

}  // namespace baltrunc::cli
