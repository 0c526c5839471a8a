#include "baltrunc/io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "baltrunc/errors.h"

namespace baltrunc::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
  if (!out) throw ParseError("failed writing " + path.string());
}

namespace {

void append_array(std::string& out, const Matrix& m) {
  out += '[';
  bool first = true;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!first) out += ", ";
      out += format_double(m(i, j));
      first = false;
    }
  }
  out += ']';
}

std::string escape(const std::string& s) { return json(s).dump(); }

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << what << ": syntax error at line " << line_of(text, e.byte) << ": "
       << e.what();
    throw ParseError(os.str());
  }
}

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string(what) + ": missing field '" + key + "'");
  }
  return *it;
}

long long get_int(const json& j, const char* key, const char* what) {
  const json& v = field(j, key, what);
  if (!v.is_number_integer()) {
    throw ParseError(std::string(what) + ": field '" + key +
                     "' must be an integer");
  }
  return v.get<long long>();
}

std::vector<double> get_numbers(const json& j, const char* key,
                                const char* what) {
  const json& v = field(j, key, what);
  if (!v.is_array()) {
    throw ParseError(std::string(what) + ": field '" + key +
                     "' must be an array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ParseError(std::string(what) + ": field '" + key + "' entry " +
                       std::to_string(i) + " is not a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

std::string model_to_string(const StateSpaceModel& model,
                            const std::optional<std::string>& label) {
  require_valid(model);
  std::string out = "{\n";
  out += "  \"schema_version\": " + std::to_string(kModelSchemaVersion) + ",\n";
  if (label) out += "  \"label\": " + escape(*label) + ",\n";
  out += "  \"n\": " + std::to_string(model.n()) + ",\n";
  out += "  \"m\": " + std::to_string(model.m()) + ",\n";
  out += "  \"p\": " + std::to_string(model.p()) + ",\n";
  const std::pair<const char*, const Matrix*> fields[] = {
      {"a", &model.a}, {"b", &model.b}, {"c", &model.c}, {"d", &model.d}};
  for (std::size_t k = 0; k < 4; ++k) {
    out += std::string("  \"") + fields[k].first + "\": ";
    append_array(out, *fields[k].second);
    out += k + 1 < 4 ? ",\n" : "\n";
  }
  out += "}\n";
  return out;
}

StateSpaceModel model_from_string(const std::string& text, std::string* label) {
  constexpr const char* what = "model file";
  const json j = parse_json(text, what);
  const long long version = get_int(j, "schema_version", what);
  if (version != kModelSchemaVersion) {
    throw ParseError(std::string(what) + ": unsupported schema_version " +
                     std::to_string(version));
  }
  const long long n = get_int(j, "n", what);
  const long long m = get_int(j, "m", what);
  const long long p = get_int(j, "p", what);
  if (n < 0 || m < 0 || p < 0) {
    throw ParseError(std::string(what) + ": dimensions must be non-negative");
  }
  if (label != nullptr) {
    auto it = j.find("label");
    *label = it != j.end() && it->is_string() ? it->get<std::string>() : "";
  }
  const auto a = get_numbers(j, "a", what);
  const auto b = get_numbers(j, "b", what);
  const auto c = get_numbers(j, "c", what);
  const auto d = get_numbers(j, "d", what);

  std::vector<std::string> violations;
  auto expect = [&](const char* name, std::size_t got, long long want) {
    if (static_cast<long long>(got) != want) {
      violations.push_back(std::string(name) + ": expected " +
                           std::to_string(want) + " entries, got " +
                           std::to_string(got));
    }
  };
  expect("a", a.size(), n * n);
  expect("b", b.size(), n * m);
  expect("c", c.size(), p * n);
  expect("d", d.size(), p * m);
  if (!violations.empty()) {
    std::string first = "model file: " + violations.front();
    throw ValidationError(first, std::move(violations));
  }
  auto to_matrix = [](const std::vector<double>& v, long long rows,
                      long long cols) {
    Matrix out(rows, cols);
    for (long long i = 0; i < rows; ++i) {
      for (long long k = 0; k < cols; ++k) out(i, k) = v[i * cols + k];
    }
    return out;
  };
  StateSpaceModel model{to_matrix(a, n, n), to_matrix(b, n, m),
                        to_matrix(c, p, n), to_matrix(d, p, m)};
  require_valid(model);
  return model;
}

void save_model(const StateSpaceModel& model, const std::filesystem::path& path,
                const std::optional<std::string>& label) {
  write_file(path, model_to_string(model, label));
}

StateSpaceModel load_model(const std::filesystem::path& path,
                           std::string* label) {
  return model_from_string(read_file(path), label);
}

std::string signal_to_csv(const Signal& s, const std::string& prefix) {
  std::string out = "time";
  for (Eigen::Index j = 0; j < s.channels(); ++j) {
    out += "," + prefix + std::to_string(j + 1);
  }
  out += '\n';
  for (Eigen::Index k = 0; k < s.num_steps(); ++k) {
    out += format_double(s.t0 + static_cast<double>(k) * s.dt);
    for (Eigen::Index j = 0; j < s.channels(); ++j) {
      out += ',' + format_double(s.samples(k, j));
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& token, std::size_t line,
                    std::size_t column) {
  std::size_t pos = 0;
  double v = 0.0;
  bool ok = true;
  try {
    v = std::stod(token, &pos);
  } catch (const std::exception&) {
    ok = false;
  }
  while (ok && pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) {
    ++pos;
  }
  if (!ok || pos != token.size()) {
    throw ParseError("line " + std::to_string(line) + ", field " +
                     std::to_string(column) + ": '" + token +
                     "' is not a number");
  }
  return v;
}

}  // namespace

Signal signal_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::size_t columns = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (columns == 0) {
      if (fields.size() < 2) {
        throw ParseError("line 1: header must name time and at least one channel");
      }
      columns = fields.size();
      continue;
    }
    if (fields.size() != columns) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(columns) + " fields, got " +
                       std::to_string(fields.size()));
    }
    times.push_back(parse_number(fields[0], lineno, 1));
    std::vector<double> row;
    for (std::size_t k = 1; k < columns; ++k) {
      row.push_back(parse_number(fields[k], lineno, k + 1));
    }
    rows.push_back(std::move(row));
  }
  if (times.size() < 2) throw ParseError("signal needs at least two samples");
  const double dt = (times.back() - times.front()) /
                    static_cast<double>(times.size() - 1);
  if (!(dt > 0.0)) throw ParseError("time column must be strictly increasing");
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double step = times[k] - times[k - 1];
    // Rounding in the printed timestamps is allowed on top of 1e-9·dt.
    const double slack = 1e-9 * dt + 8.0 * linalg::kEps * std::abs(times[k]);
    if (!(step > 0.0) || std::abs(step - dt) > slack) {
      throw ParseError("line " + std::to_string(k + 2) +
                       ": time column is not uniformly spaced");
    }
  }
  Signal s;
  s.dt = dt;
  s.t0 = times.front();
  s.samples.resize(static_cast<Eigen::Index>(rows.size()),
                   static_cast<Eigen::Index>(columns - 1));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t j = 0; j + 1 < columns; ++j) {
      s.samples(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
          rows[k][j];
    }
  }
  check_signal(s);
  return s;
}

void save_signal(const Signal& s, const std::filesystem::path& path,
                 const std::string& prefix) {
  write_file(path, signal_to_csv(s, prefix));
}

Signal load_signal(const std::filesystem::path& path) {
  return signal_from_csv(read_file(path));
}

std::string response_to_csv(const FrequencyResponse& r) {
  std::string out = "omega";
  if (r.values.empty()) return out + '\n';
  const auto p = r.values.front().rows();
  const auto m = r.values.front().cols();
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const std::string tag =
          "h" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      out += "," + tag + "_re," + tag + "_im," + tag + "_mag";
    }
  }
  out += '\n';
  for (std::size_t k = 0; k < r.omegas.size(); ++k) {
    out += format_double(r.omegas[k]);
    for (Eigen::Index i = 0; i < p; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        const auto h = r.values[k](i, j);
        out += ',' + format_double(h.real()) + ',' + format_double(h.imag()) +
               ',' + format_double(std::abs(h));
      }
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string number_list(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out + "]";
}

}  // namespace

std::string report_to_string(const ReductionReport& r) {
  std::string out = "{\n";
  out += "  \"schema_version\": " + std::to_string(kReportSchemaVersion) + ",\n";
  out += "  \"original_order\": " + std::to_string(r.original_order) + ",\n";
  out += "  \"minimal_order\": " + std::to_string(r.minimal_order) + ",\n";
  out += "  \"reduced_order\": " + std::to_string(r.reduced_order) + ",\n";
  out += "  \"hsv_kept\": " + number_list(r.hsv_kept) + ",\n";
  out += "  \"hsv_truncated\": " + number_list(r.hsv_truncated) + ",\n";
  out += "  \"distinct_truncated\": " + number_list(r.distinct_truncated) + ",\n";
  out += "  \"lower_bound\": " + format_double(r.lower_bound) + ",\n";
  out += "  \"upper_bound\": " + format_double(r.upper_bound) + ",\n";
  out += "  \"gap_ratio\": " +
         (std::isfinite(r.gap_ratio) ? format_double(r.gap_ratio)
                                     : std::string("null")) +
         "\n";
  out += "}\n";
  return out;
}

ReductionReport report_from_string(const std::string& text) {
  constexpr const char* what = "report file";
  const json j = parse_json(text, what);
  const long long version = get_int(j, "schema_version", what);
  if (version != kReportSchemaVersion) {
    throw ParseError(std::string(what) + ": unsupported schema_version " +
                     std::to_string(version));
  }
  auto number = [&](const char* key) {
    const json& v = field(j, key, what);
    if (!v.is_number()) {
      throw ParseError(std::string(what) + ": field '" + key +
                       "' must be a number");
    }
    return v.get<double>();
  };
  ReductionReport r;
  r.original_order = static_cast<int>(get_int(j, "original_order", what));
  r.minimal_order = static_cast<int>(get_int(j, "minimal_order", what));
  r.reduced_order = static_cast<int>(get_int(j, "reduced_order", what));
  r.hsv_kept = get_numbers(j, "hsv_kept", what);
  r.hsv_truncated = get_numbers(j, "hsv_truncated", what);
  r.distinct_truncated = get_numbers(j, "distinct_truncated", what);
  r.lower_bound = number("lower_bound");
  r.upper_bound = number("upper_bound");
  const json& gap = field(j, "gap_ratio", what);
  if (gap.is_null()) {
    r.gap_ratio = std::numeric_limits<double>::infinity();
  } else if (gap.is_number()) {
    r.gap_ratio = gap.get<double>();
  } else {
    throw ParseError(std::string(what) + ": field 'gap_ratio' must be a number or null");
  }
  return r;
}

void save_report(const ReductionReport& report,
                 const std::filesystem::path& path) {
  write_file(path, report_to_string(report));
}

ReductionReport load_report(const std::filesystem::path& path) {
  return report_from_string(read_file(path));
}

Vector load_vector(const std::filesystem::path& path) {
  std::string text = read_file(path);
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::vector<double> values;
  std::string token;
  std::size_t index = 0;
  while (in >> token) values.push_back(parse_number(token, 1, ++index));
  return Eigen::Map<const Vector>(values.data(),
                                  static_cast<Eigen::Index>(values.size()));
}

}  // namespace baltrunc::io
