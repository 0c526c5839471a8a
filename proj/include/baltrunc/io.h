#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "baltrunc/analysis.h"
#include "baltrunc/reduction.h"
#include "baltrunc/statespace.h"

namespace baltrunc::io {

inline constexpr int kModelSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

/// Shortest printf form that still carries 17 significant digits.
std::string format_double(double v);

/// JSON model file:
///   {"schema_version": 1, "label": "...", "n": .., "m": .., "p": ..,
///    "a": [...], "b": [...], "c": [...], "d": [...]}
/// Arrays are row-major; numbers use 17 significant digits.
std::string model_to_string(const StateSpaceModel& model,
                            const std::optional<std::string>& label = {});
/// Throws ParseError (syntax, missing fields, unknown schema) or
/// ValidationError (array lengths, non-finite values).
StateSpaceModel model_from_string(const std::string& text,
                                  std::string* label = nullptr);

void save_model(const StateSpaceModel& model, const std::filesystem::path& path,
                const std::optional<std::string>& label = {});
StateSpaceModel load_model(const std::filesystem::path& path,
                           std::string* label = nullptr);

/// CSV: header "time,<name>,...", one row per sample. Loading requires a
/// strictly increasing time column with constant step (1e-9 relative).
std::string signal_to_csv(const Signal& s, const std::string& prefix);
Signal signal_from_csv(const std::string& text);
void save_signal(const Signal& s, const std::filesystem::path& path,
                 const std::string& prefix = "y");
Signal load_signal(const std::filesystem::path& path);

/// Frequency-sweep CSV: omega, then re/im/mag per (output, input) pair.
std::string response_to_csv(const FrequencyResponse& r);

std::string report_to_string(const ReductionReport& report);
ReductionReport report_from_string(const std::string& text);
void save_report(const ReductionReport& report,
                 const std::filesystem::path& path);
ReductionReport load_report(const std::filesystem::path& path);

/// Numbers separated by whitespace or commas.
Vector load_vector(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace baltrunc::io
