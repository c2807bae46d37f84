#pragma once

// Serialization of the data products. CSV files use comma separators,
// '.' decimals, a header row, LF line endings, and 17-significant-digit
// floats (round-trip exact for binary64), so identical inputs serialize to
// byte-identical files.

#include "brakemc/analysis.hpp"
#include "brakemc/backends.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace brakemc {

using json = nlohmann::ordered_json;

/// Shortest exact decimal form a 64-bit float round-trips from (%.17g).
std::string format_double(double value);

std::string results_csv(const std::vector<RolloutResult>& results);
std::string batch_csv(const SampleBatch& batch);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);
std::string risk_curve_csv(const RiskCurve& curve);
std::string risk_thresholds_csv(const RiskCurve& curve);

/// Parses a results CSV produced by results_csv. Step counts are not part
/// of the file format; they are reconstructed by the caller when needed.
/// Throws IoError on malformed input.
std::vector<RolloutResult> parse_results_csv(const std::string& text);

json summary_json(const DistributionSummary& summary);
json execution_report_json(const ExecutionReport& report, const DistributionSummary& summary);
json consistency_json(const ConsistencyVerdict& verdict, double sequential_s,
                      double parallel_s);
json timing_report_json(const TimingReport& report);
json timing_fit_json(const TimingFit& fit, const std::vector<TimingPoint>& points);

/// Writes content to path, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Reads a whole file. Throws IoError.
std::string read_text_file(const std::filesystem::path& path);

} // namespace brakemc
