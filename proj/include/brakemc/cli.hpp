#pragma once

// Subcommand entry points and the argv-level driver. Exit codes are
// disjoint by failure class so CI can tell them apart:
//   0 success, 1 configuration error, 2 I/O error, 3 consistency failure.

#include "brakemc/analysis.hpp"
#include "brakemc/run_config.hpp"

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace brakemc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitConsistency = 3;

struct RiskOptions {
    std::vector<double> levels{0.05, 0.01, 0.001};
    double grid_start = -1.0; ///< < 0: derive from the data
    double grid_stop = -1.0;  ///< < 0: derive from the data
    double grid_step = 1.0;   ///< m
    double closing_speed = 0.0; ///< m/s; <= 0: mean initial speed
};

struct BenchOptions {
    std::vector<std::size_t> n_values{1000, 10000, 100000};
    int reps = 5;
    int warmup = 1;
};

/// Samples, simulates, and writes summary.json, results.csv, histogram.svg
/// (plus samples.csv when dump_samples is set). Artifacts contain no
/// timing, so reruns with the same config are byte-identical.
int cmd_run(const RunConfig& config, std::ostream& out);

/// Runs both executors over one batch and checks bit-exact agreement.
/// With `against_csv` non-empty, compares the sequential run against a
/// stored results file instead. Returns kExitConsistency on disagreement.
int cmd_verify(const RunConfig& config, const std::string& against_csv, std::ostream& out);

/// Convergence table over prefixes of one master batch.
int cmd_converge(const RunConfig& config, const std::vector<std::size_t>& n_values,
                 std::ostream& out);

/// Collision-probability curve, risk-threshold headways, and TTC equivalents.
int cmd_risk(const RunConfig& config, const RiskOptions& options, std::ostream& out);

/// Feasibility search: largest sample count whose measured cost fits the
/// Monte Carlo budget.
int cmd_feasibility(const RunConfig& config, const TimingBudget& budget,
                    const FeasibilityOptions& options, std::ostream& out);

/// Timing sweep plus linear model fit.
int cmd_bench(const RunConfig& config, const BenchOptions& options, std::ostream& out);

/// Full argv driver: config file, flag overrides, subcommand dispatch,
/// error-to-exit-code mapping.
int main_entry(int argc, const char* const* argv);

} // namespace brakemc::cli
