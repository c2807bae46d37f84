#pragma once

// Two executors over the same rollout kernel: a single-worker sequential
// reference and a worker-pool executor that dispatches contiguous index
// chunks. Both call the identical compiled rollout on the identical batch,
// so their outputs agree bit-for-bit; verify_consistency enforces that.

#include "brakemc/integrator.hpp"
#include "brakemc/sampling.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace brakemc {

enum class ExecutorKind { sequential, parallel };

const char* to_string(ExecutorKind kind);

/// Index-aligned rollout results plus how they were produced. wall_time_s
/// covers the rollout loop only; batch generation is timed separately by
/// callers that care (the feasibility search does).
struct ExecutionReport {
    std::vector<RolloutResult> results;
    double wall_time_s = 0.0;
    ExecutorKind executor = ExecutorKind::sequential;
    unsigned worker_count = 1;
};

/// Runs every sample in index order on the calling thread.
ExecutionReport run_sequential(const SampleBatch& batch, const SimConfig& config,
                               const VehicleGeometry& geometry,
                               const PhysicalConstants& constants);

/// Runs samples on `worker_count` threads. Workers claim contiguous chunks
/// of `chunk_size` indices and write each result into its own pre-allocated
/// slot; there is no shared mutable state beyond the chunk cursor, and no
/// synchronization in the per-sample path. Chunk size affects timing only,
/// never results. worker_count = 0 selects the hardware thread count.
ExecutionReport run_parallel(const SampleBatch& batch, const SimConfig& config,
                             const VehicleGeometry& geometry,
                             const PhysicalConstants& constants,
                             unsigned worker_count, std::size_t chunk_size = 256);

/// Outcome of comparing two index-aligned reports.
struct ConsistencyVerdict {
    std::size_t n = 0;
    double max_abs_deviation = 0.0; ///< max_i |stop_distance_a[i] - stop_distance_b[i]|
    std::size_t first_mismatch = 0; ///< index of first non-bitwise-equal result, if any
    bool bitwise_equal = false;     ///< every field of every result identical in bits
    bool pass = false;              ///< max_abs_deviation == 0.0 and bitwise_equal
};

/// Compares stop distances (and, bitwise, every result field) between two
/// reports over the same batch. Throws ConfigError on length mismatch.
ConsistencyVerdict verify_consistency(const ExecutionReport& a, const ExecutionReport& b);

/// One point of a timing sweep.
struct TimingPoint {
    std::size_t n = 0;
    double wall_time_s = 0.0;
};

/// Least-squares line through (n, wall_time): wall_time ~ overhead + slope*n.
struct TimingFit {
    double overhead_s = 0.0;
    double per_sample_s = 0.0;
};

/// Fits the linear execution-time model. Requires at least 3 distinct n
/// values (throws ConfigError otherwise).
TimingFit fit_timing_model(const std::vector<TimingPoint>& points);

/// Median wall time of `reps` timed calls after `warmup` untimed ones.
/// Monotonic clock. This is the measurement convention used by every
/// reported timing in the project.
double median_wall_time_s(const std::function<void()>& fn, int reps = 5, int warmup = 1);

} // namespace brakemc
