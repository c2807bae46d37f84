#include "brakemc/backends.hpp"

#include "brakemc/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <set>
#include <thread>

namespace brakemc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool bitwise_equal_result(const RolloutResult& a, const RolloutResult& b) {
    return std::bit_cast<std::uint64_t>(a.stop_distance) ==
               std::bit_cast<std::uint64_t>(b.stop_distance) &&
           std::bit_cast<std::uint64_t>(a.stop_time) ==
               std::bit_cast<std::uint64_t>(b.stop_time) &&
           a.steps == b.steps && a.hit_horizon == b.hit_horizon;
}

} // namespace

const char* to_string(ExecutorKind kind) {
    return kind == ExecutorKind::sequential ? "sequential" : "parallel";
}

ExecutionReport run_sequential(const SampleBatch& batch, const SimConfig& config,
                               const VehicleGeometry& geometry,
                               const PhysicalConstants& constants) {
    if (batch.size() == 0) {
        throw ConfigError("batch", "must be non-empty");
    }
    ExecutionReport report;
    report.executor = ExecutorKind::sequential;
    report.worker_count = 1;
    report.results.resize(batch.size());

    const auto start = Clock::now();
    for (std::size_t i = 0; i < batch.size(); ++i) {
        report.results[i] = simulate_rollout(batch.samples[i], config, geometry, constants);
    }
    report.wall_time_s = seconds_since(start);
    return report;
}

ExecutionReport run_parallel(const SampleBatch& batch, const SimConfig& config,
                             const VehicleGeometry& geometry,
                             const PhysicalConstants& constants,
                             unsigned worker_count, std::size_t chunk_size) {
    if (batch.size() == 0) {
        throw ConfigError("batch", "must be non-empty");
    }
    if (chunk_size == 0) {
        throw ConfigError("execution.chunk_size", "must be >= 1");
    }
    if (worker_count == 0) {
        worker_count = std::max(1u, std::thread::hardware_concurrency());
    }

    ExecutionReport report;
    report.executor = ExecutorKind::parallel;
    report.worker_count = worker_count;
    report.results.resize(batch.size());

    const std::size_t n = batch.size();
    const std::size_t chunk_count = (n + chunk_size - 1) / chunk_size;

    const auto start = Clock::now();
    std::atomic<std::size_t> next_chunk{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t chunk = next_chunk.fetch_add(1, std::memory_order_relaxed);
            if (chunk >= chunk_count) {
                return;
            }
            const std::size_t begin = chunk * chunk_size;
            const std::size_t end = std::min(n, begin + chunk_size);
            for (std::size_t i = begin; i < end; ++i) {
                report.results[i] =
                    simulate_rollout(batch.samples[i], config, geometry, constants);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (unsigned w = 0; w < worker_count; ++w) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    report.wall_time_s = seconds_since(start);
    return report;
}

ConsistencyVerdict verify_consistency(const ExecutionReport& a, const ExecutionReport& b) {
    if (a.results.size() != b.results.size()) {
        throw ConfigError("verify", "reports cover different batch lengths");
    }
    ConsistencyVerdict verdict;
    verdict.n = a.results.size();
    verdict.bitwise_equal = true;
    for (std::size_t i = 0; i < a.results.size(); ++i) {
        const double dev = std::abs(a.results[i].stop_distance - b.results[i].stop_distance);
        if (dev > verdict.max_abs_deviation) {
            verdict.max_abs_deviation = dev;
        }
        if (verdict.bitwise_equal && !bitwise_equal_result(a.results[i], b.results[i])) {
            verdict.bitwise_equal = false;
            verdict.first_mismatch = i;
        }
    }
    verdict.pass = verdict.bitwise_equal && verdict.max_abs_deviation == 0.0;
    return verdict;
}

TimingFit fit_timing_model(const std::vector<TimingPoint>& points) {
    std::set<std::size_t> distinct;
    for (const auto& p : points) {
        distinct.insert(p.n);
    }
    if (distinct.size() < 3) {
        throw ConfigError("timing_fit", "needs at least 3 distinct sample counts");
    }

    double mean_n = 0.0;
    double mean_t = 0.0;
    for (const auto& p : points) {
        mean_n += static_cast<double>(p.n);
        mean_t += p.wall_time_s;
    }
    const double count = static_cast<double>(points.size());
    mean_n /= count;
    mean_t /= count;

    double cov = 0.0;
    double var = 0.0;
    for (const auto& p : points) {
        const double dn = static_cast<double>(p.n) - mean_n;
        cov += dn * (p.wall_time_s - mean_t);
        var += dn * dn;
    }
    TimingFit fit;
    fit.per_sample_s = cov / var;
    fit.overhead_s = mean_t - fit.per_sample_s * mean_n;
    return fit;
}

double median_wall_time_s(const std::function<void()>& fn, int reps, int warmup) {
    if (reps < 1) {
        throw ConfigError("timing.reps", "must be >= 1");
    }
    for (int i = 0; i < warmup; ++i) {
        fn();
    }
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(reps));
    for (int i = 0; i < reps; ++i) {
        const auto start = Clock::now();
        fn();
        times.push_back(seconds_since(start));
    }
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    if (times.size() % 2 == 1) {
        return times[mid];
    }
    return 0.5 * (times[mid - 1] + times[mid]);
}

} // namespace brakemc
