#include "brakemc/analysis.hpp"

#include "brakemc/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace brakemc {

DistributionSummary summarize(const std::vector<RolloutResult>& results, double bin_width) {
    if (results.empty()) {
        throw ConfigError("summarize", "needs at least one result");
    }
    if (!(bin_width > 0.0)) {
        throw ConfigError("outputs.bin_width", "must be > 0");
    }

    DistributionSummary summary;
    summary.n = results.size();

    std::vector<double> distances;
    distances.reserve(results.size());
    for (const auto& r : results) {
        distances.push_back(r.stop_distance);
        if (r.hit_horizon) {
            ++summary.horizon_count;
        }
    }

    const double n = static_cast<double>(distances.size());
    double sum = 0.0;
    for (double d : distances) {
        sum += d;
    }
    summary.mean = sum / n;

    double m2 = 0.0;
    double m3 = 0.0;
    for (double d : distances) {
        const double dev = d - summary.mean;
        m2 += dev * dev;
        m3 += dev * dev * dev;
    }
    summary.sd = distances.size() > 1 ? std::sqrt(m2 / (n - 1.0)) : 0.0;
    const double variance_pop = m2 / n;
    summary.skewness =
        variance_pop > 0.0 ? (m3 / n) / std::pow(variance_pop, 1.5) : 0.0;

    std::vector<double> sorted = distances;
    std::sort(sorted.begin(), sorted.end());
    summary.min = sorted.front();
    summary.max = sorted.back();
    summary.median = sorted.size() % 2 == 1
                         ? sorted[sorted.size() / 2]
                         : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
    summary.right_skewed = summary.mean > summary.median;

    const double lo = std::floor(summary.min);
    const double hi = std::ceil(summary.max);
    const std::size_t bins =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / bin_width)));
    summary.histogram.origin = lo;
    summary.histogram.bin_width = bin_width;
    summary.histogram.counts.assign(bins, 0);
    for (double d : distances) {
        auto idx = static_cast<std::size_t>((d - lo) / bin_width);
        if (idx >= bins) {
            idx = bins - 1;
        }
        ++summary.histogram.counts[idx];
    }
    return summary;
}

namespace {

struct MeanSd {
    double mean;
    double sd;
};

MeanSd prefix_stats(const std::vector<RolloutResult>& results, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += results[i].stop_distance;
    }
    const double mean = sum / static_cast<double>(n);
    double m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dev = results[i].stop_distance - mean;
        m2 += dev * dev;
    }
    const double sd = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0;
    return {mean, sd};
}

} // namespace

std::vector<ConvergenceRow> convergence_from_results(const std::vector<RolloutResult>& master,
                                                     const std::vector<std::size_t>& n_values,
                                                     std::size_t baseline_n) {
    if (std::find(n_values.begin(), n_values.end(), baseline_n) == n_values.end()) {
        throw ConfigError("converge.n_values", "must include the baseline sample count");
    }
    for (std::size_t n : n_values) {
        if (n == 0 || n > master.size()) {
            throw ConfigError("converge.n_values",
                              "entries must be in [1, master result count]");
        }
    }

    const MeanSd baseline = prefix_stats(master, baseline_n);
    std::vector<ConvergenceRow> rows;
    rows.reserve(n_values.size());
    for (std::size_t n : n_values) {
        const MeanSd stats = prefix_stats(master, n);
        rows.push_back(ConvergenceRow{n, stats.mean, stats.sd, stats.mean - baseline.mean,
                                      stats.sd - baseline.sd});
    }
    return rows;
}

std::vector<ConvergenceRow> convergence_table(const UncertaintyModel& model,
                                              const std::vector<std::size_t>& n_values,
                                              const SimConfig& config,
                                              const VehicleGeometry& geometry,
                                              const PhysicalConstants& constants,
                                              ExecutorKind executor, unsigned workers,
                                              std::size_t chunk_size, std::size_t baseline_n) {
    if (n_values.empty()) {
        throw ConfigError("converge.n_values", "must be non-empty");
    }
    const std::size_t master_n = *std::max_element(n_values.begin(), n_values.end());
    const SampleBatch batch = draw_batch(model, master_n);
    const ExecutionReport report =
        executor == ExecutorKind::sequential
            ? run_sequential(batch, config, geometry, constants)
            : run_parallel(batch, config, geometry, constants, workers, chunk_size);
    return convergence_from_results(report.results, n_values, baseline_n);
}

double collision_probability(const std::vector<RolloutResult>& results, double headway_m) {
    if (!(headway_m >= 0.0)) {
        throw ConfigError("risk.headway", "must be >= 0");
    }
    if (results.empty()) {
        throw ConfigError("risk", "needs at least one result");
    }
    std::size_t exceed = 0;
    for (const auto& r : results) {
        if (r.hit_horizon || r.stop_distance > headway_m) {
            ++exceed;
        }
    }
    return static_cast<double>(exceed) / static_cast<double>(results.size());
}

double min_safe_headway(const std::vector<RolloutResult>& results, double risk) {
    if (!(risk > 0.0 && risk < 1.0)) {
        throw ConfigError("risk.level", "must be strictly between 0 and 1");
    }
    if (results.empty()) {
        throw ConfigError("risk", "needs at least one result");
    }

    const std::size_t n = results.size();
    // Horizon-flagged rollouts occupy the top of the order: count them and
    // sort only the finite stoppers.
    std::vector<double> stopped;
    stopped.reserve(n);
    std::size_t never_stopped = 0;
    for (const auto& r : results) {
        if (r.hit_horizon) {
            ++never_stopped;
        } else {
            stopped.push_back(r.stop_distance);
        }
    }

    // Nudge below the FP rounding of (1-risk)*n so exact-integer ranks do
    // not spill over to the next order statistic.
    const double raw_rank = (1.0 - risk) * static_cast<double>(n);
    const auto rank =
        static_cast<std::size_t>(std::ceil(raw_rank - raw_rank * 1e-12));
    if (rank > stopped.size()) {
        // The required order statistic falls inside the never-stopping tail.
        return std::numeric_limits<double>::infinity();
    }
    std::sort(stopped.begin(), stopped.end());
    return stopped[rank - 1];
}

double ttc_for_headway(double headway_m, double closing_speed_mps) {
    if (!(closing_speed_mps > 0.0)) {
        throw ConfigError("risk.closing_speed", "must be > 0");
    }
    return headway_m / closing_speed_mps;
}

RiskCurve build_risk_curve(const std::vector<RolloutResult>& results,
                           const std::vector<double>& grid,
                           const std::vector<double>& risk_levels,
                           double closing_speed_mps) {
    RiskCurve curve;
    curve.headways_m = grid;
    curve.probabilities.reserve(grid.size());
    for (double h : grid) {
        curve.probabilities.push_back(collision_probability(results, h));
    }
    for (std::size_t i = 1; i < curve.probabilities.size(); ++i) {
        if (curve.headways_m[i] >= curve.headways_m[i - 1] &&
            curve.probabilities[i] > curve.probabilities[i - 1]) {
            throw std::logic_error("risk curve must be non-increasing in headway");
        }
    }

    std::vector<double> levels = risk_levels;
    std::sort(levels.begin(), levels.end(), std::greater<>());
    for (double risk : levels) {
        const double headway = min_safe_headway(results, risk);
        curve.thresholds.push_back(
            RiskThreshold{risk, headway, ttc_for_headway(headway, closing_speed_mps)});
    }
    return curve;
}

std::vector<double> headway_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start)) {
        throw ConfigError("risk.grid", "needs stop >= start and step > 0");
    }
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    grid.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i) {
        grid.push_back(start + static_cast<double>(i) * step);
    }
    return grid;
}

void TimingBudget::validate(const std::string& prefix) const {
    if (!(total_ms > 0.0)) {
        throw ConfigError(prefix + ".total_ms", "must be > 0");
    }
    if (perception_ms < 0.0) {
        throw ConfigError(prefix + ".perception_ms", "must be >= 0");
    }
    if (decision_ms < 0.0) {
        throw ConfigError(prefix + ".decision_ms", "must be >= 0");
    }
    if (perception_ms + decision_ms >= total_ms) {
        throw ConfigError(prefix, "perception + decision must leave a positive MC budget");
    }
}

std::size_t max_feasible_n(const std::function<double(std::size_t)>& timed_run_s,
                           double budget_s, std::size_t search_start,
                           std::size_t search_cap, bool* capped) {
    if (capped != nullptr) {
        *capped = false;
    }
    if (!(budget_s > 0.0)) {
        throw ConfigError("budget", "must be > 0");
    }
    if (search_start == 0 || search_cap == 0) {
        throw ConfigError("feasibility.search", "start and cap must be >= 1");
    }

    std::size_t probe = std::min(search_start, search_cap);
    std::size_t lo = 0;       // largest known-feasible n
    std::size_t hi = 0;       // smallest known-infeasible n (0 = none found yet)

    if (timed_run_s(probe) <= budget_s) {
        lo = probe;
        while (lo < search_cap) {
            const std::size_t next = std::min(search_cap, lo * 2);
            if (timed_run_s(next) <= budget_s) {
                lo = next;
            } else {
                hi = next;
                break;
            }
        }
        if (hi == 0) {
            if (capped != nullptr) {
                *capped = true;
            }
            return lo; // == search_cap
        }
    } else {
        hi = probe;
        std::size_t down = probe / 2;
        while (down >= 1) {
            if (timed_run_s(down) <= budget_s) {
                lo = down;
                break;
            }
            hi = down;
            down /= 2;
        }
        if (lo == 0) {
            return 0; // even one sample exceeds the budget
        }
    }

    // Bisect to a ~1/64 relative grid.
    while (hi - lo > std::max<std::size_t>(1, lo / 64)) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (timed_run_s(mid) <= budget_s) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

TimingReport max_samples_within_budget(const UncertaintyModel& model, const SimConfig& config,
                                       const VehicleGeometry& geometry,
                                       const PhysicalConstants& constants,
                                       const TimingBudget& budget,
                                       const FeasibilityOptions& options) {
    budget.validate();
    TimingReport report;
    report.budget = budget;
    report.mc_budget_ms = budget.mc_budget_ms();

    const double budget_s = report.mc_budget_ms * 1e-3;
    auto timed_run = [&](std::size_t n) {
        return median_wall_time_s(
            [&]() {
                const SampleBatch batch = draw_batch(model, n);
                run_parallel(batch, config, geometry, constants, options.workers,
                             options.chunk_size);
            },
            options.timing_reps, options.timing_warmup);
    };

    report.max_samples =
        max_feasible_n(timed_run, budget_s, options.search_start, options.search_cap,
                       &report.capped);
    report.meets_convergence_threshold = report.max_samples >= kConvergenceBaselineN;

    if (report.max_samples > 0) {
        // Re-measure the winner, splitting generation from simulation.
        std::vector<double> totals;
        std::vector<double> sim_only;
        for (int rep = 0; rep < std::max(1, options.timing_reps); ++rep) {
            const auto gen_start = std::chrono::steady_clock::now();
            const SampleBatch batch = draw_batch(model, report.max_samples);
            const double gen_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - gen_start)
                    .count();
            const ExecutionReport run = run_parallel(batch, config, geometry, constants,
                                                     options.workers, options.chunk_size);
            totals.push_back(gen_s + run.wall_time_s);
            sim_only.push_back(run.wall_time_s);
        }
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            const std::size_t mid = v.size() / 2;
            return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
        };
        report.time_with_sampling_s = median(totals);
        report.sim_only_time_s = median(sim_only);
    }
    return report;
}

} // namespace brakemc
