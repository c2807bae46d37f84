#pragma once

// Statistical products over rollout results: distribution summaries,
// convergence tables against the n=12k baseline, collision-probability
// curves with risk-threshold headways and TTC conversion, and the
// real-time feasibility search.

#include "brakemc/backends.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace brakemc {

/// Sample count at which the stopping-distance estimator is treated as
/// converged; feasibility reports compare against it.
inline constexpr std::size_t kConvergenceBaselineN = 12000;

/// Equal-width histogram anchored at floor(min).
struct Histogram {
    double origin = 0.0;    ///< left edge of bin 0
    double bin_width = 2.0; ///< m
    std::vector<std::uint64_t> counts;
};

struct DistributionSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0; ///< sample standard deviation, n-1 denominator
    double min = 0.0;
    double max = 0.0;
    double median = 0.0;
    double skewness = 0.0;    ///< standardized third moment
    bool right_skewed = false; ///< mean > median
    std::size_t horizon_count = 0;
    Histogram histogram;
};

/// Mean, standard deviation, extrema, median, skew, and histogram of the
/// stopping distances. Horizon-flagged results are included in every
/// statistic and additionally counted in horizon_count. Throws ConfigError
/// on empty input.
DistributionSummary summarize(const std::vector<RolloutResult>& results,
                              double bin_width = 2.0);

struct ConvergenceRow {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double delta_mean = 0.0; ///< vs the baseline row
    double delta_sd = 0.0;
};

/// Convergence rows from prefixes of one master result sequence. Because
/// sampling is counter-based, the prefix of a large batch IS the batch a
/// smaller n would generate, so every row shares the baseline's stream.
/// Requires baseline_n in n_values and max(n_values) <= master size.
std::vector<ConvergenceRow> convergence_from_results(
    const std::vector<RolloutResult>& master, const std::vector<std::size_t>& n_values,
    std::size_t baseline_n = kConvergenceBaselineN);

/// Draws max(n_values) samples once, runs the selected executor once, and
/// reduces prefixes.
std::vector<ConvergenceRow> convergence_table(
    const UncertaintyModel& model, const std::vector<std::size_t>& n_values,
    const SimConfig& config, const VehicleGeometry& geometry,
    const PhysicalConstants& constants, ExecutorKind executor = ExecutorKind::parallel,
    unsigned workers = 0, std::size_t chunk_size = 256,
    std::size_t baseline_n = kConvergenceBaselineN);

/// Fraction of rollouts whose stopping distance exceeds the headway.
/// Horizon-flagged rollouts exceed every finite headway. h0 must be >= 0.
double collision_probability(const std::vector<RolloutResult>& results, double headway_m);

/// Smallest sample stopping distance h with collision_probability <= risk:
/// the ceil((1-risk)*n)-th order statistic, ties resolved upward, horizon
/// flags at the top of the order. Returns +infinity when more than risk*n
/// rollouts never stopped. Throws ConfigError unless 0 < risk < 1.
double min_safe_headway(const std::vector<RolloutResult>& results, double risk);

/// Time-to-collision equivalent of a headway at a closing speed.
double ttc_for_headway(double headway_m, double closing_speed_mps);

struct RiskThreshold {
    double risk = 0.0;      ///< e.g. 0.01
    double headway_m = 0.0; ///< min_safe_headway at that risk
    double ttc_s = 0.0;     ///< headway / closing speed
};

struct RiskCurve {
    std::vector<double> headways_m;
    std::vector<double> probabilities;
    std::vector<RiskThreshold> thresholds; ///< ordered by decreasing risk
};

/// Evaluates the exceedance curve on a headway grid and the thresholds at
/// the given risk levels. Probabilities are non-increasing in headway by
/// construction; this is still checked and a violation is a logic error.
RiskCurve build_risk_curve(const std::vector<RolloutResult>& results,
                           const std::vector<double>& headway_grid,
                           const std::vector<double>& risk_levels,
                           double closing_speed_mps);

/// Uniform grid helper: start, start+step, ..., up to and including stop.
std::vector<double> headway_grid(double start, double stop, double step);

/// Latency decomposition of the evaluation pipeline, ms.
struct TimingBudget {
    double total_ms = 700.0;
    double perception_ms = 120.0;
    double decision_ms = 50.0;

    double mc_budget_ms() const { return total_ms - perception_ms - decision_ms; }
    void validate(const std::string& prefix = "budget") const;
};

struct FeasibilityOptions {
    std::size_t search_start = 1000;
    std::size_t search_cap = 1u << 22;
    int timing_reps = 5;
    int timing_warmup = 1;
    unsigned workers = 0; ///< 0 = hardware thread count
    std::size_t chunk_size = 256;
};

struct TimingReport {
    TimingBudget budget;
    double mc_budget_ms = 0.0;
    std::size_t max_samples = 0;
    bool meets_convergence_threshold = false; ///< max_samples >= kConvergenceBaselineN
    bool capped = false;                      ///< search stopped at search_cap
    /// Measured at max_samples: full pipeline cost (batch generation plus
    /// rollouts) and the rollout loop alone. Both reported to keep the two
    /// timing conventions distinguishable.
    double time_with_sampling_s = 0.0;
    double sim_only_time_s = 0.0;
};

/// Largest n whose measured cost fits the budget, by doubling from
/// search_start then bisecting; each probe is a median-of-reps timing of
/// `timed_run_s`. Returns 0 when even a single sample exceeds the budget.
/// The result resolves to a relative grid step of ~1/64, so comparisons
/// between budgets should allow one grid step of slack.
std::size_t max_feasible_n(const std::function<double(std::size_t)>& timed_run_s,
                           double budget_s, std::size_t search_start,
                           std::size_t search_cap, bool* capped = nullptr);

/// Times the parallel executor (batch generation included: a deployed
/// pipeline would sample at runtime) and searches for the largest sample
/// count within budget.mc_budget_ms(). Must own the machine while timing.
TimingReport max_samples_within_budget(const UncertaintyModel& model,
                                       const SimConfig& config,
                                       const VehicleGeometry& geometry,
                                       const PhysicalConstants& constants,
                                       const TimingBudget& budget,
                                       const FeasibilityOptions& options = {});

} // namespace brakemc
