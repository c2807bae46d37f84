// Acceptance suite: runs every release criterion at its pinned tolerance
// and prints one pass/fail line per criterion. Exits non-zero if any fail.
//
// Usage: brakemc_acceptance --cli path/to/brakemc [--out-dir DIR]

#include "brakemc/analysis.hpp"
#include "brakemc/backends.hpp"
#include "brakemc/cli.hpp"
#include "brakemc/io.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace brakemc;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int number, const char* title, const Criterion& result) {
    std::printf("[%s] %2d. %s: %s\n", result.pass ? "PASS" : "FAIL", number, title,
                result.detail.c_str());
    std::fflush(stdout);
    if (!result.pass) {
        ++failures;
    }
}

std::string cli_path;
fs::path scratch_dir;

int run_cli_command(const std::string& args) {
    const std::string command = cli_path + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const SimConfig kSim{};
const VehicleGeometry kGeometry{};
const PhysicalConstants kConstants{};

// ---------------------------------------------------------------------------
// 1. Backend bit-exactness over {1k, 12k, 100k} x {1, 2, 4, max} x 3 seeds.
// ---------------------------------------------------------------------------
Criterion backend_bit_exactness() {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    const unsigned max_workers = std::max(1u, std::thread::hardware_concurrency());
    std::size_t comparisons = 0;

    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        for (std::size_t n : {1000UL, 12000UL, 100000UL}) {
            UncertaintyModel model;
            model.seed = seed;
            const SampleBatch batch = draw_batch(model, n);
            const ExecutionReport sequential =
                run_sequential(batch, kSim, kGeometry, kConstants);
            for (unsigned workers : {1u, 2u, 4u, max_workers}) {
                const ExecutionReport parallel =
                    run_parallel(batch, kSim, kGeometry, kConstants, workers);
                const ConsistencyVerdict verdict =
                    verify_consistency(sequential, parallel);
                ++comparisons;
                if (!verdict.pass || verdict.max_abs_deviation != 0.0) {
                    c.pass = false;
                    std::ostringstream detail;
                    detail << "seed " << seed << " n " << n << " workers " << workers
                           << ": max deviation " << verdict.max_abs_deviation
                           << ", bitwise " << verdict.bitwise_equal;
                    c.detail = detail.str();
                    return c;
                }
            }
        }
        if (run_cli_command("verify --seed " + std::to_string(seed) + " --out-dir " +
                            (scratch_dir / "verify").string()) != 0) {
            c.pass = false;
            c.detail = "CLI verify exited non-zero for seed " + std::to_string(seed);
            return c;
        }
    }
    std::ostringstream detail;
    detail << comparisons << " executor pairs all bit-identical, max deviation 0.0 ("
           << std::fixed << elapsed_s(start) << " s)";
    c.detail = detail.str();
    return c;
}

// ---------------------------------------------------------------------------
// Criteria 2-4 share one 350k master run (prefix stability makes its first
// 12k results identical to a direct 12k run; criterion 9 checks that).
// ---------------------------------------------------------------------------
Criterion distribution_statistics(const std::vector<RolloutResult>& first_12k) {
    Criterion c;
    const DistributionSummary summary = summarize(first_12k);
    std::ostringstream detail;
    detail << "n=12000 mean " << summary.mean << " m (range 78.22..80.22), sd "
           << summary.sd << " m (range 11.71..12.71), observed [" << summary.min << ", "
           << summary.max << "] covers [50, 125]";
    c.detail = detail.str();
    c.pass = summary.mean >= 78.22 && summary.mean <= 80.22 && summary.sd >= 11.71 &&
             summary.sd <= 12.71 && summary.min <= 50.0 && summary.max >= 125.0;
    return c;
}

Criterion convergence_stability(const std::vector<RolloutResult>& master) {
    Criterion c;
    const std::vector<std::size_t> n_values{12000, 25000, 37000, 65000, 100000, 150000,
                                            350000};
    const std::vector<ConvergenceRow> rows = convergence_from_results(master, n_values);
    double max_dmean = 0.0;
    double max_dsd = 0.0;
    for (const ConvergenceRow& row : rows) {
        max_dmean = std::max(max_dmean, std::abs(row.delta_mean));
        max_dsd = std::max(max_dsd, std::abs(row.delta_sd));
    }
    std::ostringstream detail;
    detail << "max |dmean| " << max_dmean << " m (<= 0.15), max |dsd| " << max_dsd
           << " m (<= 0.3) across n in {12k..350k}";
    c.detail = detail.str();
    c.pass = max_dmean <= 0.15 && max_dsd <= 0.3;
    return c;
}

Criterion risk_thresholds(const std::vector<RolloutResult>& first_12k) {
    Criterion c;
    const double q95 = min_safe_headway(first_12k, 0.05);
    const double q99 = min_safe_headway(first_12k, 0.01);
    const double q999 = min_safe_headway(first_12k, 0.001);
    const double ttc = ttc_for_headway(q99, 30.0);
    const double p_at_reference = collision_probability(first_12k, 100.6);
    std::ostringstream detail;
    detail << "5% " << q95 << " m (100.6+-2), 1% " << q99 << " m (111.1+-2), 0.1% "
           << q999 << " m (122.7+-3), TTC(1%) " << ttc << " s (3.7+-0.1), P(100.6 m) "
           << p_at_reference << " (0.05+-0.01)";
    c.detail = detail.str();
    c.pass = std::abs(q95 - 100.6) <= 2.0 && std::abs(q99 - 111.1) <= 2.0 &&
             std::abs(q999 - 122.7) <= 3.0 && std::abs(ttc - 3.7) <= 0.1 &&
             std::abs(p_at_reference - 0.05) <= 0.01;
    return c;
}

// ---------------------------------------------------------------------------
// 5. Deterministic physics oracle.
// ---------------------------------------------------------------------------
Criterion physics_oracle() {
    Criterion c;
    const ScenarioSample nominal{30.0, 0.8, 0.0, 1500.0, 0.3};
    const RolloutResult result = simulate_rollout(nominal, kSim, kGeometry, kConstants);
    const double fine = oracle::stopping_distance(oracle::Params{}, 1e-5);
    const double oracle_gap = std::abs(result.stop_distance - fine);

    SimConfig fast_sim = kSim;
    fast_sim.dt = 1e-6;
    VehicleGeometry instant_brake = kGeometry;
    instant_brake.actuator_tau = 1e-6;
    PhysicalConstants vacuum = kConstants;
    vacuum.air_density = 0.0;
    const RolloutResult analytic =
        simulate_rollout(nominal, fast_sim, instant_brake, vacuum);
    const double analytic_gap = std::abs(analytic.stop_distance - 75.0);

    std::ostringstream detail;
    detail << "nominal " << result.stop_distance << " m vs fine-step oracle " << fine
           << " m (gap " << oracle_gap << " <= 0.05); analytic case "
           << analytic.stop_distance << " m vs 75.0 (gap " << analytic_gap
           << " <= 0.01)";
    c.detail = detail.str();
    c.pass = oracle_gap <= 0.05 && analytic_gap <= 0.01;
    return c;
}

// ---------------------------------------------------------------------------
// 6. RK4 order property across three parameter draws.
// ---------------------------------------------------------------------------
Criterion rk4_order() {
    Criterion c;
    const ScenarioSample draws[] = {
        {30.0, 0.8, 0.0, 1500.0, 0.3},
        {24.0, 0.7, 0.04, 1350.0, 0.36},
        {36.0, 0.95, -0.05, 1620.0, 0.27},
    };
    std::ostringstream detail;
    detail << "error ratios on dt 1e-3 -> 5e-4:";
    for (const ScenarioSample& sample : draws) {
        oracle::Params p;
        p.v0 = sample.initial_speed;
        p.mu = sample.friction;
        p.theta = sample.grade;
        p.mass = sample.mass;
        p.cd = sample.drag_coeff;
        const oracle::State3 reference =
            oracle::integrate_steps({0.0, p.v0, 0.0}, p, 1e-6, 100000);

        const RolloutTerms terms = RolloutTerms::from(sample, kSim, kGeometry, kConstants);
        auto endpoint_error = [&](double dt, int steps) {
            SimState state{0.0, sample.initial_speed, 0.0};
            for (int i = 0; i < steps; ++i) {
                state = rk4_step(state, terms, dt);
            }
            const double ex = state.position - reference.x;
            const double ev = state.speed - reference.v;
            const double ea = state.brake_accel - reference.a;
            return std::sqrt(ex * ex + ev * ev + ea * ea);
        };
        const double ratio = endpoint_error(1e-3, 100) / endpoint_error(5e-4, 200);
        detail << " " << ratio;
        if (!(ratio >= 12.0 && ratio <= 20.0)) {
            c.pass = false;
        }
    }
    detail << " (each in [12, 20])";
    c.detail = detail.str();
    return c;
}

// ---------------------------------------------------------------------------
// 7. Parallel scaling substitute for the hardware-bound speedup table.
// ---------------------------------------------------------------------------
Criterion parallel_scaling() {
    Criterion c;
    const unsigned max_workers = std::max(1u, std::thread::hardware_concurrency());
    const std::vector<std::size_t> sweep{1000, 10000, 100000};

    UncertaintyModel model;
    std::vector<TimingPoint> sequential_points;
    std::vector<TimingPoint> parallel_points;
    for (std::size_t n : sweep) {
        const SampleBatch batch = draw_batch(model, n);
        sequential_points.push_back(TimingPoint{
            n, median_wall_time_s(
                   [&]() { run_sequential(batch, kSim, kGeometry, kConstants); }, 5, 1)});
        parallel_points.push_back(TimingPoint{
            n, median_wall_time_s(
                   [&]() {
                       run_parallel(batch, kSim, kGeometry, kConstants,
                                    std::max(4u, max_workers));
                   },
                   5, 1)});
    }

    const double seq_100k = sequential_points.back().wall_time_s;
    const double par_100k = parallel_points.back().wall_time_s;
    const bool speedup = par_100k < seq_100k;

    const TimingFit parallel_fit = fit_timing_model(parallel_points);
    const bool fit_ok = parallel_fit.overhead_s > 0.0 && parallel_fit.per_sample_s > 0.0;

    // Pairwise sequential slopes must agree within 30%.
    auto slope = [&](std::size_t i, std::size_t j) {
        return (sequential_points[j].wall_time_s - sequential_points[i].wall_time_s) /
               static_cast<double>(sequential_points[j].n - sequential_points[i].n);
    };
    const double s01 = slope(0, 1);
    const double s12 = slope(1, 2);
    const double s02 = slope(0, 2);
    const double lo = std::min({s01, s12, s02});
    const double hi = std::max({s01, s12, s02});
    const bool linear = lo > 0.0 && hi / lo <= 1.3;

    std::ostringstream detail;
    detail << "100k wall: sequential " << seq_100k << " s vs parallel(" <<
        std::max(4u, max_workers) << "w) " << par_100k << " s (" << max_workers
           << " hardware thread(s)); parallel fit overhead " << parallel_fit.overhead_s
           << " s, slope " << parallel_fit.per_sample_s
           << " s/sample; sequential slope spread " << hi / lo << "x (<= 1.3)";
    c.detail = detail.str();
    c.pass = speedup && fit_ok && linear;
    return c;
}

// ---------------------------------------------------------------------------
// 8. Feasibility monotonicity and the 350k desk-scale budget.
// ---------------------------------------------------------------------------
Criterion feasibility() {
    Criterion c;
    UncertaintyModel model;
    std::ostringstream detail;

    std::size_t previous = 0;
    bool monotone = true;
    detail << "max n within";
    for (double budget_ms : {100.0, 530.0, 2000.0}) {
        TimingBudget budget;
        budget.total_ms = budget_ms;
        budget.perception_ms = 0.0;
        budget.decision_ms = 0.0;
        FeasibilityOptions options;
        options.search_start = 250;
        const TimingReport report = max_samples_within_budget(model, kSim, kGeometry,
                                                              kConstants, budget, options);
        detail << " " << budget_ms << "ms:" << report.max_samples;
        if (report.max_samples + report.max_samples / 64 + 1 < previous) {
            monotone = false;
        }
        previous = report.max_samples;
    }

    // Desk-scale check: 350k samples must fit a 60 s budget. Probe the
    // target count directly (the search is monotone, so feasibility at the
    // cap is the whole question).
    TimingBudget one_minute;
    one_minute.total_ms = 60000.0;
    one_minute.perception_ms = 0.0;
    one_minute.decision_ms = 0.0;
    FeasibilityOptions big;
    big.search_start = 350000;
    big.search_cap = 350000;
    big.timing_reps = 1;
    const TimingReport report =
        max_samples_within_budget(model, kSim, kGeometry, kConstants, one_minute, big);
    detail << "; 60s budget: " << report.max_samples << " (needs >= 350000, measured "
           << report.time_with_sampling_s << " s)";

    c.detail = detail.str();
    c.pass = monotone && report.max_samples >= 350000;
    return c;
}

// ---------------------------------------------------------------------------
// 9. Sampling conformance: KS, prefix stability, batch mean.
// ---------------------------------------------------------------------------
Criterion sampling_conformance() {
    Criterion c;
    const UncertaintyModel model{};
    const std::size_t n = 100000;
    const SampleBatch batch = draw_batch(model, n);
    const double critical = 1.6276 / std::sqrt(static_cast<double>(n));

    double worst_ks = 0.0;
    std::vector<double> values(n);
    const struct {
        double ScenarioSample::* field;
        NormalSpec spec;
    } marginals[] = {
        {&ScenarioSample::initial_speed, model.initial_speed},
        {&ScenarioSample::friction, model.friction},
        {&ScenarioSample::grade, model.grade},
        {&ScenarioSample::mass, model.mass},
        {&ScenarioSample::drag_coeff, model.drag_coeff},
    };
    for (const auto& m : marginals) {
        for (std::size_t i = 0; i < n; ++i) {
            values[i] = batch.samples[i].*(m.field);
        }
        worst_ks = std::max(worst_ks, oracle::ks_statistic(values, m.spec.mean, m.spec.sd));
    }

    const SampleBatch small = draw_batch(model, 1000);
    const SampleBatch medium = draw_batch(model, 12000);
    bool prefix_ok = true;
    for (std::size_t i = 0; i < small.size(); ++i) {
        if (std::memcmp(&small.samples[i], &medium.samples[i], sizeof(ScenarioSample)) !=
            0) {
            prefix_ok = false;
            break;
        }
    }

    double v0_sum = 0.0;
    for (std::size_t i = 0; i < 12000; ++i) {
        v0_sum += medium.samples[i].initial_speed;
    }
    const double v0_mean = v0_sum / 12000.0;

    std::ostringstream detail;
    detail << "worst marginal KS " << worst_ks << " (< " << critical
           << "); 1k/12k prefix " << (prefix_ok ? "bit-identical" : "DIVERGED")
           << "; v0 batch mean " << v0_mean << " (30 +- 0.055)";
    c.detail = detail.str();
    c.pass = worst_ks < critical && prefix_ok && std::abs(v0_mean - 30.0) <= 0.055;
    return c;
}

// ---------------------------------------------------------------------------
// 10. End-to-end determinism of the CLI artifacts.
// ---------------------------------------------------------------------------
Criterion end_to_end_determinism() {
    Criterion c;
    const fs::path dir_a = scratch_dir / "determinism_a";
    const fs::path dir_b = scratch_dir / "determinism_b";
    const std::string common = "run --dump-samples --out-dir ";
    if (run_cli_command(common + dir_a.string()) != 0 ||
        run_cli_command(common + dir_b.string()) != 0) {
        c.pass = false;
        c.detail = "CLI run exited non-zero";
        return c;
    }
    std::ostringstream detail;
    for (const char* name : {"results.csv", "summary.json", "histogram.svg",
                             "samples.csv"}) {
        const std::string a = read_text_file(dir_a / name);
        const std::string b = read_text_file(dir_b / name);
        if (a != b || a.empty()) {
            c.pass = false;
            c.detail = std::string(name) + " differs between identical runs";
            return c;
        }
        detail << name << " ";
    }
    detail << "byte-identical across two default runs";
    c.detail = detail.str();
    return c;
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string arg = argv[i];
        if (arg == "--cli") {
            cli_path = argv[i + 1];
        } else if (arg == "--out-dir") {
            scratch_dir = argv[i + 1];
        }
    }
    if (cli_path.empty()) {
        std::fprintf(stderr, "usage: brakemc_acceptance --cli path/to/brakemc\n");
        return 2;
    }
    if (scratch_dir.empty()) {
        scratch_dir = fs::temp_directory_path() / "brakemc_acceptance";
    }
    fs::create_directories(scratch_dir);

    const auto suite_start = std::chrono::steady_clock::now();

    report(1, "backend bit-exactness", backend_bit_exactness());

    // One 350k master run feeds criteria 2-4 through prefix reduction.
    const SampleBatch master_batch = draw_batch(UncertaintyModel{}, 350000);
    const ExecutionReport master =
        run_parallel(master_batch, kSim, kGeometry, kConstants, 0);
    const std::vector<RolloutResult> first_12k(master.results.begin(),
                                               master.results.begin() + 12000);
    report(2, "distribution statistics", distribution_statistics(first_12k));
    report(3, "convergence stability", convergence_stability(master.results));
    report(4, "risk thresholds", risk_thresholds(first_12k));

    report(5, "deterministic physics oracle", physics_oracle());
    report(6, "rk4 order property", rk4_order());
    report(7, "parallel scaling property", parallel_scaling());
    report(8, "feasibility budget search", feasibility());
    report(9, "sampling conformance", sampling_conformance());
    report(10, "end-to-end determinism", end_to_end_determinism());

    std::printf("%d/10 criteria passed (%.1f s total)\n", 10 - failures,
                elapsed_s(suite_start));
    std::error_code ec;
    fs::remove_all(scratch_dir, ec);
    return failures == 0 ? 0 : 1;
}
