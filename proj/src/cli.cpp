#include "brakemc/cli.hpp"

#include "brakemc/errors.hpp"
#include "brakemc/svg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace brakemc::cli {

namespace fs = std::filesystem;

namespace {

ExecutionReport run_configured_executor(const RunConfig& config, const SampleBatch& batch) {
    if (config.execution.executor == ExecutorKind::sequential) {
        return run_sequential(batch, config.sim, config.geometry, config.constants);
    }
    return run_parallel(batch, config.sim, config.geometry, config.constants,
                        config.execution.workers, config.execution.chunk_size);
}

void write_json_artifact(const RunConfig& config, const char* name, const json& document) {
    if (config.outputs.write_json) {
        write_text_file(fs::path(config.outputs.directory) / name, document.dump(2) + "\n");
    }
}

void write_csv_artifact(const RunConfig& config, const char* name, const std::string& text) {
    if (config.outputs.write_csv) {
        write_text_file(fs::path(config.outputs.directory) / name, text);
    }
}

void write_svg_artifact(const RunConfig& config, const char* name, const std::string& text) {
    if (config.outputs.write_svg) {
        write_text_file(fs::path(config.outputs.directory) / name, text);
    }
}

double to_kmh(double mps) {
    return mps * 3.6;
}

} // namespace

int cmd_run(const RunConfig& config, std::ostream& out) {
    config.validate();
    const SampleBatch batch = draw_batch(config.uncertainty, config.execution.samples);
    const ExecutionReport report = run_configured_executor(config, batch);
    const DistributionSummary summary =
        summarize(report.results, config.outputs.histogram_bin_width);

    write_csv_artifact(config, "results.csv", results_csv(report.results));
    write_json_artifact(config, "summary.json", summary_json(summary));
    write_svg_artifact(config, "histogram.svg", histogram_svg(summary));
    if (config.outputs.dump_samples) {
        write_csv_artifact(config, "samples.csv", batch_csv(batch));
    }

    out << "n=" << summary.n << " executor=" << to_string(report.executor)
        << " workers=" << report.worker_count << " wall=" << report.wall_time_s << " s\n";
    out << "mean initial speed " << config.uncertainty.initial_speed.mean << " m/s ("
        << to_kmh(config.uncertainty.initial_speed.mean) << " km/h)\n";
    out << "stop distance: mean " << summary.mean << " m, sd " << summary.sd << " m, range ["
        << summary.min << ", " << summary.max << "] m\n";
    if (batch.clamp_count > 0) {
        out << "warning: " << batch.clamp_count << " draw(s) clamped to physical range\n";
    }
    if (summary.horizon_count > 0) {
        out << "warning: " << summary.horizon_count
            << " rollout(s) reached the horizon without stopping\n";
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& config, const std::string& against_csv, std::ostream& out) {
    config.validate();
    const SampleBatch batch = draw_batch(config.uncertainty, config.execution.samples);
    const ExecutionReport sequential =
        run_sequential(batch, config.sim, config.geometry, config.constants);

    ExecutionReport other;
    if (against_csv.empty()) {
        other = run_parallel(batch, config.sim, config.geometry, config.constants,
                             config.execution.workers, config.execution.chunk_size);
    } else {
        other.executor = ExecutorKind::parallel;
        other.worker_count = 0;
        other.results = parse_results_csv(read_text_file(against_csv));
        // Step counts are not stored in the CSV; t_stop = steps * dt is, so
        // the count reconstructs exactly.
        for (RolloutResult& r : other.results) {
            r.steps = std::llround(r.stop_time / config.sim.dt);
        }
    }

    const ConsistencyVerdict verdict = verify_consistency(sequential, other);
    write_json_artifact(config, "consistency.json",
                        consistency_json(verdict, sequential.wall_time_s,
                                         against_csv.empty() ? other.wall_time_s : 0.0));

    out << "n=" << verdict.n << " max|d_stop deviation| = " << verdict.max_abs_deviation
        << " m, bitwise_equal=" << (verdict.bitwise_equal ? "true" : "false") << " -> "
        << (verdict.pass ? "PASS" : "FAIL") << "\n";
    if (!verdict.pass) {
        out << "first mismatch at index " << verdict.first_mismatch << "\n";
        return kExitConsistency;
    }
    return kExitOk;
}

int cmd_converge(const RunConfig& config, const std::vector<std::size_t>& n_values,
                 std::ostream& out) {
    config.validate();
    if (std::find(n_values.begin(), n_values.end(), kConvergenceBaselineN) ==
        n_values.end()) {
        throw ConfigError("converge.n_values",
                          "must include the baseline n=" +
                              std::to_string(kConvergenceBaselineN));
    }
    const std::vector<ConvergenceRow> rows = convergence_table(
        config.uncertainty, n_values, config.sim, config.geometry, config.constants,
        config.execution.executor, config.execution.workers, config.execution.chunk_size);

    write_csv_artifact(config, "convergence.csv", convergence_csv(rows));

    out << "n,mean_m,sd_m,delta_mean_m,delta_sd_m\n";
    for (const ConvergenceRow& row : rows) {
        out << row.n << "," << row.mean << "," << row.sd << "," << row.delta_mean << ","
            << row.delta_sd << "\n";
    }
    return kExitOk;
}

int cmd_risk(const RunConfig& config, const RiskOptions& options, std::ostream& out) {
    config.validate();
    if (options.levels.empty()) {
        throw ConfigError("risk.levels", "must be non-empty");
    }
    for (double level : options.levels) {
        if (!(level > 0.0 && level < 1.0)) {
            throw ConfigError("risk.levels", "entries must be strictly between 0 and 1");
        }
        if (level * static_cast<double>(config.execution.samples) < 1.0) {
            std::cerr << "warning: risk level " << level << " needs n >= " << 1.0 / level
                      << " samples for a resolvable tail (n=" << config.execution.samples
                      << ")\n";
        }
    }

    const SampleBatch batch = draw_batch(config.uncertainty, config.execution.samples);
    const ExecutionReport report = run_configured_executor(config, batch);

    double finite_min = 0.0;
    double finite_max = 0.0;
    bool any_finite = false;
    for (const RolloutResult& r : report.results) {
        if (!r.hit_horizon) {
            finite_min = any_finite ? std::min(finite_min, r.stop_distance) : r.stop_distance;
            finite_max = any_finite ? std::max(finite_max, r.stop_distance) : r.stop_distance;
            any_finite = true;
        }
    }
    double start = options.grid_start;
    double stop = options.grid_stop;
    if (start < 0.0) {
        start = any_finite ? std::max(0.0, std::floor(finite_min) - 5.0) : 0.0;
    }
    if (stop < 0.0) {
        stop = any_finite ? std::ceil(finite_max) + 5.0 : start + 1.0;
    }
    const double closing_speed = options.closing_speed > 0.0
                                     ? options.closing_speed
                                     : config.uncertainty.initial_speed.mean;

    const RiskCurve curve =
        build_risk_curve(report.results, headway_grid(start, stop, options.grid_step),
                         options.levels, closing_speed);

    write_csv_artifact(config, "risk_curve.csv", risk_curve_csv(curve));
    write_csv_artifact(config, "risk_thresholds.csv", risk_thresholds_csv(curve));
    write_svg_artifact(config, "risk_curve.svg", risk_curve_svg(curve));

    out << "closing speed " << closing_speed << " m/s (" << to_kmh(closing_speed)
        << " km/h)\n";
    for (const RiskThreshold& t : curve.thresholds) {
        out << 100.0 * t.risk << "% risk: headway >= " << t.headway_m
            << " m (TTC " << t.ttc_s << " s)\n";
    }
    return kExitOk;
}

int cmd_feasibility(const RunConfig& config, const TimingBudget& budget,
                    const FeasibilityOptions& options, std::ostream& out) {
    config.validate();
    budget.validate();
    FeasibilityOptions effective = options;
    if (effective.workers == 0) {
        effective.workers = config.execution.workers;
    }
    effective.chunk_size = config.execution.chunk_size;

    const TimingReport report = max_samples_within_budget(
        config.uncertainty, config.sim, config.geometry, config.constants, budget, effective);

    write_json_artifact(config, "timing.json", timing_report_json(report));

    out << "MC budget " << report.mc_budget_ms << " ms (total " << budget.total_ms
        << " - perception " << budget.perception_ms << " - decision " << budget.decision_ms
        << ")\n";
    out << "max samples within budget: " << report.max_samples
        << (report.capped ? " (search cap reached)" : "") << "\n";
    out << "meets n=" << kConvergenceBaselineN
        << " convergence threshold: " << (report.meets_convergence_threshold ? "yes" : "no")
        << "\n";
    if (report.max_samples == 0) {
        std::cerr << "warning: budget is below the cost of a single sample\n";
    } else {
        out << "measured at max: " << report.time_with_sampling_s
            << " s with sampling, " << report.sim_only_time_s << " s simulation only\n";
    }
    return kExitOk;
}

int cmd_bench(const RunConfig& config, const BenchOptions& options, std::ostream& out) {
    config.validate();
    if (options.n_values.empty()) {
        throw ConfigError("bench.n_values", "must be non-empty");
    }
    std::vector<TimingPoint> points;
    points.reserve(options.n_values.size());
    for (std::size_t n : options.n_values) {
        const SampleBatch batch = draw_batch(config.uncertainty, n);
        const double median = median_wall_time_s(
            [&]() { run_configured_executor(config, batch); }, options.reps,
            options.warmup);
        points.push_back(TimingPoint{n, median});
        out << "n=" << n << " median wall " << median << " s\n";
    }

    json document{{"executor", to_string(config.execution.executor)},
                  {"workers", config.execution.workers},
                  {"reps", options.reps}};
    if (points.size() >= 3) {
        const TimingFit fit = fit_timing_model(points);
        document.update(timing_fit_json(fit, points));
        out << "fit: wall_time ~ " << fit.overhead_s << " s + " << fit.per_sample_s
            << " s * n\n";
    } else {
        document.update(json{{"points", timing_fit_json(TimingFit{}, points)["points"]}});
    }
    write_json_artifact(config, "bench.json", document);
    return kExitOk;
}

namespace {

void add_common_options(CLI::App* sub, RunConfig& config, std::string& config_path,
                        std::string& executor_name, std::vector<std::string>& formats) {
    sub->add_option("--config", config_path, "JSON config file; flags override its values");

    sub->add_option("--dt", config.sim.dt, "integration step, s")->capture_default_str();
    sub->add_option("--t-max", config.sim.t_max, "simulation horizon, s")
        ->capture_default_str();
    sub->add_option("--brake-cmd", config.sim.brake_cmd,
                    "commanded deceleration, m/s^2 (negative)")
        ->capture_default_str();

    sub->add_option("--cg-height", config.geometry.cg_height, "center-of-gravity height, m")
        ->capture_default_str();
    sub->add_option("--wheelbase", config.geometry.wheelbase, "wheelbase, m")
        ->capture_default_str();
    sub->add_option("--tau", config.geometry.actuator_tau, "brake-actuator time constant, s")
        ->capture_default_str();

    sub->add_option("--gravity", config.constants.gravity, "gravitational acceleration, m/s^2")
        ->capture_default_str();
    sub->add_option("--rho", config.constants.air_density, "air density, kg/m^3")
        ->capture_default_str();
    sub->add_option("--frontal-area", config.constants.frontal_area, "frontal area, m^2")
        ->capture_default_str();

    sub->add_option("--seed", config.uncertainty.seed, "sampling stream seed")
        ->capture_default_str();
    sub->add_option("--v0-mean", config.uncertainty.initial_speed.mean,
                    "initial speed mean, m/s")
        ->capture_default_str();
    sub->add_option("--v0-sd", config.uncertainty.initial_speed.sd,
                    "initial speed std dev, m/s")
        ->capture_default_str();
    sub->add_option("--mu-mean", config.uncertainty.friction.mean, "friction mean")
        ->capture_default_str();
    sub->add_option("--mu-sd", config.uncertainty.friction.sd, "friction std dev")
        ->capture_default_str();
    sub->add_option("--grade-mean", config.uncertainty.grade.mean, "road grade mean, rad")
        ->capture_default_str();
    sub->add_option("--grade-sd", config.uncertainty.grade.sd, "road grade std dev, rad")
        ->capture_default_str();
    sub->add_option("--mass-mean", config.uncertainty.mass.mean, "vehicle mass mean, kg")
        ->capture_default_str();
    sub->add_option("--mass-sd", config.uncertainty.mass.sd, "vehicle mass std dev, kg")
        ->capture_default_str();
    sub->add_option("--cd-mean", config.uncertainty.drag_coeff.mean, "drag coefficient mean")
        ->capture_default_str();
    sub->add_option("--cd-sd", config.uncertainty.drag_coeff.sd, "drag coefficient std dev")
        ->capture_default_str();

    sub->add_option("--executor", executor_name, "executor: sequential or parallel")
        ->capture_default_str();
    sub->add_option("--workers", config.execution.workers,
                    "parallel worker count (0 = hardware threads)")
        ->capture_default_str();
    sub->add_option("--chunk-size", config.execution.chunk_size,
                    "samples per dispatched chunk")
        ->capture_default_str();
    sub->add_option("--samples", config.execution.samples, "Monte Carlo sample count")
        ->capture_default_str();

    sub->add_option("--out-dir", config.outputs.directory,
                    "artifact directory (env BRAKEMC_OUT_DIR overrides the default)")
        ->capture_default_str();
    sub->add_option("--formats", formats, "artifact formats: csv, json, svg")
        ->delimiter(',');
    sub->add_option("--bin-width", config.outputs.histogram_bin_width,
                    "histogram bin width, m")
        ->capture_default_str();
}

void apply_formats(RunConfig& config, const std::vector<std::string>& formats) {
    if (formats.empty()) {
        return;
    }
    config.outputs.write_csv = false;
    config.outputs.write_json = false;
    config.outputs.write_svg = false;
    for (const std::string& f : formats) {
        if (f == "csv") {
            config.outputs.write_csv = true;
        } else if (f == "json") {
            config.outputs.write_json = true;
        } else if (f == "svg") {
            config.outputs.write_svg = true;
        } else {
            throw ConfigError("outputs.formats", "entries must be csv, json or svg");
        }
    }
}

} // namespace

int main_entry(int argc, const char* const* argv) {
    try {
        // The config file seeds the defaults, so it must load before CLI11
        // binds option defaults; flags then override whatever they name.
        std::string config_path;
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc) {
                config_path = argv[i + 1];
            } else if (arg.rfind("--config=", 0) == 0) {
                config_path = arg.substr(9);
            }
        }
        RunConfig config = config_path.empty() ? RunConfig{} : load_config_file(config_path);
        if (const char* env_dir = std::getenv("BRAKEMC_OUT_DIR");
            env_dir != nullptr && *env_dir != '\0') {
            config.outputs.directory = env_dir;
        }

        CLI::App app{"Monte Carlo stopping-distance evaluation for emergency braking"};
        app.require_subcommand(1);

        std::string ignored_config_path;
        std::string executor_name = to_string(config.execution.executor);
        std::vector<std::string> formats;

        CLI::App* run = app.add_subcommand(
            "run", "sample, simulate, write summary/results/histogram");
        bool dump_samples = false;
        run->add_flag("--dump-samples", dump_samples, "also write the drawn batch CSV");

        CLI::App* verify = app.add_subcommand(
            "verify", "check bit-exact agreement between the two executors");
        std::string against_csv;
        verify->add_option("--against", against_csv,
                           "compare the sequential run against a stored results CSV");

        CLI::App* converge =
            app.add_subcommand("converge", "convergence table over one master batch");
        std::vector<std::size_t> n_values{1000,  4000,  8000,   12000,  25000,
                                          37000, 65000, 100000, 150000, 350000};
        converge->add_option("--n-list", n_values, "sample counts (must include 12000)")
            ->delimiter(',');

        CLI::App* risk = app.add_subcommand(
            "risk", "collision probability curve and safe-headway thresholds");
        RiskOptions risk_options;
        risk->add_option("--levels", risk_options.levels, "risk levels in (0,1)")
            ->delimiter(',');
        risk->add_option("--grid-start", risk_options.grid_start, "headway grid start, m");
        risk->add_option("--grid-stop", risk_options.grid_stop, "headway grid stop, m");
        risk->add_option("--grid-step", risk_options.grid_step, "headway grid step, m")
            ->capture_default_str();
        risk->add_option("--closing-speed", risk_options.closing_speed,
                         "closing speed for TTC, m/s (default: mean initial speed)");

        CLI::App* feasibility = app.add_subcommand(
            "feasibility", "largest sample count within the latency budget");
        TimingBudget budget;
        FeasibilityOptions feasibility_options;
        feasibility->add_option("--budget-total", budget.total_ms, "total pipeline budget, ms")
            ->capture_default_str();
        feasibility
            ->add_option("--perception", budget.perception_ms, "perception latency, ms")
            ->capture_default_str();
        feasibility->add_option("--decision", budget.decision_ms, "decision latency, ms")
            ->capture_default_str();
        feasibility
            ->add_option("--search-start", feasibility_options.search_start,
                         "first probed sample count")
            ->capture_default_str();
        feasibility
            ->add_option("--search-cap", feasibility_options.search_cap,
                         "largest probed sample count")
            ->capture_default_str();
        feasibility
            ->add_option("--timing-reps", feasibility_options.timing_reps,
                         "timed repetitions per probe (median taken)")
            ->capture_default_str();
        feasibility
            ->add_option("--timing-warmup", feasibility_options.timing_warmup,
                         "untimed warm-up runs per probe")
            ->capture_default_str();

        CLI::App* bench =
            app.add_subcommand("bench", "timing sweep and linear-model fit");
        BenchOptions bench_options;
        bench->add_option("--n-list", bench_options.n_values, "sample counts to time")
            ->delimiter(',');
        bench->add_option("--reps", bench_options.reps, "timed repetitions (median taken)")
            ->capture_default_str();
        bench->add_option("--warmup", bench_options.warmup, "untimed warm-up runs")
            ->capture_default_str();

        CLI::App* config_dump = app.add_subcommand(
            "config-dump", "print the effective configuration as JSON");

        for (CLI::App* sub : {run, verify, converge, risk, feasibility, bench, config_dump}) {
            add_common_options(sub, config, ignored_config_path, executor_name, formats);
        }

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& err) {
            const int code = app.exit(err);
            return code == 0 ? kExitOk : kExitConfig;
        }

        config.execution.executor = executor_from_string(executor_name);
        apply_formats(config, formats);
        config.outputs.dump_samples = config.outputs.dump_samples || dump_samples;

        if (app.got_subcommand(run)) {
            return cmd_run(config, std::cout);
        }
        if (app.got_subcommand(verify)) {
            return cmd_verify(config, against_csv, std::cout);
        }
        if (app.got_subcommand(converge)) {
            return cmd_converge(config, n_values, std::cout);
        }
        if (app.got_subcommand(risk)) {
            return cmd_risk(config, risk_options, std::cout);
        }
        if (app.got_subcommand(feasibility)) {
            return cmd_feasibility(config, budget, feasibility_options, std::cout);
        }
        if (app.got_subcommand(bench)) {
            return cmd_bench(config, bench_options, std::cout);
        }
        if (app.got_subcommand(config_dump)) {
            std::cout << config_to_json(config).dump(2) << "\n";
            return kExitOk;
        }
        return kExitConfig;
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const IoError& err) {
        std::cerr << "io error: " << err.what() << "\n";
        return kExitIo;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfig;
    }
}

} // namespace brakemc::cli
