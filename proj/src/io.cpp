#include "brakemc/io.hpp"

#include "brakemc/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace brakemc {

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string results_csv(const std::vector<RolloutResult>& results) {
    std::string out = "index,d_stop_m,t_stop_s,horizon_flag\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const RolloutResult& r = results[i];
        out += std::to_string(i);
        out += ',';
        out += format_double(r.stop_distance);
        out += ',';
        out += format_double(r.stop_time);
        out += ',';
        out += r.hit_horizon ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string batch_csv(const SampleBatch& batch) {
    std::string out = "index,v0,mu,theta,m,c_d\n";
    for (std::size_t i = 0; i < batch.samples.size(); ++i) {
        const ScenarioSample& s = batch.samples[i];
        out += std::to_string(i);
        out += ',';
        out += format_double(s.initial_speed);
        out += ',';
        out += format_double(s.friction);
        out += ',';
        out += format_double(s.grade);
        out += ',';
        out += format_double(s.mass);
        out += ',';
        out += format_double(s.drag_coeff);
        out += '\n';
    }
    return out;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::string out = "n,mean_m,sd_m,delta_mean_m,delta_sd_m\n";
    for (const ConvergenceRow& row : rows) {
        out += std::to_string(row.n);
        out += ',';
        out += format_double(row.mean);
        out += ',';
        out += format_double(row.sd);
        out += ',';
        out += format_double(row.delta_mean);
        out += ',';
        out += format_double(row.delta_sd);
        out += '\n';
    }
    return out;
}

std::string risk_curve_csv(const RiskCurve& curve) {
    std::string out = "headway_m,p_collision\n";
    for (std::size_t i = 0; i < curve.headways_m.size(); ++i) {
        out += format_double(curve.headways_m[i]);
        out += ',';
        out += format_double(curve.probabilities[i]);
        out += '\n';
    }
    return out;
}

std::string risk_thresholds_csv(const RiskCurve& curve) {
    std::string out = "risk,min_safe_headway_m,ttc_s\n";
    for (const RiskThreshold& t : curve.thresholds) {
        out += format_double(t.risk);
        out += ',';
        out += format_double(t.headway_m);
        out += ',';
        out += format_double(t.ttc_s);
        out += '\n';
    }
    return out;
}

std::vector<RolloutResult> parse_results_csv(const std::string& text) {
    std::istringstream stream(text);
    std::string line;
    if (!std::getline(stream, line) || line != "index,d_stop_m,t_stop_s,horizon_flag") {
        throw IoError("results csv: missing or unexpected header");
    }
    std::vector<RolloutResult> results;
    std::size_t line_no = 1;
    while (std::getline(stream, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        RolloutResult r{};
        unsigned long long index = 0;
        unsigned flag = 0;
        if (std::sscanf(line.c_str(), "%llu,%lf,%lf,%u", &index, &r.stop_distance,
                        &r.stop_time, &flag) != 4) {
            throw IoError("results csv: malformed line " + std::to_string(line_no));
        }
        if (index != results.size()) {
            throw IoError("results csv: non-contiguous index at line " +
                          std::to_string(line_no));
        }
        r.hit_horizon = flag != 0;
        r.steps = 0; // not stored; reconstructed by the caller from t_stop/dt
        results.push_back(r);
    }
    return results;
}

namespace {

json histogram_json(const Histogram& hist) {
    json edges = json::array();
    for (std::size_t i = 0; i <= hist.counts.size(); ++i) {
        edges.push_back(hist.origin + static_cast<double>(i) * hist.bin_width);
    }
    return json{{"bin_width_m", hist.bin_width},
                {"edges_m", edges},
                {"counts", hist.counts}};
}

} // namespace

json summary_json(const DistributionSummary& summary) {
    return json{{"n", summary.n},
                {"mean_m", summary.mean},
                {"sd_m", summary.sd},
                {"min_m", summary.min},
                {"max_m", summary.max},
                {"median_m", summary.median},
                {"skewness", summary.skewness},
                {"right_skewed", summary.right_skewed},
                {"horizon_count", summary.horizon_count},
                {"histogram", histogram_json(summary.histogram)}};
}

json execution_report_json(const ExecutionReport& report, const DistributionSummary& summary) {
    return json{{"executor_id", to_string(report.executor)},
                {"worker_count", report.worker_count},
                {"n", report.results.size()},
                {"wall_time_s", report.wall_time_s},
                {"summary", summary_json(summary)}};
}

json consistency_json(const ConsistencyVerdict& verdict, double sequential_s,
                      double parallel_s) {
    json out{{"n", verdict.n},
             {"max_abs_deviation_m", verdict.max_abs_deviation},
             {"bitwise_equal", verdict.bitwise_equal},
             {"pass", verdict.pass},
             {"sequential_wall_time_s", sequential_s},
             {"parallel_wall_time_s", parallel_s}};
    if (!verdict.bitwise_equal) {
        out["first_mismatch_index"] = verdict.first_mismatch;
    }
    return out;
}

json timing_report_json(const TimingReport& report) {
    return json{{"budget_total_ms", report.budget.total_ms},
                {"perception_ms", report.budget.perception_ms},
                {"decision_ms", report.budget.decision_ms},
                {"mc_budget_ms", report.mc_budget_ms},
                {"max_samples_within_budget", report.max_samples},
                {"meets_convergence_threshold", report.meets_convergence_threshold},
                {"search_capped", report.capped},
                {"time_with_sampling_s", report.time_with_sampling_s},
                {"sim_only_time_s", report.sim_only_time_s}};
}

json timing_fit_json(const TimingFit& fit, const std::vector<TimingPoint>& points) {
    json measured = json::array();
    for (const TimingPoint& p : points) {
        measured.push_back(json{{"n", p.n}, {"wall_time_s", p.wall_time_s}});
    }
    return json{{"overhead_s", fit.overhead_s},
                {"per_sample_s", fit.per_sample_s},
                {"points", measured}};
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                          ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("read failed for " + path.string());
    }
    return buffer.str();
}

} // namespace brakemc
