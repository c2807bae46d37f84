#pragma once

// Full run configuration: scenario physics, uncertainty model, executor
// selection, and output destinations. Defaults reproduce the nominal
// braking scenario; a JSON config file overrides defaults and CLI flags
// override the file.

#include "brakemc/backends.hpp"
#include "brakemc/io.hpp"
#include "brakemc/sampling.hpp"

#include <cstddef>
#include <string>

namespace brakemc {

struct ExecutionConfig {
    ExecutorKind executor = ExecutorKind::parallel;
    unsigned workers = 0; ///< 0 = hardware thread count
    std::size_t chunk_size = 256;
    std::size_t samples = 12000;

    void validate(const std::string& prefix = "execution") const;
};

struct OutputConfig {
    std::string directory = "out";
    bool write_csv = true;
    bool write_json = true;
    bool write_svg = true;
    double histogram_bin_width = 2.0; ///< m
    bool dump_samples = false;        ///< also write the drawn batch as CSV

    void validate(const std::string& prefix = "outputs") const;
};

struct RunConfig {
    SimConfig sim;
    VehicleGeometry geometry;
    PhysicalConstants constants;
    UncertaintyModel uncertainty;
    ExecutionConfig execution;
    OutputConfig outputs;

    void validate() const;
};

/// Merges a JSON document onto defaults. Unknown keys and type mismatches
/// raise ConfigError with the offending field path.
RunConfig config_from_json(const json& document);

/// Serializes a config back to the same schema (the `config-dump` output).
json config_to_json(const RunConfig& config);

/// Loads and merges a JSON config file. Throws IoError if unreadable and
/// ConfigError if invalid.
RunConfig load_config_file(const std::string& path);

ExecutorKind executor_from_string(const std::string& name);

} // namespace brakemc
