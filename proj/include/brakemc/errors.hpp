#pragma once

#include <stdexcept>
#include <string>

namespace brakemc {

/// Invalid configuration value. `what()` starts with the offending field
/// path, e.g. "sim.dt: must be > 0". The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(field) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Filesystem failure while writing or reading artifacts. Exit code 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace brakemc
