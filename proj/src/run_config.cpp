#include "brakemc/run_config.hpp"

#include "brakemc/errors.hpp"

#include <initializer_list>
#include <string>

namespace brakemc {

void ExecutionConfig::validate(const std::string& prefix) const {
    if (chunk_size == 0) {
        throw ConfigError(prefix + ".chunk_size", "must be >= 1");
    }
    if (samples == 0) {
        throw ConfigError(prefix + ".samples", "must be >= 1");
    }
}

void OutputConfig::validate(const std::string& prefix) const {
    if (directory.empty()) {
        throw ConfigError(prefix + ".directory", "must be non-empty");
    }
    if (!(histogram_bin_width > 0.0)) {
        throw ConfigError(prefix + ".bin_width", "must be > 0");
    }
}

void RunConfig::validate() const {
    sim.validate("sim");
    geometry.validate("geometry");
    constants.validate("constants");
    uncertainty.validate("uncertainty");
    execution.validate("execution");
    outputs.validate("outputs");
}

namespace {

void check_keys(const json& object, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : object.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError(path + "." + item.key(), "unknown key");
        }
    }
}

double read_number(const json& object, const std::string& path, const char* key,
                   double fallback) {
    if (!object.contains(key)) {
        return fallback;
    }
    const json& v = object.at(key);
    if (!v.is_number()) {
        throw ConfigError(path + "." + key, "must be a number");
    }
    return v.get<double>();
}

bool read_bool(const json& object, const std::string& path, const char* key, bool fallback) {
    if (!object.contains(key)) {
        return fallback;
    }
    const json& v = object.at(key);
    if (!v.is_boolean()) {
        throw ConfigError(path + "." + key, "must be a boolean");
    }
    return v.get<bool>();
}

template <typename T>
T read_unsigned(const json& object, const std::string& path, const char* key, T fallback) {
    if (!object.contains(key)) {
        return fallback;
    }
    const json& v = object.at(key);
    if (!v.is_number_unsigned()) {
        throw ConfigError(path + "." + key, "must be a non-negative integer");
    }
    return v.get<T>();
}

NormalSpec read_normal(const json& parent, const std::string& path, const char* key,
                       NormalSpec fallback) {
    if (!parent.contains(key)) {
        return fallback;
    }
    const json& v = parent.at(key);
    const std::string full = path + "." + key;
    if (!v.is_object()) {
        throw ConfigError(full, "must be an object with mean/sd");
    }
    check_keys(v, full, {"mean", "sd"});
    return NormalSpec{read_number(v, full, "mean", fallback.mean),
                      read_number(v, full, "sd", fallback.sd)};
}

} // namespace

ExecutorKind executor_from_string(const std::string& name) {
    if (name == "sequential") {
        return ExecutorKind::sequential;
    }
    if (name == "parallel") {
        return ExecutorKind::parallel;
    }
    throw ConfigError("execution.executor", "must be \"sequential\" or \"parallel\"");
}

RunConfig config_from_json(const json& document) {
    RunConfig config;
    if (!document.is_object()) {
        throw ConfigError("config", "top level must be an object");
    }
    check_keys(document, "config",
               {"sim", "geometry", "constants", "uncertainty", "execution", "outputs"});

    if (document.contains("sim")) {
        const json& sim = document.at("sim");
        check_keys(sim, "sim", {"dt", "t_max", "brake_cmd"});
        config.sim.dt = read_number(sim, "sim", "dt", config.sim.dt);
        config.sim.t_max = read_number(sim, "sim", "t_max", config.sim.t_max);
        config.sim.brake_cmd = read_number(sim, "sim", "brake_cmd", config.sim.brake_cmd);
    }
    if (document.contains("geometry")) {
        const json& geo = document.at("geometry");
        check_keys(geo, "geometry", {"cg_height", "wheelbase", "actuator_tau"});
        config.geometry.cg_height =
            read_number(geo, "geometry", "cg_height", config.geometry.cg_height);
        config.geometry.wheelbase =
            read_number(geo, "geometry", "wheelbase", config.geometry.wheelbase);
        config.geometry.actuator_tau =
            read_number(geo, "geometry", "actuator_tau", config.geometry.actuator_tau);
    }
    if (document.contains("constants")) {
        const json& consts = document.at("constants");
        check_keys(consts, "constants", {"gravity", "air_density", "frontal_area"});
        config.constants.gravity =
            read_number(consts, "constants", "gravity", config.constants.gravity);
        config.constants.air_density =
            read_number(consts, "constants", "air_density", config.constants.air_density);
        config.constants.frontal_area =
            read_number(consts, "constants", "frontal_area", config.constants.frontal_area);
    }
    if (document.contains("uncertainty")) {
        const json& unc = document.at("uncertainty");
        check_keys(unc, "uncertainty",
                   {"seed", "initial_speed", "friction", "grade", "mass", "drag_coeff"});
        config.uncertainty.seed = read_unsigned<std::uint64_t>(unc, "uncertainty", "seed",
                                                               config.uncertainty.seed);
        config.uncertainty.initial_speed = read_normal(unc, "uncertainty", "initial_speed",
                                                       config.uncertainty.initial_speed);
        config.uncertainty.friction =
            read_normal(unc, "uncertainty", "friction", config.uncertainty.friction);
        config.uncertainty.grade =
            read_normal(unc, "uncertainty", "grade", config.uncertainty.grade);
        config.uncertainty.mass =
            read_normal(unc, "uncertainty", "mass", config.uncertainty.mass);
        config.uncertainty.drag_coeff =
            read_normal(unc, "uncertainty", "drag_coeff", config.uncertainty.drag_coeff);
    }
    if (document.contains("execution")) {
        const json& exe = document.at("execution");
        check_keys(exe, "execution", {"executor", "workers", "chunk_size", "samples"});
        if (exe.contains("executor")) {
            if (!exe.at("executor").is_string()) {
                throw ConfigError("execution.executor", "must be a string");
            }
            config.execution.executor =
                executor_from_string(exe.at("executor").get<std::string>());
        }
        config.execution.workers =
            read_unsigned<unsigned>(exe, "execution", "workers", config.execution.workers);
        config.execution.chunk_size = read_unsigned<std::size_t>(
            exe, "execution", "chunk_size", config.execution.chunk_size);
        config.execution.samples = read_unsigned<std::size_t>(exe, "execution", "samples",
                                                              config.execution.samples);
    }
    if (document.contains("outputs")) {
        const json& out = document.at("outputs");
        check_keys(out, "outputs",
                   {"directory", "formats", "bin_width", "dump_samples"});
        if (out.contains("directory")) {
            if (!out.at("directory").is_string()) {
                throw ConfigError("outputs.directory", "must be a string");
            }
            config.outputs.directory = out.at("directory").get<std::string>();
        }
        if (out.contains("formats")) {
            const json& formats = out.at("formats");
            if (!formats.is_array()) {
                throw ConfigError("outputs.formats", "must be an array of format names");
            }
            config.outputs.write_csv = false;
            config.outputs.write_json = false;
            config.outputs.write_svg = false;
            for (const json& f : formats) {
                const std::string name = f.is_string() ? f.get<std::string>() : "";
                if (name == "csv") {
                    config.outputs.write_csv = true;
                } else if (name == "json") {
                    config.outputs.write_json = true;
                } else if (name == "svg") {
                    config.outputs.write_svg = true;
                } else {
                    throw ConfigError("outputs.formats",
                                      "entries must be \"csv\", \"json\" or \"svg\"");
                }
            }
        }
        config.outputs.histogram_bin_width =
            read_number(out, "outputs", "bin_width", config.outputs.histogram_bin_width);
        config.outputs.dump_samples =
            read_bool(out, "outputs", "dump_samples", config.outputs.dump_samples);
    }
    return config;
}

json config_to_json(const RunConfig& config) {
    json formats = json::array();
    if (config.outputs.write_csv) {
        formats.push_back("csv");
    }
    if (config.outputs.write_json) {
        formats.push_back("json");
    }
    if (config.outputs.write_svg) {
        formats.push_back("svg");
    }
    return json{
        {"sim",
         {{"dt", config.sim.dt},
          {"t_max", config.sim.t_max},
          {"brake_cmd", config.sim.brake_cmd}}},
        {"geometry",
         {{"cg_height", config.geometry.cg_height},
          {"wheelbase", config.geometry.wheelbase},
          {"actuator_tau", config.geometry.actuator_tau}}},
        {"constants",
         {{"gravity", config.constants.gravity},
          {"air_density", config.constants.air_density},
          {"frontal_area", config.constants.frontal_area}}},
        {"uncertainty",
         {{"seed", config.uncertainty.seed},
          {"initial_speed",
           {{"mean", config.uncertainty.initial_speed.mean},
            {"sd", config.uncertainty.initial_speed.sd}}},
          {"friction",
           {{"mean", config.uncertainty.friction.mean},
            {"sd", config.uncertainty.friction.sd}}},
          {"grade",
           {{"mean", config.uncertainty.grade.mean},
            {"sd", config.uncertainty.grade.sd}}},
          {"mass",
           {{"mean", config.uncertainty.mass.mean}, {"sd", config.uncertainty.mass.sd}}},
          {"drag_coeff",
           {{"mean", config.uncertainty.drag_coeff.mean},
            {"sd", config.uncertainty.drag_coeff.sd}}}}},
        {"execution",
         {{"executor", to_string(config.execution.executor)},
          {"workers", config.execution.workers},
          {"chunk_size", config.execution.chunk_size},
          {"samples", config.execution.samples}}},
        {"outputs",
         {{"directory", config.outputs.directory},
          {"formats", formats},
          {"bin_width", config.outputs.histogram_bin_width},
          {"dump_samples", config.outputs.dump_samples}}},
    };
}

RunConfig load_config_file(const std::string& path) {
    const std::string text = read_text_file(path);
    json document;
    try {
        document = json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ConfigError("config file " + path, err.what());
    }
    return config_from_json(document);
}

} // namespace brakemc
