#include "brakemc/dynamics.hpp"

#include "brakemc/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace brakemc {

namespace {

void require(bool ok, const std::string& field, const char* message) {
    if (!ok) {
        throw ConfigError(field, message);
    }
}

} // namespace

void PhysicalConstants::validate(const std::string& prefix) const {
    require(gravity > 0.0, prefix + ".gravity", "must be > 0");
    require(air_density > 0.0, prefix + ".air_density", "must be > 0");
    require(frontal_area > 0.0, prefix + ".frontal_area", "must be > 0");
}

void VehicleGeometry::validate(const std::string& prefix) const {
    require(wheelbase > 0.0, prefix + ".wheelbase", "must be > 0");
    require(cg_height > 0.0, prefix + ".cg_height", "must be > 0");
    require(cg_height < wheelbase, prefix + ".cg_height", "must be < wheelbase");
    require(actuator_tau > 0.0, prefix + ".actuator_tau", "must be > 0");
}

void ScenarioSample::validate(const std::string& prefix) const {
    require(initial_speed > 0.0, prefix + ".initial_speed", "must be > 0");
    require(friction > 0.0, prefix + ".friction", "must be > 0");
    require(mass > 0.0, prefix + ".mass", "must be > 0");
    require(drag_coeff >= 0.0, prefix + ".drag_coeff", "must be >= 0");
    require(std::abs(grade) < 1.5707963267948966, prefix + ".grade",
            "must satisfy |grade| < pi/2");
}

void SimConfig::validate(const std::string& prefix) const {
    require(dt > 0.0, prefix + ".dt", "must be > 0");
    require(t_max >= dt, prefix + ".t_max", "must be >= dt");
    require(brake_cmd < 0.0, prefix + ".brake_cmd", "must be < 0");
}

double friction_limit(double friction, const VehicleGeometry& geometry,
                      const PhysicalConstants& constants) {
    const double denom = 1.0 + friction * geometry.cg_height / geometry.wheelbase;
    if (!(denom > 0.0)) {
        throw std::domain_error("friction_limit: weight-transfer denominator <= 0");
    }
    return -(friction * constants.gravity) / denom;
}

RolloutTerms RolloutTerms::from(const ScenarioSample& sample, const SimConfig& config,
                                const VehicleGeometry& geometry,
                                const PhysicalConstants& constants) {
    RolloutTerms terms;
    terms.brake_floor = friction_limit(sample.friction, geometry, constants);
    terms.drag_factor = 0.5 * constants.air_density * sample.drag_coeff *
                        constants.frontal_area / sample.mass;
    terms.grade_accel = constants.gravity * std::sin(sample.grade);
    terms.brake_cmd = config.brake_cmd;
    terms.inv_tau = 1.0 / geometry.actuator_tau;
    return terms;
}

double longitudinal_accel(const SimState& state, const ScenarioSample& sample,
                          const VehicleGeometry& geometry,
                          const PhysicalConstants& constants) {
    // brake_cmd is irrelevant to the force balance; any valid SimConfig works.
    const RolloutTerms terms = RolloutTerms::from(sample, SimConfig{}, geometry, constants);
    return longitudinal_accel(state, terms);
}

StateDerivative state_derivative(const SimState& state, const ScenarioSample& sample,
                                 const SimConfig& config,
                                 const VehicleGeometry& geometry,
                                 const PhysicalConstants& constants) {
    return state_derivative(state, RolloutTerms::from(sample, config, geometry, constants));
}

} // namespace brakemc
