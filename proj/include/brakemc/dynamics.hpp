#pragma once

// Longitudinal emergency-braking dynamics: force balance with aerodynamic
// drag, road grade, a friction-limited braking floor (weight transfer), and
// first-order brake-actuator lag.
//
// Everything here is a pure function over value types. All arithmetic is
// 64-bit binary floating point with a fixed, documented evaluation order;
// builds disable FP contraction so results are bit-reproducible.

#include <cstdint>
#include <string>

namespace brakemc {

/// Environment constants shared by every rollout.
struct PhysicalConstants {
    double gravity = 9.81;       ///< m/s^2
    double air_density = 1.225;  ///< kg/m^3
    double frontal_area = 2.2;   ///< m^2

    /// Throws ConfigError naming `prefix`.field on an invalid value.
    void validate(const std::string& prefix = "constants") const;
};

/// Fixed vehicle geometry and actuator response.
struct VehicleGeometry {
    double cg_height = 0.5;     ///< center-of-gravity height, m
    double wheelbase = 2.7;     ///< m
    double actuator_tau = 0.15; ///< brake-actuator time constant, s

    void validate(const std::string& prefix = "geometry") const;
};

/// One realization of the five sampled parameters.
struct ScenarioSample {
    double initial_speed; ///< m/s
    double friction;      ///< tire-road friction coefficient
    double grade;         ///< road grade angle, rad (positive = uphill)
    double mass;          ///< kg
    double drag_coeff;    ///< aerodynamic drag coefficient

    void validate(const std::string& prefix = "sample") const;
};

/// Integration state: position, speed, and realized braking deceleration.
struct SimState {
    double position;    ///< m
    double speed;       ///< m/s
    double brake_accel; ///< realized braking deceleration, m/s^2 (<= 0 while braking)
};

/// Integration step, horizon, and commanded deceleration.
struct SimConfig {
    double dt = 0.001;        ///< s
    double t_max = 10.0;      ///< s
    double brake_cmd = -6.0;  ///< commanded deceleration, m/s^2 (negative)

    void validate(const std::string& prefix = "sim") const;
};

/// Time derivative of SimState.
struct StateDerivative {
    double d_position;    ///< m/s
    double d_speed;       ///< m/s^2
    double d_brake_accel; ///< m/s^3
};

/// Most negative realizable braking deceleration for a given friction
/// coefficient, with weight transfer folded in:
///
///   limit = -(mu * g) / (1 + mu * h / L)
///
/// evaluated in exactly that order. This is the closed-form fixed point of
/// the implicit weight-transfer constraint. Throws std::domain_error if the
/// denominator is not positive (impossible for physically valid inputs).
double friction_limit(double friction, const VehicleGeometry& geometry,
                      const PhysicalConstants& constants);

/// Clamps a realized braking deceleration to the friction-limited floor.
/// Returns max(brake_accel, limit).
inline double clamp_brake(double brake_accel, double limit) {
    return brake_accel > limit ? brake_accel : limit;
}

/// Rate of the first-order actuator lag: (cmd - actual) * (1 / tau).
/// The reciprocal is taken first so the hot loop can reuse it with
/// bit-identical results.
inline double actuator_rate(double brake_accel, double brake_cmd, double tau) {
    return (brake_cmd - brake_accel) * (1.0 / tau);
}

/// Per-rollout constants hoisted out of the integration loop. Constructing
/// one and evaluating the derivative through it is the single code path used
/// everywhere, so structural helpers below agree with the kernel bit-for-bit.
struct RolloutTerms {
    double brake_floor;  ///< friction_limit(...), <= 0
    double drag_factor;  ///< 0.5 * rho * c_d * A_f / m, 1/m
    double grade_accel;  ///< g * sin(theta), m/s^2
    double brake_cmd;    ///< commanded deceleration, m/s^2
    double inv_tau;      ///< 1 / actuator time constant, 1/s

    static RolloutTerms from(const ScenarioSample& sample, const SimConfig& config,
                             const VehicleGeometry& geometry,
                             const PhysicalConstants& constants);
};

/// Total longitudinal acceleration of the force balance:
///
///   clamp_brake(a_brake, floor) - drag_factor * v^2 - g * sin(theta)
///
/// Stage states of the terminal RK4 step may carry a slightly negative
/// speed; the quadratic drag term is evaluated as written there (the step
/// result is discarded at the v <= 0 termination check anyway).
inline double longitudinal_accel(const SimState& state, const RolloutTerms& terms) {
    const double braking = clamp_brake(state.brake_accel, terms.brake_floor);
    return braking - terms.drag_factor * (state.speed * state.speed) - terms.grade_accel;
}
double longitudinal_accel(const SimState& state, const ScenarioSample& sample,
                          const VehicleGeometry& geometry,
                          const PhysicalConstants& constants);

/// Right-hand side of the coupled 3-state system:
/// (v, longitudinal_accel, actuator_rate). Pure; identical inputs give
/// bit-identical outputs.
inline StateDerivative state_derivative(const SimState& state, const RolloutTerms& terms) {
    return StateDerivative{
        state.speed,
        longitudinal_accel(state, terms),
        (terms.brake_cmd - state.brake_accel) * terms.inv_tau,
    };
}
StateDerivative state_derivative(const SimState& state, const ScenarioSample& sample,
                                 const SimConfig& config,
                                 const VehicleGeometry& geometry,
                                 const PhysicalConstants& constants);

} // namespace brakemc
