#pragma once

// Fixed-step classical RK4 over the coupled 3-state braking system, with
// v <= 0 termination. Adaptive stepping is deliberately absent: every
// rollout must perform the same work per step so executors stay uniform.

#include "brakemc/dynamics.hpp"

#include <cstdint>

namespace brakemc {

/// Outcome of one rollout.
struct RolloutResult {
    double stop_distance;     ///< m; position at the first post-step v <= 0 state
    double stop_time;         ///< s; equals steps * dt
    std::int64_t steps;       ///< integration steps taken
    bool hit_horizon;         ///< true if t_max elapsed with v still > 0
};

/// Everything one rollout needs besides its state.
struct RolloutInputs {
    ScenarioSample sample;
    SimConfig config;
    VehicleGeometry geometry;
    PhysicalConstants constants;
};

/// One classical RK4 step. Stage states and the weighted combination are
/// written out component-by-component in a fixed order:
///
///   k1 = f(s)
///   k2 = f(s + dt/2 * k1)
///   k3 = f(s + dt/2 * k2)
///   k4 = f(s + dt  * k3)
///   s' = s + dt/6 * (((k1 + 2*k2) + 2*k3) + k4)
///
/// so repeated evaluation is bit-reproducible.
inline SimState rk4_step(const SimState& state, const RolloutTerms& terms, double dt) {
    const double half = 0.5 * dt;

    const StateDerivative k1 = state_derivative(state, terms);
    const SimState s2{state.position + half * k1.d_position,
                      state.speed + half * k1.d_speed,
                      state.brake_accel + half * k1.d_brake_accel};
    const StateDerivative k2 = state_derivative(s2, terms);
    const SimState s3{state.position + half * k2.d_position,
                      state.speed + half * k2.d_speed,
                      state.brake_accel + half * k2.d_brake_accel};
    const StateDerivative k3 = state_derivative(s3, terms);
    const SimState s4{state.position + dt * k3.d_position,
                      state.speed + dt * k3.d_speed,
                      state.brake_accel + dt * k3.d_brake_accel};
    const StateDerivative k4 = state_derivative(s4, terms);

    const double sixth = dt / 6.0;
    return SimState{
        state.position +
            sixth * (((k1.d_position + 2.0 * k2.d_position) + 2.0 * k3.d_position) +
                     k4.d_position),
        state.speed +
            sixth * (((k1.d_speed + 2.0 * k2.d_speed) + 2.0 * k3.d_speed) + k4.d_speed),
        state.brake_accel +
            sixth * (((k1.d_brake_accel + 2.0 * k2.d_brake_accel) +
                      2.0 * k3.d_brake_accel) +
                     k4.d_brake_accel),
    };
}

SimState rk4_step(const SimState& state, const RolloutInputs& inputs, double dt);

/// Integrates from (0, v0, 0) until the first step after which v <= 0, or
/// until round(t_max / dt) steps have elapsed. Stop distance is the position
/// at that step; no zero-crossing interpolation (the <= v * dt overshoot is
/// far below every tolerance in use). A rollout that reaches the horizon
/// with v > 0 is flagged, not an error: it is a physically non-stopping
/// parameter draw and downstream statistics must see it.
RolloutResult simulate_rollout(const ScenarioSample& sample, const SimConfig& config,
                               const VehicleGeometry& geometry,
                               const PhysicalConstants& constants);

} // namespace brakemc
