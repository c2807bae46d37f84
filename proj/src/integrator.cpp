#include "brakemc/integrator.hpp"

#include <cmath>

namespace brakemc {

SimState rk4_step(const SimState& state, const RolloutInputs& inputs, double dt) {
    const RolloutTerms terms =
        RolloutTerms::from(inputs.sample, inputs.config, inputs.geometry, inputs.constants);
    return rk4_step(state, terms, dt);
}

RolloutResult simulate_rollout(const ScenarioSample& sample, const SimConfig& config,
                               const VehicleGeometry& geometry,
                               const PhysicalConstants& constants) {
    const RolloutTerms terms = RolloutTerms::from(sample, config, geometry, constants);
    SimState state{0.0, sample.initial_speed, 0.0};

    const std::int64_t max_steps = std::llround(config.t_max / config.dt);
    for (std::int64_t step = 1; step <= max_steps; ++step) {
        state = rk4_step(state, terms, config.dt);
        if (state.speed <= 0.0) {
            return RolloutResult{state.position, static_cast<double>(step) * config.dt,
                                 step, false};
        }
    }
    return RolloutResult{state.position, static_cast<double>(max_steps) * config.dt,
                         max_steps, true};
}

} // namespace brakemc
