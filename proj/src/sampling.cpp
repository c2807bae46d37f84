#include "brakemc/sampling.hpp"

#include "brakemc/errors.hpp"

#include <cmath>

namespace brakemc {

void UncertaintyModel::validate(const std::string& prefix) const {
    const struct {
        const char* name;
        const NormalSpec& spec;
    } marginals[] = {
        {"initial_speed", initial_speed}, {"friction", friction}, {"grade", grade},
        {"mass", mass},                   {"drag_coeff", drag_coeff},
    };
    for (const auto& m : marginals) {
        if (!(m.spec.sd >= 0.0)) {
            throw ConfigError(prefix + "." + m.name + ".sd", "must be >= 0");
        }
        if (!std::isfinite(m.spec.mean)) {
            throw ConfigError(prefix + "." + m.name + ".mean", "must be finite");
        }
    }
    if (!(initial_speed.mean > 0.0)) {
        throw ConfigError(prefix + ".initial_speed.mean", "must be > 0");
    }
    if (!(friction.mean > 0.0)) {
        throw ConfigError(prefix + ".friction.mean", "must be > 0");
    }
    if (!(mass.mean > 0.0)) {
        throw ConfigError(prefix + ".mass.mean", "must be > 0");
    }
}

std::uint64_t stream_word(std::uint64_t seed, std::uint64_t counter) {
    // splitmix64 output function evaluated at state seed + (counter+1)*gamma.
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double stream_uniform(std::uint64_t seed, std::uint64_t counter) {
    return (static_cast<double>(stream_word(seed, counter) >> 12) + 0.5) * 0x1.0p-52;
}

double standard_normal_at(std::uint64_t seed, std::uint64_t stream_index) {
    const double u1 = stream_uniform(seed, 2 * stream_index);
    const double u2 = stream_uniform(seed, 2 * stream_index + 1);
    constexpr double two_pi = 6.283185307179586;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

namespace {

double clamped(double value, double lo, std::uint64_t& clamp_count) {
    if (value < lo) {
        ++clamp_count;
        return lo;
    }
    return value;
}

} // namespace

SampleBatch draw_batch(const UncertaintyModel& model, std::size_t n) {
    if (n == 0) {
        throw ConfigError("samples", "must be >= 1");
    }
    SampleBatch batch;
    batch.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t base = kStreamsPerSample * static_cast<std::uint64_t>(i);
        ScenarioSample& s = batch.samples[i];
        s.initial_speed = model.initial_speed.mean +
                          model.initial_speed.sd * standard_normal_at(model.seed, base);
        s.friction =
            model.friction.mean + model.friction.sd * standard_normal_at(model.seed, base + 1);
        s.grade = model.grade.mean + model.grade.sd * standard_normal_at(model.seed, base + 2);
        s.mass = model.mass.mean + model.mass.sd * standard_normal_at(model.seed, base + 3);
        s.drag_coeff =
            model.drag_coeff.mean + model.drag_coeff.sd * standard_normal_at(model.seed, base + 4);

        s.initial_speed = clamped(s.initial_speed, 0.1, batch.clamp_count);
        s.friction = clamped(s.friction, 0.05, batch.clamp_count);
        s.mass = clamped(s.mass, 500.0, batch.clamp_count);
        s.drag_coeff = clamped(s.drag_coeff, 0.0, batch.clamp_count);
        // Keep |grade| inside the model's validity range even under
        // user-widened distributions.
        if (s.grade > 1.5) {
            s.grade = 1.5;
            ++batch.clamp_count;
        } else if (s.grade < -1.5) {
            s.grade = -1.5;
            ++batch.clamp_count;
        }
    }
    return batch;
}

} // namespace brakemc
