#pragma once

// Deterministic, seed-controlled scenario sampling. The generator is
// counter-based (stateless): the deviate at stream index i is a pure
// function of (seed, i), so a batch is identical no matter how its
// evaluation is ordered or partitioned across workers.

#include "brakemc/dynamics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace brakemc {

/// Mean and standard deviation of one normally distributed parameter.
struct NormalSpec {
    double mean = 0.0;
    double sd = 0.0;
};

/// Independent normal marginals for the five sampled parameters, plus the
/// stream seed. Defaults are the nominal operating-condition model.
struct UncertaintyModel {
    std::uint64_t seed = 3u;
    NormalSpec initial_speed{30.0, 2.0}; ///< m/s
    NormalSpec friction{0.8, 0.1};
    NormalSpec grade{0.0, 0.05};         ///< rad
    NormalSpec mass{1500.0, 100.0};      ///< kg
    NormalSpec drag_coeff{0.3, 0.05};

    void validate(const std::string& prefix = "uncertainty") const;
};

/// An ordered batch of scenario draws. Regenerating with the same
/// (model, n) yields a bit-identical batch, and a shorter batch is always
/// a prefix of a longer one from the same model.
struct SampleBatch {
    std::vector<ScenarioSample> samples;
    std::uint64_t clamp_count = 0; ///< draws nudged back into physical range

    std::size_t size() const { return samples.size(); }
};

/// Raw 64-bit word of the counter-based stream: the (counter+1)-th output of
/// a splitmix64 sequence seeded with `seed`, evaluated directly (splitmix64
/// advances its state by a fixed increment, so the n-th output is a closed
/// form of the seed and n). This mixing function is part of the external
/// contract; an alternate implementation must match it to reproduce batches.
std::uint64_t stream_word(std::uint64_t seed, std::uint64_t counter);

/// Uniform deviate strictly inside (0, 1): the top 52 bits of `stream_word`,
/// offset by half a ULP so 0 and 1 are unreachable.
double stream_uniform(std::uint64_t seed, std::uint64_t counter);

/// Standard normal deviate at a stream index, via Box-Muller on the two
/// uniforms at counters (2i, 2i+1):
///
///   z = sqrt(-2 ln u1) * cos(2 pi u2)
///
/// Order-independent: the value at index i never depends on whether other
/// indices were evaluated.
double standard_normal_at(std::uint64_t seed, std::uint64_t stream_index);

/// Number of stream indices consumed per sample (one per parameter, in the
/// fixed order initial_speed, friction, grade, mass, drag_coeff). Sample i
/// owns indices [kStreamsPerSample*i, kStreamsPerSample*(i+1)).
inline constexpr std::uint64_t kStreamsPerSample = 5;

/// Draws n samples. Each deviate is scaled as mean + sd * z; normal-tail
/// draws that would be unphysical are clamped (friction >= 0.05,
/// mass >= 500 kg, drag_coeff >= 0, initial_speed >= 0.1 m/s,
/// |grade| <= 1.5 rad) and counted. At the default model the clamp
/// probability is below 1e-15 per draw, so clamp_count is expected to stay
/// zero at any feasible n. Throws ConfigError for n = 0.
SampleBatch draw_batch(const UncertaintyModel& model, std::size_t n);

} // namespace brakemc
