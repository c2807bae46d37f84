#include "brakemc/sampling.hpp"

#include "brakemc/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <vector>

using namespace brakemc;

TEST_CASE("the deviate stream is a pure function of (seed, index)") {
    const double a = standard_normal_at(42, 1234567);
    const double b = standard_normal_at(42, 1234567);
    CHECK(std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b));
    CHECK(standard_normal_at(42, 0) != standard_normal_at(43, 0));
    CHECK(standard_normal_at(42, 0) != standard_normal_at(42, 1));
}

TEST_CASE("stream uniforms stay strictly inside (0,1)") {
    for (std::uint64_t i = 0; i < 50000; ++i) {
        const double u = stream_uniform(7, i);
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("deviate moments over 100k indices") {
    const std::size_t n = 100000;
    std::vector<double> zs;
    zs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        zs.push_back(standard_normal_at(99, i));
    }
    const oracle::MeanSd stats = oracle::kahan_mean_sd(zs);
    CHECK(std::abs(stats.mean) < 0.013); // 3/sqrt(n) standard-error bound
    const double variance = stats.sd * stats.sd;
    CHECK(variance > 0.985);
    CHECK(variance < 1.015);
}

TEST_CASE("marginals pass a 1% Kolmogorov-Smirnov test at 100k") {
    const UncertaintyModel model{};
    const std::size_t n = 100000;
    const SampleBatch batch = draw_batch(model, n);
    const double critical = 1.6276 / std::sqrt(static_cast<double>(n));

    std::vector<double> values(n);
    const struct {
        const char* name;
        double ScenarioSample::* field;
        NormalSpec spec;
    } marginals[] = {
        {"initial_speed", &ScenarioSample::initial_speed, model.initial_speed},
        {"friction", &ScenarioSample::friction, model.friction},
        {"grade", &ScenarioSample::grade, model.grade},
        {"mass", &ScenarioSample::mass, model.mass},
        {"drag_coeff", &ScenarioSample::drag_coeff, model.drag_coeff},
    };
    for (const auto& m : marginals) {
        CAPTURE(m.name);
        for (std::size_t i = 0; i < n; ++i) {
            values[i] = batch.samples[i].*(m.field);
        }
        CHECK(oracle::ks_statistic(values, m.spec.mean, m.spec.sd) < critical);
    }
}

TEST_CASE("degenerate model yields the nominal vector everywhere") {
    UncertaintyModel model;
    model.initial_speed.sd = 0.0;
    model.friction.sd = 0.0;
    model.grade.sd = 0.0;
    model.mass.sd = 0.0;
    model.drag_coeff.sd = 0.0;
    const SampleBatch batch = draw_batch(model, 64);
    for (const ScenarioSample& s : batch.samples) {
        CHECK(s.initial_speed == 30.0);
        CHECK(s.friction == 0.8);
        CHECK(s.grade == 0.0);
        CHECK(s.mass == 1500.0);
        CHECK(s.drag_coeff == 0.3);
    }
    CHECK(batch.clamp_count == 0);
}

TEST_CASE("batch mean of the initial speed at n=12000") {
    const SampleBatch batch = draw_batch(UncertaintyModel{}, 12000);
    double sum = 0.0;
    for (const ScenarioSample& s : batch.samples) {
        sum += s.initial_speed;
    }
    const double mean = sum / 12000.0;
    CHECK(std::abs(mean - 30.0) < 0.055); // 3*sd/sqrt(n)
}

TEST_CASE("prefix stability: shorter batches are prefixes of longer ones") {
    const UncertaintyModel model{};
    const SampleBatch small = draw_batch(model, 1000);
    const SampleBatch large = draw_batch(model, 12000);
    for (std::size_t i = 0; i < small.size(); ++i) {
        CHECK(std::bit_cast<std::uint64_t>(small.samples[i].initial_speed) ==
              std::bit_cast<std::uint64_t>(large.samples[i].initial_speed));
        CHECK(std::bit_cast<std::uint64_t>(small.samples[i].friction) ==
              std::bit_cast<std::uint64_t>(large.samples[i].friction));
        CHECK(std::bit_cast<std::uint64_t>(small.samples[i].grade) ==
              std::bit_cast<std::uint64_t>(large.samples[i].grade));
        CHECK(std::bit_cast<std::uint64_t>(small.samples[i].mass) ==
              std::bit_cast<std::uint64_t>(large.samples[i].mass));
        CHECK(std::bit_cast<std::uint64_t>(small.samples[i].drag_coeff) ==
              std::bit_cast<std::uint64_t>(large.samples[i].drag_coeff));
    }
}

TEST_CASE("samples can be reproduced one index at a time, in any order") {
    const UncertaintyModel model{};
    const SampleBatch batch = draw_batch(model, 257);
    for (std::size_t i : {256UL, 3UL, 77UL, 0UL, 129UL}) {
        const std::uint64_t base = kStreamsPerSample * i;
        CHECK(batch.samples[i].initial_speed ==
              model.initial_speed.mean +
                  model.initial_speed.sd * standard_normal_at(model.seed, base));
        CHECK(batch.samples[i].drag_coeff ==
              model.drag_coeff.mean +
                  model.drag_coeff.sd * standard_normal_at(model.seed, base + 4));
    }
}

TEST_CASE("unphysical tail draws are clamped and counted") {
    UncertaintyModel model;
    model.mass = NormalSpec{500.0, 2000.0}; // absurd spread forces clamping
    const SampleBatch batch = draw_batch(model, 2000);

    std::uint64_t expected = 0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const double raw =
            model.mass.mean +
            model.mass.sd * standard_normal_at(model.seed, kStreamsPerSample * i + 3);
        if (raw < 500.0) {
            ++expected;
            CHECK(batch.samples[i].mass == 500.0);
        }
    }
    CHECK(expected > 0);
    CHECK(batch.clamp_count == expected);
}

TEST_CASE("clamping is a measure-zero event at the default model") {
    const SampleBatch batch = draw_batch(UncertaintyModel{}, 100000);
    CHECK(batch.clamp_count == 0);
}

TEST_CASE("empty batches are rejected") {
    CHECK_THROWS_AS(draw_batch(UncertaintyModel{}, 0), ConfigError);
}

TEST_CASE("model validation names the offending field") {
    UncertaintyModel model;
    model.friction.sd = -0.1;
    CHECK_THROWS_WITH_AS(model.validate(), "uncertainty.friction.sd: must be >= 0",
                         ConfigError);
}
