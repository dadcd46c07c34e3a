#pragma once

#include <cstdint>
#include <random>

namespace geobi {

/// Source of uniform draws in [0, 1). The swarm updates pull every random
/// number through this interface so tests can substitute a scripted source
/// and reproduce the update equations exactly.
class UniformSource {
public:
    virtual ~UniformSource() = default;

    /// Next uniform draw in [0, 1).
    virtual double next() = 0;
};

/// Deterministic default source: mt19937_64 mapped to [0, 1) by taking the
/// top 53 bits of each output word. The mapping is fixed here (rather than
/// delegating to std::uniform_real_distribution, whose algorithm is
/// implementation-defined) so identical seeds give identical streams on
/// every platform.
class SeededUniform final : public UniformSource {
public:
    explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}

    double next() override {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

/// Fixed-value source for exercising the velocity update with known draws.
class ConstantUniform final : public UniformSource {
public:
    explicit ConstantUniform(double value) : value_(value) {}

    double next() override { return value_; }

private:
    double value_;
};

}  // namespace geobi
