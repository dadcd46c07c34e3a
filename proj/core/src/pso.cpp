#include "geobi/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "geobi/errors.hpp"

namespace geobi::pso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double evaluate_or_inf(const Objective& objective, std::span<const double> x) {
    const double f = objective.evaluate(x);
    return std::isfinite(f) ? f : kInf;
}

// Swarm-wide best over personal bests; ties go to the lowest index.
std::size_t global_best_index(const std::vector<Particle>& particles) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < particles.size(); ++i) {
        if (particles[i].best_fitness < particles[best].best_fitness) best = i;
    }
    return best;
}

}  // namespace

void SwarmConfig::validate() const {
    if (dimension == 0) throw InvalidConfig("dimension must be >= 1");
    if (swarm_size == 0) throw InvalidConfig("swarm_size must be >= 1");
    if (inertia < 0.0 || cognitive < 0.0 || social < 0.0)
        throw InvalidConfig("coefficients must be non-negative");
    if (bounds.size() != dimension)
        throw InvalidConfig("bounds must list one interval per dimension");
    for (const Interval& b : bounds) {
        if (!(b.low < b.high))
            throw InvalidConfig("each bound must satisfy low < high");
    }
    if (!v_max.empty()) {
        if (v_max.size() != dimension)
            throw InvalidConfig("v_max must be empty or one entry per dimension");
        for (double v : v_max) {
            if (!(v > 0.0)) throw InvalidConfig("v_max entries must be positive");
        }
    }
    if (topology == Topology::Ring) {
        if (ring_radius == 0) throw InvalidConfig("ring_radius must be >= 1");
        if (2 * ring_radius >= swarm_size)
            throw InvalidConfig("ring_radius must be < swarm_size / 2");
    }
    if (max_iterations == std::numeric_limits<std::size_t>::max())
        throw InvalidConfig("max_iterations too large");
}

std::vector<double> SwarmConfig::effective_v_max() const {
    if (!v_max.empty()) return v_max;
    std::vector<double> out(dimension);
    for (std::size_t d = 0; d < dimension; ++d) out[d] = 0.5 * (bounds[d].high - bounds[d].low);
    return out;
}

Swarm init_swarm(const SwarmConfig& config, const Objective& objective) {
    config.validate();
    if (objective.dimension != config.dimension)
        throw DimensionMismatch("objective dimension " + std::to_string(objective.dimension) +
                                " != swarm dimension " + std::to_string(config.dimension));

    Swarm swarm{config, {}, {}, kInf, 0, SeededUniform(config.seed)};
    swarm.particles.reserve(config.swarm_size);
    const std::vector<double> v_max = config.effective_v_max();

    for (std::size_t i = 0; i < config.swarm_size; ++i) {
        Particle p;
        p.position.resize(config.dimension);
        p.velocity.resize(config.dimension);
        for (std::size_t d = 0; d < config.dimension; ++d) {
            const Interval& b = config.bounds[d];
            p.position[d] = b.low + swarm.rng.next() * (b.high - b.low);
        }
        for (std::size_t d = 0; d < config.dimension; ++d) {
            p.velocity[d] = -v_max[d] + swarm.rng.next() * (2.0 * v_max[d]);
        }
        p.best_position = p.position;
        p.best_fitness = evaluate_or_inf(objective, p.position);
        swarm.particles.push_back(std::move(p));
    }

    const std::size_t g = global_best_index(swarm.particles);
    swarm.best_position = swarm.particles[g].best_position;
    swarm.best_fitness = swarm.particles[g].best_fitness;
    return swarm;
}

std::vector<double> update_velocity(const Particle& p, std::span<const double> social_best,
                                    const SwarmConfig& config, UniformSource& rng) {
    if (p.position.size() != config.dimension || social_best.size() != config.dimension)
        throw DimensionMismatch("velocity update across mismatched dimensions");

    const std::vector<double> v_max = config.effective_v_max();
    std::vector<double> v(config.dimension);
    for (std::size_t d = 0; d < config.dimension; ++d) {
        const double r1 = rng.next();
        const double r2 = rng.next();
        const double next = config.inertia * p.velocity[d] +
                            config.cognitive * r1 * (p.best_position[d] - p.position[d]) +
                            config.social * r2 * (social_best[d] - p.position[d]);
        v[d] = std::clamp(next, -v_max[d], v_max[d]);
    }
    return v;
}

void update_position(Particle& p, const SwarmConfig& config) {
    for (std::size_t d = 0; d < config.dimension; ++d) {
        p.position[d] += p.velocity[d];
        const Interval& b = config.bounds[d];
        if (p.position[d] < b.low) {
            p.position[d] = b.low;
            p.velocity[d] = 0.0;
        } else if (p.position[d] > b.high) {
            p.position[d] = b.high;
            p.velocity[d] = 0.0;
        }
    }
}

std::size_t social_best_index(const Swarm& swarm, std::size_t i) {
    if (swarm.config.topology == Topology::Global) return global_best_index(swarm.particles);

    const std::size_t n = swarm.particles.size();
    const std::size_t r = swarm.config.ring_radius;
    std::size_t best = i;
    for (std::size_t off = 0; off <= 2 * r; ++off) {
        const std::size_t j = (i + n - r + off) % n;
        if (swarm.particles[j].best_fitness < swarm.particles[best].best_fitness ||
            (swarm.particles[j].best_fitness == swarm.particles[best].best_fitness && j < best))
            best = j;
    }
    return best;
}

void step(Swarm& swarm, const Objective& objective) {
    // Evaluate current positions and update personal bests; strict
    // improvement only, so plateaus leave trajectories unchanged.
    for (Particle& p : swarm.particles) {
        const double f = evaluate_or_inf(objective, p.position);
        if (f < p.best_fitness) {
            p.best_fitness = f;
            p.best_position = p.position;
        }
    }

    // Personal bests never worsen, so the argmin (lowest index on ties) is
    // always at least as good as the incumbent swarm best.
    const std::size_t g = global_best_index(swarm.particles);
    swarm.best_fitness = swarm.particles[g].best_fitness;
    swarm.best_position = swarm.particles[g].best_position;

    // Move. Personal bests are frozen during this phase, so neighborhood
    // lookups stay consistent while positions change.
    for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
        Particle& p = swarm.particles[i];
        const std::vector<double>& social =
            swarm.config.topology == Topology::Global
                ? swarm.best_position
                : swarm.particles[social_best_index(swarm, i)].best_position;
        p.velocity = update_velocity(p, social, swarm.config, swarm.rng);
        update_position(p, swarm.config);
    }

    ++swarm.iteration;
}

RunResult run(const SwarmConfig& config, const Objective& objective) {
    Swarm swarm = init_swarm(config, objective);
    if (!std::isfinite(swarm.best_fitness))
        throw AllParticlesInvalid("every initial fitness evaluation was non-finite");

    RunResult result;
    result.history.reserve(config.max_iterations + 1);
    result.history.push_back(swarm.best_fitness);

    std::size_t it = 0;
    while (it < config.max_iterations) {
        step(swarm, objective);
        ++it;
        result.history.push_back(swarm.best_fitness);
        if (config.stagnation_window > 0 && it >= config.stagnation_window) {
            const double improvement =
                result.history[it - config.stagnation_window] - result.history[it];
            if (improvement < config.stagnation_epsilon) break;
        }
    }

    result.best_position = swarm.best_position;
    result.best_fitness = swarm.best_fitness;
    result.iterations_used = it;
    return result;
}

}  // namespace geobi::pso
