#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "geobi/objective.hpp"
#include "geobi/rng.hpp"

namespace geobi::pso {

enum class Topology {
    Global,  // every particle is steered by the swarm-wide best
    Ring,    // each particle follows the best within its ring neighborhood
};

/// Swarm parameters. Defaults follow the common choice: inertia 1,
/// cognitive and social pull 2, 30 particles, velocity capped at half the
/// search range per dimension.
struct SwarmConfig {
    std::size_t dimension = 0;
    std::size_t swarm_size = 30;
    double inertia = 1.0;    // c0, weight on the previous velocity
    double cognitive = 2.0;  // c1, pull toward the particle's own best
    double social = 2.0;     // c2, pull toward the neighborhood/global best
    Topology topology = Topology::Global;
    std::size_t ring_radius = 1;  // neighbors each side when topology == Ring
    std::vector<Interval> bounds;
    std::vector<double> v_max;  // empty: defaults to 0.5 * (high - low)
    std::size_t max_iterations = 1000;
    double stagnation_epsilon = 0.0;     // 0 disables early stopping
    std::size_t stagnation_window = 0;   // 0 disables early stopping
    std::uint64_t seed = 0;

    void validate() const;  // throws InvalidConfig

    /// v_max with defaults applied.
    [[nodiscard]] std::vector<double> effective_v_max() const;
};

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_fitness = 0.0;
};

/// Full swarm state. Value type: copy it, hand it between threads after a
/// step completes.
struct Swarm {
    SwarmConfig config;
    std::vector<Particle> particles;
    std::vector<double> best_position;  // swarm-wide best, all topologies
    double best_fitness = 0.0;
    std::size_t iteration = 0;
    SeededUniform rng;
};

struct RunResult {
    std::vector<double> best_position;
    double best_fitness = 0.0;
    std::size_t iterations_used = 0;
    /// Swarm best fitness after initialization (index 0) and after each
    /// iteration; non-increasing by construction.
    std::vector<double> history;
};

/// Random initial swarm: positions uniform in bounds, velocities uniform in
/// [-v_max, v_max], personal bests at the start positions. Fully determined
/// by config.seed. Throws DimensionMismatch if the objective disagrees on
/// dimension.
Swarm init_swarm(const SwarmConfig& config, const Objective& objective);

/// Velocity update for one particle:
///   v'[d] = c0*v[d] + c1*r1[d]*(pbest[d] - x[d]) + c2*r2[d]*(sbest[d] - x[d])
/// with fresh r1, r2 uniform draws per dimension, then clamped to
/// [-v_max[d], v_max[d]]. social_best is the swarm best (Global) or the ring
/// neighborhood best (Ring).
std::vector<double> update_velocity(const Particle& p, std::span<const double> social_best,
                                    const SwarmConfig& config, UniformSource& rng);

/// Position update: x'[d] = x[d] + v[d], clamped to bounds; a clamped
/// component has its velocity zeroed.
void update_position(Particle& p, const SwarmConfig& config);

/// Index of the neighborhood best (by personal best fitness, ties to the
/// lowest index) for particle i under the configured topology.
std::size_t social_best_index(const Swarm& swarm, std::size_t i);

/// One iteration: evaluate fitness, update personal bests (strict
/// improvement), update the swarm best, then velocities and positions.
/// Non-finite fitness values count as +infinity and never displace a best.
void step(Swarm& swarm, const Objective& objective);

/// Runs until max_iterations, or earlier once the swarm best improved by
/// less than stagnation_epsilon over the last stagnation_window iterations.
/// Throws AllParticlesInvalid if every initial fitness is non-finite.
RunResult run(const SwarmConfig& config, const Objective& objective);

}  // namespace geobi::pso
