#include <benchmark/benchmark.h>

#include "geobi/objectives.hpp"
#include "geobi/pso.hpp"

namespace {

void BM_SwarmStepSphere(benchmark::State& state) {
    const auto dimension = static_cast<std::size_t>(state.range(0));
    const auto objective = geobi::objectives::sphere(dimension);
    geobi::pso::SwarmConfig config;
    config.dimension = dimension;
    config.bounds = objective.bounds;
    config.swarm_size = 30;
    config.seed = 5;
    auto swarm = geobi::pso::init_swarm(config, objective);
    for (auto _ : state) {
        geobi::pso::step(swarm, objective);
        benchmark::DoNotOptimize(swarm.best_fitness);
    }
}
BENCHMARK(BM_SwarmStepSphere)->Arg(2)->Arg(10)->Arg(50);

void BM_SphereRunToConvergence(benchmark::State& state) {
    const auto objective = geobi::objectives::sphere(2);
    geobi::pso::SwarmConfig config;
    config.dimension = 2;
    config.bounds = {{-5.0, 5.0}, {-5.0, 5.0}};
    config.swarm_size = 30;
    config.max_iterations = 2000;
    for (auto _ : state) {
        config.seed += 1;
        benchmark::DoNotOptimize(geobi::pso::run(config, objective));
    }
}
BENCHMARK(BM_SphereRunToConvergence);

}  // namespace
