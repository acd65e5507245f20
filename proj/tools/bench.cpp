// Compares the serial reference paths with the OpenMP kernels: population
// fitness evaluation and oracle enumeration. Also checks that both paths
// agree bit for bit.
#include <chrono>
#include <iostream>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lezopt/fixtures.hpp"
#include "lezopt/ga.hpp"
#include "lezopt/oracle.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main() {
  using namespace lezopt;

#ifdef _OPENMP
  std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "OpenMP not enabled; both paths run serially\n";
#endif

  const Scenario scenario = make_idf_fixture();
  const auto reference = simulate(scenario, no_new_restriction_control(scenario));
  const EmissionTarget target =
      target_from_beta(0.55, reference.terminal_emissions_tco2());

  // Random repaired controls standing in for one GA population.
  std::mt19937_64 rng(7);
  const int population = 200;
  std::vector<ControlSequence> controls;
  controls.reserve(population);
  for (int i = 0; i < population; ++i) {
    ControlSequence c(scenario.zones, scenario.horizon);
    for (int z = 0; z < scenario.zones; ++z)
      for (int t = 1; t <= scenario.horizon; ++t)
        c.at(z, t) =
            -1 + static_cast<int>(rng() % (scenario.topology.max_tightening[z] + 2));
    controls.push_back(
        repair_control(c, scenario.initial_ban_age, scenario.topology, scenario.max_age));
  }

  std::vector<Fitness> serial(population), parallel(population);
  auto t0 = Clock::now();
  for (int i = 0; i < population; ++i) serial[i] = fitness(scenario, controls[i], target);
  const double t_serial = seconds_since(t0);

  t0 = Clock::now();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < population; ++i) parallel[i] = fitness(scenario, controls[i], target);
  const double t_parallel = seconds_since(t0);

  bool identical = true;
  for (int i = 0; i < population; ++i)
    identical = identical && serial[i].objective == parallel[i].objective &&
                serial[i].violation == parallel[i].violation;

  std::cout << "population evaluation (" << population << " controls):\n"
            << "  serial   " << t_serial << " s\n"
            << "  parallel " << t_parallel << " s  (speedup " << t_serial / t_parallel
            << "x)\n"
            << "  results identical: " << (identical ? "yes" : "NO") << "\n";

  const TinyInstance tiny = tiny_two_zone_instance();
  const EmissionTarget tiny_target = tiny_two_zone_target();

  t0 = Clock::now();
  const auto oracle_serial = enumerate_optimal(tiny, tiny_target, /*parallel=*/false);
  const double t_oracle_serial = seconds_since(t0);

  t0 = Clock::now();
  const auto oracle_parallel = enumerate_optimal(tiny, tiny_target, /*parallel=*/true);
  const double t_oracle_parallel = seconds_since(t0);

  const bool oracle_identical =
      oracle_serial.feasible == oracle_parallel.feasible &&
      oracle_serial.optimal_disposals == oracle_parallel.optimal_disposals &&
      oracle_serial.optimal_controls == oracle_parallel.optimal_controls;

  std::cout << "oracle enumeration (" << oracle_serial.unique_sequences
            << " unique controls):\n"
            << "  serial   " << t_oracle_serial << " s\n"
            << "  parallel " << t_oracle_parallel << " s  (speedup "
            << t_oracle_serial / t_oracle_parallel << "x)\n"
            << "  results identical: " << (oracle_identical ? "yes" : "NO") << "\n";

  return identical && oracle_identical ? 0 : 1;
}
