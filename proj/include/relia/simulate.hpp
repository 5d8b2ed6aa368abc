#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "relia/model.hpp"

namespace relia {

enum class SimMethod { OrderStatistics, Thinning };

struct SimulationSpec {
    GoModel model;
    double horizon;                                  // observation window (0, T]
    std::uint64_t seed = 0;
    SimMethod method = SimMethod::OrderStatistics;
};

// One realization of the process on (0, horizon]: strictly increasing event
// times, possibly empty. Deterministic in (seed, method).
std::vector<double> simulate_log(const SimulationSpec& spec);

// Average of N(t) over `replications` runs of `spec` (seeds derived from
// spec.seed by replication index) at each grid time.
std::vector<std::pair<double, double>> empirical_mean_curve(const SimulationSpec& spec,
                                                            int replications,
                                                            const std::vector<double>& grid);

const char* sim_method_name(SimMethod m);

}  // namespace relia
