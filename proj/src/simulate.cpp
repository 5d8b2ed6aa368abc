#include "relia/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "relia/errors.hpp"
#include "relia/rng.hpp"

namespace relia {

namespace {

void check_spec(const SimulationSpec& spec) {
    if (!(spec.horizon > 0.0) || !std::isfinite(spec.horizon)) {
        throw DomainError("simulation horizon must be positive and finite");
    }
}

std::vector<double> draw_order_statistics(const SimulationSpec& spec, Xoshiro256pp& rng) {
    const double total = mean_value(spec.model, spec.horizon);
    std::size_t count = 0;
    double acc = -std::log(rng.uniform_open01());
    while (acc <= total) {
        ++count;
        acc -= std::log(rng.uniform_open01());
    }

    const double window_mass = cdf(spec.model, spec.horizon);
    const double b = spec.model.b;
    std::vector<double> times(count);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        for (auto& t : times) {
            t = -std::log1p(-rng.uniform_open01() * window_mass) / b;
        }
        std::sort(times.begin(), times.end());
        const bool tied = std::adjacent_find(times.begin(), times.end()) != times.end();
        if (!tied && (times.empty() || times.front() > 0.0)) return times;
    }
    throw Error("simulation could not produce distinct event times");
}

std::vector<double> draw_thinning(const SimulationSpec& spec, Xoshiro256pp& rng) {
    const double rate = spec.model.a * spec.model.b;
    const double b = spec.model.b;
    std::vector<double> times;
    double t = 0.0;
    for (;;) {
        t -= std::log(rng.uniform_open01()) / rate;
        if (t > spec.horizon || !std::isfinite(t)) break;
        if (rng.uniform01() <= std::exp(-b * t)) {
            if (!times.empty() && t == times.back()) continue;
            times.push_back(t);
        }
    }
    return times;
}

}  // namespace

std::vector<double> simulate_log(const SimulationSpec& spec) {
    check_spec(spec);
    Xoshiro256pp rng(spec.seed);
    if (spec.method == SimMethod::OrderStatistics) return draw_order_statistics(spec, rng);
    return draw_thinning(spec, rng);
}

std::vector<std::pair<double, double>> empirical_mean_curve(const SimulationSpec& spec,
                                                            int replications,
                                                            const std::vector<double>& grid) {
    check_spec(spec);
    if (replications < 1) throw DomainError("at least one replication is required");
    if (grid.empty()) throw DomainError("the evaluation grid must not be empty");
    for (double t : grid) {
        if (!(t >= 0.0)) throw DomainError("grid times must be nonnegative");
    }

    std::vector<double> sums(grid.size(), 0.0);
    for (int r = 0; r < replications; ++r) {
        SimulationSpec rep = spec;
        rep.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(r));
        const std::vector<double> log = simulate_log(rep);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto upto = std::upper_bound(log.begin(), log.end(), grid[i]);
            sums[i] += static_cast<double>(upto - log.begin());
        }
    }

    std::vector<std::pair<double, double>> curve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        curve[i] = {grid[i], sums[i] / static_cast<double>(replications)};
    }
    return curve;
}

const char* sim_method_name(SimMethod m) {
    return m == SimMethod::OrderStatistics ? "order_statistics" : "thinning";
}

}  // namespace relia
