#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "golden.hpp"
#include "relia/errors.hpp"
#include "relia/estimate.hpp"
#include "relia/rng.hpp"
#include "relia/simulate.hpp"

using namespace relia;

namespace {

SimulationSpec ref_spec(std::uint64_t seed, SimMethod method) {
    SimulationSpec spec{GoModel(golden::kSimA, golden::kSimB), golden::kSimHorizon, seed, method};
    return spec;
}

double mean_count(SimMethod method, int reps, std::uint64_t base_seed) {
    double total = 0.0;
    for (int r = 0; r < reps; ++r) {
        total += static_cast<double>(
            simulate_log(ref_spec(derive_seed(base_seed, static_cast<std::uint64_t>(r)), method))
                .size());
    }
    return total / reps;
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("a seed pins the realization") {
    for (SimMethod method : {SimMethod::OrderStatistics, SimMethod::Thinning}) {
        const std::vector<double> first = simulate_log(ref_spec(42, method));
        const std::vector<double> again = simulate_log(ref_spec(42, method));
        CHECK(first == again);
        const std::vector<double> other = simulate_log(ref_spec(43, method));
        CHECK(first != other);
    }
}

TEST_CASE("event times are ordered and inside the window") {
    for (SimMethod method : {SimMethod::OrderStatistics, SimMethod::Thinning}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const std::vector<double> times = simulate_log(ref_spec(seed, method));
            for (std::size_t i = 0; i < times.size(); ++i) {
                CHECK(times[i] > 0.0);
                CHECK(times[i] <= golden::kSimHorizon);
                if (i > 0) CHECK(times[i] > times[i - 1]);
            }
        }
    }
}

TEST_CASE("a vanishing window produces no events") {
    SimulationSpec spec{GoModel(golden::kSimA, golden::kSimB), 1e-9, 7,
                        SimMethod::OrderStatistics};
    CHECK(simulate_log(spec).empty());
    spec.method = SimMethod::Thinning;
    CHECK(simulate_log(spec).size() <= 1);
}

TEST_CASE("the long-run event count matches the mean value") {
    // The window is sized so the expected count is 35; the Poisson standard
    // error over 1000 runs keeps the sample mean within about half an event.
    const double expected = 35.0;
    const double band = 3.0 * std::sqrt(expected / 1000.0);
    const double os_mean = mean_count(SimMethod::OrderStatistics, 1000, 2024);
    CHECK(std::fabs(os_mean - expected) < band);
    const double th_mean = mean_count(SimMethod::Thinning, 1000, 2024);
    CHECK(std::fabs(th_mean - expected) < band);
}

TEST_CASE("both generators agree on the mean count") {
    const double os_mean = mean_count(SimMethod::OrderStatistics, 2000, 555);
    const double th_mean = mean_count(SimMethod::Thinning, 2000, 556);
    const double pooled = 4.0 * std::sqrt(2.0 * 35.0 / 2000.0);
    CHECK(std::fabs(os_mean - th_mean) < pooled);
}

TEST_CASE("counts are roughly Poisson dispersed") {
    std::vector<double> counts;
    for (int r = 0; r < 2000; ++r) {
        counts.push_back(static_cast<double>(
            simulate_log(ref_spec(derive_seed(99, static_cast<std::uint64_t>(r)),
                                  SimMethod::OrderStatistics))
                .size()));
    }
    double mean = 0.0;
    for (double c : counts) mean += c;
    mean /= counts.size();
    double var = 0.0;
    for (double c : counts) var += (c - mean) * (c - mean);
    var /= (counts.size() - 1);
    CHECK(std::fabs(var / mean - 1.0) < 0.15);
}

TEST_CASE("the empirical mean curve tracks the analytic one") {
    const GoModel model(golden::kSimA, golden::kSimB);
    std::vector<double> grid;
    for (int i = 1; i <= 10; ++i) grid.push_back(golden::kSimHorizon * i / 10.0);

    SimulationSpec spec{model, golden::kSimHorizon, 314, SimMethod::OrderStatistics};
    const auto curve = empirical_mean_curve(spec, 1000, grid);
    REQUIRE(curve.size() == grid.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        CHECK(curve[i].first == grid[i]);
        const double m = mean_value(model, grid[i]);
        CHECK(std::fabs(curve[i].second - m) < 3.0 * std::sqrt(m / 1000.0));
    }
}

TEST_CASE("a single-replication curve is the counting function of that run") {
    SimulationSpec spec{GoModel(golden::kSimA, golden::kSimB), golden::kSimHorizon, 11,
                        SimMethod::OrderStatistics};
    SimulationSpec replicated = spec;
    replicated.seed = derive_seed(spec.seed, 0);
    const std::vector<double> times = simulate_log(replicated);

    std::vector<double> grid{50.0, 150.0, 250.0, 350.0, golden::kSimHorizon};
    const auto curve = empirical_mean_curve(spec, 1, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto count = std::upper_bound(times.begin(), times.end(), grid[i]) - times.begin();
        CHECK(curve[i].second == static_cast<double>(count));
    }
}

TEST_CASE("the curve is zero at time zero") {
    SimulationSpec spec{GoModel(golden::kSimA, golden::kSimB), golden::kSimHorizon, 1,
                        SimMethod::Thinning};
    const auto curve = empirical_mean_curve(spec, 50, {0.0, 1.0});
    CHECK(curve[0].second == 0.0);
}

TEST_CASE("curve and spec preconditions are enforced") {
    SimulationSpec spec{GoModel(golden::kSimA, golden::kSimB), golden::kSimHorizon, 1,
                        SimMethod::OrderStatistics};
    CHECK_THROWS_AS(empirical_mean_curve(spec, 0, {1.0}), DomainError);
    CHECK_THROWS_AS(empirical_mean_curve(spec, 10, {}), DomainError);
    SimulationSpec bad = spec;
    bad.horizon = 0.0;
    CHECK_THROWS_AS(simulate_log(bad), DomainError);
    bad.horizon = -3.0;
    CHECK_THROWS_AS(simulate_log(bad), DomainError);
}

TEST_CASE("derived seeds do not collide") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 100; ++i) seen.insert(derive_seed(7, i));
    CHECK(seen.size() == 100);
    CHECK(derive_seed(7, 0) != derive_seed(8, 0));
}

TEST_CASE("simulated logs can be refit near the truth") {
    // One long window at a higher rate so the fit is well conditioned.
    SimulationSpec spec{GoModel(100.0, 0.01), 600.0, 20240601, SimMethod::OrderStatistics};
    const std::vector<double> times = simulate_log(spec);
    REQUIRE(times.size() > 30);
    const EstimateResult fit = fit_mle(FailureLog(times));
    CHECK(fit.converged);
    CHECK(fit.model.b > 0.002);
    CHECK(fit.model.b < 0.05);
}

TEST_CASE("generator names round-trip") {
    CHECK(std::string(sim_method_name(SimMethod::OrderStatistics)) == "order_statistics");
    CHECK(std::string(sim_method_name(SimMethod::Thinning)) == "thinning");
}

}  // TEST_SUITE
