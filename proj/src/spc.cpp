#include "relia/spc.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "relia/errors.hpp"

namespace relia {

namespace {

void check_probs(const Probabilities& p) {
    const bool in_range = p.low > 0.0 && p.high < 1.0;
    const bool ordered = p.low < p.center && p.center < p.high;
    if (!in_range || !ordered) {
        throw DomainError("control probabilities must satisfy 0 < low < center < high < 1");
    }
}

std::vector<std::size_t> alarm_indices(const std::vector<ChartPoint>& points) {
    std::vector<std::size_t> alarms;
    for (const auto& pt : points) {
        if (pt.signal == Signal::Alarm) alarms.push_back(pt.index);
    }
    return alarms;
}

MonitorReport assemble(std::string method, const GoModel& model,
                       std::optional<EstimateResult> fit, const FailureLog& log,
                       const Probabilities& probs) {
    ControlLimits limits = control_limits(model, probs);
    std::vector<ChartPoint> points = classify(successive_differences(model, log), limits);
    std::vector<std::size_t> alarms = alarm_indices(points);
    return MonitorReport{std::move(method), model,   std::move(fit), limits,
                         std::move(points), std::move(alarms), log};
}

}  // namespace

ControlLimits control_limits(const GoModel& model, const Probabilities& probs) {
    check_probs(probs);
    ControlLimits limits;
    limits.p = probs;
    limits.t_low = quantile(model, probs.low);
    limits.t_center = quantile(model, probs.center);
    limits.t_high = quantile(model, probs.high);
    limits.m_low = model.a * probs.low;
    limits.m_center = model.a * probs.center;
    limits.m_high = model.a * probs.high;
    return limits;
}

std::vector<ChartPoint> successive_differences(const GoModel& model, const FailureLog& log) {
    if (log.size() < 2) {
        throw DomainError("successive differences require at least 2 failures");
    }
    std::vector<ChartPoint> points;
    points.reserve(log.size() - 1);
    double prev = mean_value(model, log[0]);
    for (std::size_t k = 1; k < log.size(); ++k) {
        const double cur = mean_value(model, log[k]);
        points.push_back(ChartPoint{k, cur - prev, Signal::InControl});
        prev = cur;
    }
    return points;
}

std::vector<ChartPoint> classify(std::vector<ChartPoint> points, const ControlLimits& limits) {
    for (auto& pt : points) {
        if (pt.diff < limits.m_low) {
            pt.signal = Signal::Alarm;
        } else if (pt.diff > limits.m_high) {
            pt.signal = Signal::AboveUpper;
        } else {
            pt.signal = Signal::InControl;
        }
    }
    return points;
}

MonitorReport monitor(const FailureLog& log, FitMethod method, const Probabilities& probs,
                      const FitOptions& opts) {
    EstimateResult fit =
        method == FitMethod::Mle ? fit_mle(log, opts) : fit_mmle(log);
    const GoModel model = fit.model;
    const char* name = method == FitMethod::Mle ? "mle" : "mmle";
    return assemble(name, model, std::move(fit), log, probs);
}

MonitorReport monitor(const FailureLog& log, const GoModel& model, const Probabilities& probs) {
    return assemble("fixed", model, std::nullopt, log, probs);
}

}  // namespace relia
