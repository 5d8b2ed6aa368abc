#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "relia/dataset.hpp"
#include "relia/estimate.hpp"
#include "relia/model.hpp"

namespace relia {

struct Probabilities {
    double low = 0.00135;
    double center = 0.5;
    double high = 0.99865;
};

struct ControlLimits {
    Probabilities p;
    double t_low = 0.0;
    double t_center = 0.0;
    double t_high = 0.0;
    double m_low = 0.0;
    double m_center = 0.0;
    double m_high = 0.0;
};

// A difference strictly below m_low is the out-of-control signal; strictly
// above m_high is reported separately and never counted as an alarm.
enum class Signal { InControl, Alarm, AboveUpper };

struct ChartPoint {
    std::size_t index = 0;   // failure number k, 1-based; diff pairs k with k+1
    double diff = 0.0;       // m(s_{k+1}) - m(s_k)
    Signal signal = Signal::InControl;
};

ControlLimits control_limits(const GoModel& model, const Probabilities& probs = {});

// n-1 unclassified points for a log of n failures.
std::vector<ChartPoint> successive_differences(const GoModel& model, const FailureLog& log);

// Fills signals: diff < m_low -> Alarm, diff > m_high -> AboveUpper, ties
// inclusive of the in-control region.
std::vector<ChartPoint> classify(std::vector<ChartPoint> points, const ControlLimits& limits);

struct MonitorReport {
    std::string method;                     // "mle", "mmle", or "fixed"
    GoModel model;
    std::optional<EstimateResult> fit;      // absent for a fixed model
    ControlLimits limits;
    std::vector<ChartPoint> points;
    std::vector<std::size_t> alarms;        // indices of Alarm points, ascending
    FailureLog log;
};

// Fit -> limits -> differences -> classify, bundled.
MonitorReport monitor(const FailureLog& log, FitMethod method, const Probabilities& probs = {},
                      const FitOptions& opts = {});

// Same pipeline with caller-supplied parameters instead of a fit.
MonitorReport monitor(const FailureLog& log, const GoModel& model,
                      const Probabilities& probs = {});

}  // namespace relia
