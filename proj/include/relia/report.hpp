#pragma once

#include <string>

#include "relia/estimate.hpp"
#include "relia/spc.hpp"

namespace relia {

// JSON document for a MonitorReport under the "relia-spc/report/v1" schema.
// Keys in fixed order, floats at 12 significant digits, byte-deterministic.
std::string report_to_json(const MonitorReport& report);

// Smaller documents for the fit and limits subcommands, same conventions.
std::string estimate_to_json(const EstimateResult& result);
std::string limits_to_json(const ControlLimits& limits);

// JSON Schema describing report_to_json output.
std::string report_schema();

}  // namespace relia
