#include "relia/report.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace relia {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

const char* signal_name(Signal s) {
    switch (s) {
        case Signal::Alarm: return "alarm";
        case Signal::AboveUpper: return "above_upper";
        default: return "in_control";
    }
}

std::string triple(double a, double b, double c) {
    return "[" + num(a) + ", " + num(b) + ", " + num(c) + "]";
}

std::string limits_body(const ControlLimits& limits) {
    std::string out = "{";
    out += "\"p\": " + triple(limits.p.low, limits.p.center, limits.p.high) + ", ";
    out += "\"t\": " + triple(limits.t_low, limits.t_center, limits.t_high) + ", ";
    out += "\"m\": " + triple(limits.m_low, limits.m_center, limits.m_high);
    out += "}";
    return out;
}

std::string covariance_body(const Matrix2& cov) {
    return "[" + num(cov.a11) + ", " + num(cov.a12) + ", " + num(cov.a21) + ", " + num(cov.a22) +
           "]";
}

}  // namespace

std::string report_to_json(const MonitorReport& report) {
    std::string out = "{\n";
    out += "  \"schema\": \"relia-spc/report/v1\",\n";
    out += "  \"method\": \"" + report.method + "\",\n";
    out += "  \"a_hat\": " + num(report.model.a) + ",\n";
    out += "  \"b_hat\": " + num(report.model.b) + ",\n";
    if (report.fit && report.fit->covariance) {
        out += "  \"covariance\": " + covariance_body(*report.fit->covariance) + ",\n";
    }
    out += "  \"limits\": " + limits_body(report.limits) + ",\n";
    out += "  \"points\": [\n";
    for (std::size_t i = 0; i < report.points.size(); ++i) {
        const auto& pt = report.points[i];
        out += "    {\"index\": " + std::to_string(pt.index) + ", \"diff\": " + num(pt.diff) +
               ", \"signal\": \"" + signal_name(pt.signal) + "\"}";
        out += (i + 1 < report.points.size()) ? ",\n" : "\n";
    }
    out += "  ],\n";
    out += "  \"alarms\": [";
    for (std::size_t i = 0; i < report.alarms.size(); ++i) {
        if (i > 0) out += ", ";
        out += std::to_string(report.alarms[i]);
    }
    out += "]\n";
    out += "}\n";
    return out;
}

std::string estimate_to_json(const EstimateResult& result) {
    std::string out = "{\n";
    out += "  \"method\": \"";
    out += (result.method == FitMethod::Mle ? "mle" : "mmle");
    out += "\",\n";
    out += "  \"a_hat\": " + num(result.model.a) + ",\n";
    out += "  \"b_hat\": " + num(result.model.b) + ",\n";
    out += "  \"iterations\": " + std::to_string(result.iterations) + ",\n";
    out += "  \"converged\": ";
    out += (result.converged ? "true" : "false");
    if (result.score_residual) {
        out += ",\n  \"score_residual\": " + num(*result.score_residual);
    }
    if (result.covariance) {
        out += ",\n  \"covariance\": " + covariance_body(*result.covariance);
        const double va = result.covariance->a11;
        const double vb = result.covariance->a22;
        if (va >= 0.0 && vb >= 0.0) {
            out += ",\n  \"se_a\": " + num(std::sqrt(va));
            out += ",\n  \"se_b\": " + num(std::sqrt(vb));
        }
    }
    out += "\n}\n";
    return out;
}

std::string limits_to_json(const ControlLimits& limits) {
    std::string out = "{\n";
    out += "  \"p\": " + triple(limits.p.low, limits.p.center, limits.p.high) + ",\n";
    out += "  \"t\": " + triple(limits.t_low, limits.t_center, limits.t_high) + ",\n";
    out += "  \"m\": " + triple(limits.m_low, limits.m_center, limits.m_high) + "\n";
    out += "}\n";
    return out;
}

std::string report_schema() {
    return R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "$id": "relia-spc/report/v1",
  "title": "Mean value control chart report",
  "version": "1",
  "type": "object",
  "required": ["schema", "method", "a_hat", "b_hat", "limits", "points", "alarms"],
  "additionalProperties": false,
  "properties": {
    "schema": {"const": "relia-spc/report/v1"},
    "method": {"enum": ["mle", "mmle", "fixed"]},
    "a_hat": {"type": "number", "exclusiveMinimum": 0},
    "b_hat": {"type": "number", "exclusiveMinimum": 0},
    "covariance": {"type": "array", "items": {"type": "number"}, "minItems": 4, "maxItems": 4},
    "limits": {
      "type": "object",
      "required": ["p", "t", "m"],
      "additionalProperties": false,
      "properties": {
        "p": {"$ref": "#/definitions/triple"},
        "t": {"$ref": "#/definitions/triple"},
        "m": {"$ref": "#/definitions/triple"}
      }
    },
    "points": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["index", "diff", "signal"],
        "additionalProperties": false,
        "properties": {
          "index": {"type": "integer", "minimum": 1},
          "diff": {"type": "number"},
          "signal": {"enum": ["in_control", "alarm", "above_upper"]}
        }
      }
    },
    "alarms": {"type": "array", "items": {"type": "integer", "minimum": 1}}
  },
  "definitions": {
    "triple": {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3}
  }
}
)";
}

}  // namespace relia
