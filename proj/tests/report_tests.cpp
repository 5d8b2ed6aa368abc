#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "golden.hpp"
#include "relia/dataset.hpp"
#include "relia/estimate.hpp"
#include "relia/report.hpp"
#include "relia/spc.hpp"

using namespace relia;
using nlohmann::json;

namespace {

MonitorReport fitted_report(FitMethod method) {
    return monitor(cumulative_from_gaps(embedded_dataset()), method);
}

MonitorReport fixed_report() {
    return monitor(cumulative_from_gaps(embedded_dataset()),
                   GoModel(golden::kRefA, golden::kRefB));
}

// Enough of draft-07 to check the emitted reports against the published
// schema: type, const, enum, required, additionalProperties: false,
// properties, items, minItems/maxItems, minimum/exclusiveMinimum, $ref into
// definitions.
bool conforms(const json& schema, const json& instance, const json& root) {
    if (schema.contains("$ref")) {
        const std::string ref = schema["$ref"].get<std::string>();
        const std::string prefix = "#/definitions/";
        REQUIRE(ref.rfind(prefix, 0) == 0);
        return conforms(root["definitions"][ref.substr(prefix.size())], instance, root);
    }
    if (schema.contains("const") && instance != schema["const"]) return false;
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& v : schema["enum"]) found = found || instance == v;
        if (!found) return false;
    }
    if (schema.contains("type")) {
        const std::string type = schema["type"].get<std::string>();
        if (type == "object" && !instance.is_object()) return false;
        if (type == "array" && !instance.is_array()) return false;
        if (type == "string" && !instance.is_string()) return false;
        if (type == "number" && !instance.is_number()) return false;
        if (type == "integer" && !instance.is_number_integer()) return false;
    }
    if (schema.contains("required")) {
        for (const auto& key : schema["required"]) {
            if (!instance.contains(key.get<std::string>())) return false;
        }
    }
    if (instance.is_object()) {
        const json props = schema.value("properties", json::object());
        if (schema.value("additionalProperties", json(true)) == json(false)) {
            for (const auto& item : instance.items()) {
                if (!props.contains(item.key())) return false;
            }
        }
        for (const auto& item : instance.items()) {
            if (props.contains(item.key()) &&
                !conforms(props[item.key()], item.value(), root)) {
                return false;
            }
        }
    }
    if (instance.is_array()) {
        if (schema.contains("minItems") && instance.size() < schema["minItems"].get<std::size_t>())
            return false;
        if (schema.contains("maxItems") && instance.size() > schema["maxItems"].get<std::size_t>())
            return false;
        if (schema.contains("items")) {
            for (const auto& element : instance) {
                if (!conforms(schema["items"], element, root)) return false;
            }
        }
    }
    if (instance.is_number()) {
        const double v = instance.get<double>();
        if (schema.contains("minimum") && v < schema["minimum"].get<double>()) return false;
        if (schema.contains("exclusiveMinimum") && v <= schema["exclusiveMinimum"].get<double>())
            return false;
    }
    return true;
}

bool report_conforms(const json& doc) {
    const json schema = json::parse(report_schema());
    return conforms(schema, doc, schema);
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("the monitor report carries the schema id and alarm list") {
    const std::string text = report_to_json(fitted_report(FitMethod::Mle));
    CHECK(text.find("\"schema\": \"relia-spc/report/v1\"") != std::string::npos);
    CHECK(text.find("\"alarms\": [10, 25]") != std::string::npos);
    CHECK(text.back() == '\n');
}

TEST_CASE("the report parses as JSON with the expected shape") {
    const json doc = json::parse(report_to_json(fitted_report(FitMethod::Mle)));
    CHECK(doc["method"] == "mle");
    CHECK(doc["a_hat"].get<double>() == doctest::Approx(golden::kMleA).epsilon(1e-10));
    CHECK(doc["b_hat"].get<double>() == doctest::Approx(golden::kMleB).epsilon(1e-10));
    REQUIRE(doc["points"].size() == 29);
    CHECK(doc["points"][0]["index"] == 1);
    CHECK(doc["points"][9]["signal"] == "alarm");
    CHECK(doc["points"][0]["signal"] == "in_control");
    REQUIRE(doc["alarms"].size() == 2);
    CHECK(doc["alarms"][0] == 10);
    CHECK(doc["alarms"][1] == 25);
    REQUIRE(doc["covariance"].size() == 4);
    CHECK(doc["limits"]["p"][1] == 0.5);
    CHECK(doc["limits"]["m"].size() == 3);
}

TEST_CASE("fixed-model reports omit the covariance") {
    const json doc = json::parse(report_to_json(fixed_report()));
    CHECK(doc["method"] == "fixed");
    CHECK_FALSE(doc.contains("covariance"));
    CHECK(doc["a_hat"].get<double>() == golden::kRefA);
}

TEST_CASE("serialization is byte stable") {
    CHECK(report_to_json(fitted_report(FitMethod::Mle)) ==
          report_to_json(fitted_report(FitMethod::Mle)));
    CHECK(report_to_json(fixed_report()) == report_to_json(fixed_report()));
}

TEST_CASE("numbers are written with twelve significant digits") {
    const std::string text = report_to_json(fixed_report());
    CHECK(text.find("\"a_hat\": 33.396342") != std::string::npos);
    CHECK(text.find("\"b_hat\": 0.003962") != std::string::npos);
}

TEST_CASE("the published schema is itself valid JSON") {
    const json schema = json::parse(report_schema());
    CHECK(schema["$id"] == "relia-spc/report/v1");
    CHECK(schema["version"] == "1");
    const auto& methods = schema["properties"]["method"]["enum"];
    CHECK(std::find(methods.begin(), methods.end(), json("fixed")) != methods.end());
    CHECK(schema["required"].size() == 7);
}

TEST_CASE("every report variant conforms to the schema") {
    CHECK(report_conforms(json::parse(report_to_json(fitted_report(FitMethod::Mle)))));
    CHECK(report_conforms(json::parse(report_to_json(fitted_report(FitMethod::Mmle)))));
    CHECK(report_conforms(json::parse(report_to_json(fixed_report()))));
}

TEST_CASE("the schema rejects malformed documents") {
    const json base = json::parse(report_to_json(fitted_report(FitMethod::Mle)));
    REQUIRE(report_conforms(base));

    json extra = base;
    extra["surprise"] = 1;
    CHECK_FALSE(report_conforms(extra));

    json bad_method = base;
    bad_method["method"] = "guesswork";
    CHECK_FALSE(report_conforms(bad_method));

    json bad_alarm = base;
    bad_alarm["alarms"] = json::array({0});
    CHECK_FALSE(report_conforms(bad_alarm));

    json short_triple = base;
    short_triple["limits"]["p"] = json::array({0.1, 0.5});
    CHECK_FALSE(report_conforms(short_triple));

    json bad_signal = base;
    bad_signal["points"][0]["signal"] = "panic";
    CHECK_FALSE(report_conforms(bad_signal));

    json wrong_id = base;
    wrong_id["schema"] = "relia-spc/report/v2";
    CHECK_FALSE(report_conforms(wrong_id));

    json missing = base;
    missing.erase("limits");
    CHECK_FALSE(report_conforms(missing));

    json negative_rate = base;
    negative_rate["b_hat"] = 0.0;
    CHECK_FALSE(report_conforms(negative_rate));
}

TEST_CASE("estimate serialization reports fit diagnostics") {
    const EstimateResult fit = fit_mle(cumulative_from_gaps(embedded_dataset()));
    const json doc = json::parse(estimate_to_json(fit));
    CHECK(doc["method"] == "mle");
    CHECK(doc["converged"] == true);
    CHECK(doc["iterations"].get<int>() > 0);
    CHECK(std::fabs(doc["score_residual"].get<double>()) < 1e-6);
    REQUIRE(doc["covariance"].size() == 4);
    CHECK(doc["se_a"].get<double>() ==
          doctest::Approx(std::sqrt(golden::kCovA11)).epsilon(1e-6));
    CHECK(doc["se_b"].get<double>() ==
          doctest::Approx(std::sqrt(golden::kCovA22)).epsilon(1e-6));

    const EstimateResult closed = fit_mmle(cumulative_from_gaps(embedded_dataset()));
    const json closed_doc = json::parse(estimate_to_json(closed));
    CHECK(closed_doc["method"] == "mmle");
    CHECK(closed_doc["iterations"] == 0);
    CHECK_FALSE(closed_doc.contains("score_residual"));
}

TEST_CASE("limit serialization carries all three scales") {
    const ControlLimits limits = control_limits(GoModel(golden::kRefA, golden::kRefB));
    const json doc = json::parse(limits_to_json(limits));
    CHECK(doc["p"] == json::array({0.00135, 0.5, 0.99865}));
    CHECK(doc["t"][2].get<double>() == doctest::Approx(golden::kRefTHigh).epsilon(1e-10));
    CHECK(doc["m"][0].get<double>() == doctest::Approx(golden::kRefMLow).epsilon(1e-6));
}

}  // TEST_SUITE
