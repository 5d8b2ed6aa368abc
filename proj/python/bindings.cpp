#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "relia/chart.hpp"
#include "relia/cli.hpp"
#include "relia/dataset.hpp"
#include "relia/errors.hpp"
#include "relia/estimate.hpp"
#include "relia/model.hpp"
#include "relia/report.hpp"
#include "relia/simulate.hpp"
#include "relia/spc.hpp"

namespace py = pybind11;

namespace {

relia::FailureLog make_log(const std::vector<double>& times, const std::string& format) {
    if (format == "tbf") {
        return relia::cumulative_from_gaps(relia::InterFailureTimes(times));
    }
    if (format == "cumulative") {
        return relia::FailureLog(times);
    }
    throw relia::DataError("format must be 'tbf' or 'cumulative'");
}

relia::FitMethod make_method(const std::string& method) {
    if (method == "mle") return relia::FitMethod::Mle;
    if (method == "mmle") return relia::FitMethod::Mmle;
    throw relia::DataError("method must be 'mle' or 'mmle'");
}

relia::Probabilities make_probs(const std::vector<double>& probs) {
    if (probs.size() != 3) {
        throw relia::DomainError("probs must contain exactly three values");
    }
    return relia::Probabilities{probs[0], probs[1], probs[2]};
}

py::dict estimate_dict(const relia::EstimateResult& fit) {
    py::dict d;
    d["method"] = fit.method == relia::FitMethod::Mle ? "mle" : "mmle";
    d["a_hat"] = fit.model.a;
    d["b_hat"] = fit.model.b;
    d["iterations"] = fit.iterations;
    d["converged"] = fit.converged;
    if (fit.score_residual) d["score_residual"] = *fit.score_residual;
    if (fit.covariance) {
        const auto& c = *fit.covariance;
        d["covariance"] = py::make_tuple(c.a11, c.a12, c.a21, c.a22);
    }
    return d;
}

py::dict limits_dict(const relia::ControlLimits& limits) {
    py::dict d;
    d["p"] = py::make_tuple(limits.p.low, limits.p.center, limits.p.high);
    d["t"] = py::make_tuple(limits.t_low, limits.t_center, limits.t_high);
    d["m"] = py::make_tuple(limits.m_low, limits.m_center, limits.m_high);
    return d;
}

const char* signal_name(relia::Signal s) {
    switch (s) {
        case relia::Signal::Alarm: return "alarm";
        case relia::Signal::AboveUpper: return "above_upper";
        default: return "in_control";
    }
}

py::dict report_dict(const relia::MonitorReport& report) {
    py::dict d;
    d["method"] = report.method;
    d["a_hat"] = report.model.a;
    d["b_hat"] = report.model.b;
    if (report.fit) d["fit"] = estimate_dict(*report.fit);
    d["limits"] = limits_dict(report.limits);
    py::list points;
    for (const auto& pt : report.points) {
        py::dict p;
        p["index"] = pt.index;
        p["diff"] = pt.diff;
        p["signal"] = signal_name(pt.signal);
        points.append(p);
    }
    d["points"] = points;
    d["alarms"] = report.alarms;
    return d;
}

relia::MonitorReport build_report(const std::vector<double>& times, const std::string& format,
                                  const std::string& method, const std::vector<double>& probs,
                                  py::object a, py::object b) {
    const relia::FailureLog log = make_log(times, format);
    const relia::Probabilities p = make_probs(probs);
    if (!a.is_none() || !b.is_none()) {
        if (a.is_none() || b.is_none()) {
            throw relia::DomainError("a fixed model requires both a and b");
        }
        return relia::monitor(log, relia::GoModel(a.cast<double>(), b.cast<double>()), p);
    }
    return relia::monitor(log, make_method(method), p);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Reliability growth control charts for inter-failure-time data";

    py::register_exception<relia::EstimationError>(m, "EstimationError", PyExc_RuntimeError);
    py::register_exception<relia::DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<relia::DomainError>(m, "DomainError", PyExc_ValueError);

    m.def(
        "mean_value",
        [](double a, double b, double t) { return relia::mean_value(relia::GoModel(a, b), t); },
        py::arg("a"), py::arg("b"), py::arg("t"),
        "Expected cumulative failures by time t under the exponential NHPP");
    m.def(
        "intensity",
        [](double a, double b, double t) { return relia::intensity(relia::GoModel(a, b), t); },
        py::arg("a"), py::arg("b"), py::arg("t"));
    m.def(
        "cdf", [](double a, double b, double t) { return relia::cdf(relia::GoModel(a, b), t); },
        py::arg("a"), py::arg("b"), py::arg("t"));
    m.def(
        "quantile",
        [](double a, double b, double p) { return relia::quantile(relia::GoModel(a, b), p); },
        py::arg("a"), py::arg("b"), py::arg("p"));

    m.def(
        "cumulative_from_gaps",
        [](const std::vector<double>& gaps) {
            return relia::cumulative_from_gaps(relia::InterFailureTimes(gaps)).times();
        },
        py::arg("gaps"));
    m.def(
        "gaps_from_cumulative",
        [](const std::vector<double>& times) {
            return relia::gaps_from_cumulative(relia::FailureLog(times)).gaps();
        },
        py::arg("times"));
    m.def("embedded_dataset", []() { return relia::embedded_dataset().gaps(); },
          "The built-in 30-failure dataset as times between failures");

    m.def(
        "fit",
        [](const std::vector<double>& times, const std::string& format,
           const std::string& method, double tol, int max_iter) {
            const relia::FailureLog log = make_log(times, format);
            if (make_method(method) == relia::FitMethod::Mmle) {
                return estimate_dict(relia::fit_mmle(log));
            }
            return estimate_dict(relia::fit_mle(log, relia::FitOptions{tol, max_iter}));
        },
        py::arg("times"), py::arg("format") = "tbf", py::arg("method") = "mle",
        py::arg("tol") = 1e-10, py::arg("max_iter") = 200,
        "Estimate (a, b) from failure times; returns a dict of results");

    m.def(
        "control_limits",
        [](double a, double b, const std::vector<double>& probs) {
            return limits_dict(relia::control_limits(relia::GoModel(a, b), make_probs(probs)));
        },
        py::arg("a"), py::arg("b"),
        py::arg("probs") = std::vector<double>{0.00135, 0.5, 0.99865});

    m.def(
        "monitor",
        [](const std::vector<double>& times, const std::string& format,
           const std::string& method, const std::vector<double>& probs, py::object a,
           py::object b) { return report_dict(build_report(times, format, method, probs, a, b)); },
        py::arg("times"), py::arg("format") = "tbf", py::arg("method") = "mle",
        py::arg("probs") = std::vector<double>{0.00135, 0.5, 0.99865}, py::arg("a") = py::none(),
        py::arg("b") = py::none(),
        "Fit (or fix) a model, derive limits, and classify successive differences");

    m.def(
        "monitor_json",
        [](const std::vector<double>& times, const std::string& format,
           const std::string& method, const std::vector<double>& probs, py::object a,
           py::object b) {
            return relia::report_to_json(build_report(times, format, method, probs, a, b));
        },
        py::arg("times"), py::arg("format") = "tbf", py::arg("method") = "mle",
        py::arg("probs") = std::vector<double>{0.00135, 0.5, 0.99865}, py::arg("a") = py::none(),
        py::arg("b") = py::none());

    m.def(
        "chart_svg",
        [](const std::vector<double>& times, const std::string& format,
           const std::string& method, const std::vector<double>& probs, py::object a,
           py::object b, int width, int height, const std::string& y_scale,
           const std::string& title) {
            const relia::MonitorReport report = build_report(times, format, method, probs, a, b);
            relia::ChartConfig cfg;
            cfg.width = width;
            cfg.height = height;
            cfg.y_scale = y_scale == "linear" ? relia::YScale::Linear : relia::YScale::Log10;
            cfg.title = title;
            return relia::render_chart(report.points, report.limits, cfg);
        },
        py::arg("times"), py::arg("format") = "tbf", py::arg("method") = "mle",
        py::arg("probs") = std::vector<double>{0.00135, 0.5, 0.99865}, py::arg("a") = py::none(),
        py::arg("b") = py::none(), py::arg("width") = 900, py::arg("height") = 540,
        py::arg("y_scale") = "log10", py::arg("title") = "Mean value control chart");

    m.def(
        "simulate",
        [](double a, double b, double horizon, std::uint64_t seed, const std::string& method) {
            relia::SimMethod sm = relia::SimMethod::OrderStatistics;
            if (method == "thinning") {
                sm = relia::SimMethod::Thinning;
            } else if (method != "order_statistics") {
                throw relia::DataError("method must be 'order_statistics' or 'thinning'");
            }
            return relia::simulate_log(
                relia::SimulationSpec{relia::GoModel(a, b), horizon, seed, sm});
        },
        py::arg("a"), py::arg("b"), py::arg("horizon"), py::arg("seed") = 0,
        py::arg("method") = "order_statistics",
        "One synthetic failure log as cumulative event times");

    m.def("report_schema", &relia::report_schema);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args, const std::string& stdin_text) {
            std::istringstream in(stdin_text);
            std::ostringstream out, err;
            const int code = relia::cli::run(args, in, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), py::arg("stdin_text") = "",
        "Run the command-line interface in-process; returns (exit_code, stdout, stderr)");
}
