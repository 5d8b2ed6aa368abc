#include "relia/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "relia/chart.hpp"
#include "relia/dataset.hpp"
#include "relia/errors.hpp"
#include "relia/estimate.hpp"
#include "relia/model.hpp"
#include "relia/report.hpp"
#include "relia/simulate.hpp"
#include "relia/spc.hpp"

namespace relia::cli {

namespace {

constexpr const char* kEmbeddedName = "xie2002";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

bool color_allowed(std::ostream& out) {
    return &out == &std::cout && isatty(1) != 0 && std::getenv("NO_COLOR") == nullptr;
}

std::string slurp(const std::string& input, std::istream& in) {
    if (input == "-") {
        std::ostringstream text;
        text << in.rdbuf();
        return text.str();
    }
    std::ifstream file(input);
    if (!file) throw DataError("cannot open input file '" + input + "'");
    std::ostringstream text;
    text << file.rdbuf();
    return text.str();
}

DataFormat parse_format(const std::string& name) {
    return name == "cumulative" ? DataFormat::Cumulative : DataFormat::Tbf;
}

struct InputOpts {
    std::string input = "-";
    std::string format = "tbf";
};

struct ModelChoice {
    std::string method = "mle";
    double a = 0.0;
    double b = 0.0;
    double tol = 1e-10;
    int max_iter = 200;

    FitMethod fit_method() const { return method == "mmle" ? FitMethod::Mmle : FitMethod::Mle; }
    FitOptions fit_options() const { return FitOptions{tol, max_iter}; }
};

void add_input_options(CLI::App* cmd, InputOpts& io) {
    cmd->add_option("--input", io.input,
                    "Input file, '-' for standard input, or the name of an embedded dataset "
                    "(currently '" +
                        std::string(kEmbeddedName) + "')")
        ->capture_default_str();
    cmd->add_option("--format", io.format, "How input values are interpreted")
        ->check(CLI::IsMember({"tbf", "cumulative"}))
        ->capture_default_str();
}

void add_model_options(CLI::App* cmd, ModelChoice& mc, bool with_fixed) {
    auto* method = cmd->add_option("--method", mc.method, "Estimation method")
                       ->check(CLI::IsMember({"mle", "mmle"}))
                       ->capture_default_str();
    if (with_fixed) {
        auto* a_opt = cmd->add_option("--a", mc.a, "Fixed expected-total-faults parameter");
        auto* b_opt = cmd->add_option("--b", mc.b, "Fixed detection-rate parameter");
        a_opt->needs(b_opt);
        b_opt->needs(a_opt);
        a_opt->excludes(method);
    }
    cmd->add_option("--tol", mc.tol, "Relative score tolerance for the iterative fit")
        ->capture_default_str();
    cmd->add_option("--max-iter", mc.max_iter, "Iteration cap for the iterative fit")
        ->capture_default_str();
}

FailureLog load_log(const InputOpts& io, std::istream& in) {
    if (io.input == kEmbeddedName) return cumulative_from_gaps(embedded_dataset());
    const std::string text = slurp(io.input, in);
    std::istringstream stream(text);
    return parse_failure_data(stream, parse_format(io.format));
}

void write_output(const std::string& path, const std::string& body, std::ostream& out) {
    if (path.empty()) {
        out << body;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot open output file '" + path + "'");
    file << body;
    if (!file) throw DataError("failed while writing output file '" + path + "'");
}

Probabilities to_probs(const std::vector<double>& probs) {
    if (probs.empty()) return Probabilities{};
    return Probabilities{probs[0], probs[1], probs[2]};
}

std::string estimate_text(const EstimateResult& fit) {
    std::string out;
    out += "method: ";
    out += fit.method == FitMethod::Mle ? "mle" : "mmle";
    out += '\n';
    out += "a_hat: " + fmt(fit.model.a) + '\n';
    out += "b_hat: " + fmt(fit.model.b) + '\n';
    if (fit.covariance && fit.covariance->a11 >= 0.0 && fit.covariance->a22 >= 0.0) {
        out += "se_a: " + fmt(std::sqrt(fit.covariance->a11)) + '\n';
        out += "se_b: " + fmt(std::sqrt(fit.covariance->a22)) + '\n';
    }
    out += "iterations: " + std::to_string(fit.iterations) + '\n';
    out += std::string("converged: ") + (fit.converged ? "yes" : "no") + '\n';
    if (fit.score_residual) {
        out += "score_residual: " + fmt(*fit.score_residual) + '\n';
    }
    return out;
}

std::string limits_text(const ControlLimits& limits) {
    char buf[160];
    std::string out = "level        p              t              m\n";
    const struct {
        const char* name;
        double p, t, m;
    } rows[3] = {{"low", limits.p.low, limits.t_low, limits.m_low},
                 {"center", limits.p.center, limits.t_center, limits.m_center},
                 {"high", limits.p.high, limits.t_high, limits.m_high}};
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%-8s %-14s %-14s %s\n", row.name, fmt9(row.p).c_str(),
                      fmt9(row.t).c_str(), fmt9(row.m).c_str());
        out += buf;
    }
    return out;
}

std::string monitor_text(const MonitorReport& report, bool color) {
    std::string out;
    out += "method: " + report.method + '\n';
    out += "a_hat: " + fmt(report.model.a) + '\n';
    out += "b_hat: " + fmt(report.model.b) + '\n';
    out += "UCL: " + fmt(report.limits.m_high) + '\n';
    out += "CL: " + fmt(report.limits.m_center) + '\n';
    out += "LCL: " + fmt(report.limits.m_low) + '\n';
    out += " failure    cumulative          m(t)          diff  signal\n";

    const auto& times = report.log.times();
    char buf[200];
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double m = mean_value(report.model, times[i]);
        std::string diff;
        std::string signal;
        if (i < report.points.size()) {
            const auto& pt = report.points[i];
            diff = fmt9(pt.diff);
            if (pt.signal == Signal::Alarm) {
                signal = color ? "  \x1b[31mALARM\x1b[0m" : "  ALARM";
            } else if (pt.signal == Signal::AboveUpper) {
                signal = "  above-upper";
            }
        }
        std::snprintf(buf, sizeof(buf), "%8zu %13s %13s %13s%s\n", i + 1, fmt9(times[i]).c_str(),
                      fmt9(m).c_str(), diff.c_str(), signal.c_str());
        out += buf;
    }

    out += "alarms:";
    if (report.alarms.empty()) {
        out += " none";
    } else {
        for (std::size_t i = 0; i < report.alarms.size(); ++i) {
            out += (i == 0 ? " " : ", ") + std::to_string(report.alarms[i]);
        }
    }
    out += '\n';
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Reliability growth control charts for inter-failure-time data"};
    app.require_subcommand(1);

    InputOpts fit_io, limits_io, monitor_io, chart_io, convert_io;
    ModelChoice fit_mc, limits_mc, monitor_mc, chart_mc;
    std::vector<double> limits_probs, monitor_probs, chart_probs;
    std::string fit_emit = "text", limits_emit = "text", monitor_emit = "text";
    std::string fit_out, limits_out, monitor_out, chart_out, sim_out, convert_out;

    auto* fit_cmd = app.add_subcommand("fit", "Estimate model parameters from failure data");
    add_input_options(fit_cmd, fit_io);
    add_model_options(fit_cmd, fit_mc, false);
    fit_cmd->add_option("--emit", fit_emit, "Output form")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    fit_cmd->add_option("--output", fit_out, "Write to this file instead of standard output");

    auto* limits_cmd =
        app.add_subcommand("limits", "Derive control limits from a fitted or fixed model");
    add_input_options(limits_cmd, limits_io);
    add_model_options(limits_cmd, limits_mc, true);
    limits_cmd->add_option("--probs", limits_probs,
                           "Lower, center, and upper control probabilities")
        ->expected(3);
    limits_cmd->add_option("--emit", limits_emit, "Output form")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    limits_cmd->add_option("--output", limits_out,
                           "Write to this file instead of standard output");

    auto* monitor_cmd = app.add_subcommand(
        "monitor", "Classify successive mean-value differences against control limits");
    add_input_options(monitor_cmd, monitor_io);
    add_model_options(monitor_cmd, monitor_mc, true);
    monitor_cmd->add_option("--probs", monitor_probs,
                            "Lower, center, and upper control probabilities")
        ->expected(3);
    monitor_cmd->add_option("--emit", monitor_emit, "Output form")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    monitor_cmd->add_option("--output", monitor_out,
                            "Write to this file instead of standard output");

    auto* chart_cmd = app.add_subcommand("chart", "Render the control chart as SVG");
    add_input_options(chart_cmd, chart_io);
    add_model_options(chart_cmd, chart_mc, true);
    chart_cmd->add_option("--probs", chart_probs,
                          "Lower, center, and upper control probabilities")
        ->expected(3);
    ChartConfig chart_cfg;
    std::string chart_scale = "log10";
    bool chart_plain = false;
    chart_cmd->add_option("--width", chart_cfg.width, "Chart width in pixels")
        ->capture_default_str();
    chart_cmd->add_option("--height", chart_cfg.height, "Chart height in pixels")
        ->capture_default_str();
    chart_cmd->add_option("--y-scale", chart_scale, "Vertical scale")
        ->check(CLI::IsMember({"log10", "linear"}))
        ->capture_default_str();
    chart_cmd->add_option("--title", chart_cfg.title, "Chart title")->capture_default_str();
    chart_cmd->add_flag("--no-labels", chart_plain, "Suppress labels and axis text");
    chart_cmd->add_option("--output", chart_out, "Write to this file instead of standard output");

    auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic failure log");
    double sim_a = 0.0, sim_b = 0.0, sim_horizon = 0.0;
    std::uint64_t sim_seed = 0;
    std::string sim_generator = "order_statistics";
    std::string sim_format = "tbf";
    sim_cmd->add_option("--a", sim_a, "Expected total faults")->required();
    sim_cmd->add_option("--b", sim_b, "Detection rate")->required();
    sim_cmd->add_option("--horizon", sim_horizon, "Observation window length")->required();
    sim_cmd->add_option("--seed", sim_seed, "Random seed")->capture_default_str();
    sim_cmd->add_option("--generator", sim_generator, "Event generation method")
        ->check(CLI::IsMember({"order_statistics", "thinning"}))
        ->capture_default_str();
    sim_cmd->add_option("--format", sim_format, "Output representation")
        ->check(CLI::IsMember({"tbf", "cumulative"}))
        ->capture_default_str();
    sim_cmd->add_option("--output", sim_out, "Write to this file instead of standard output");

    auto* convert_cmd =
        app.add_subcommand("convert", "Convert between gap and cumulative representations");
    add_input_options(convert_cmd, convert_io);
    convert_cmd->add_option("--output", convert_out,
                            "Write to this file instead of standard output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        if (fit_cmd->parsed()) {
            const FailureLog log = load_log(fit_io, in);
            const EstimateResult fit = fit_mc.fit_method() == FitMethod::Mmle
                                           ? fit_mmle(log)
                                           : fit_mle(log, fit_mc.fit_options());
            write_output(fit_out, fit_emit == "json" ? estimate_to_json(fit) : estimate_text(fit),
                         out);
        } else if (limits_cmd->parsed()) {
            GoModel model =
                limits_cmd->count("--a") > 0
                    ? GoModel(limits_mc.a, limits_mc.b)
                    : (limits_mc.fit_method() == FitMethod::Mmle
                           ? fit_mmle(load_log(limits_io, in))
                           : fit_mle(load_log(limits_io, in), limits_mc.fit_options()))
                          .model;
            const ControlLimits limits = control_limits(model, to_probs(limits_probs));
            write_output(limits_out,
                         limits_emit == "json" ? limits_to_json(limits) : limits_text(limits),
                         out);
        } else if (monitor_cmd->parsed()) {
            const FailureLog log = load_log(monitor_io, in);
            const MonitorReport report =
                monitor_cmd->count("--a") > 0
                    ? monitor(log, GoModel(monitor_mc.a, monitor_mc.b), to_probs(monitor_probs))
                    : monitor(log, monitor_mc.fit_method(), to_probs(monitor_probs),
                              monitor_mc.fit_options());
            write_output(monitor_out,
                         monitor_emit == "json" ? report_to_json(report)
                                                : monitor_text(report, color_allowed(out)),
                         out);
        } else if (chart_cmd->parsed()) {
            const FailureLog log = load_log(chart_io, in);
            const MonitorReport report =
                chart_cmd->count("--a") > 0
                    ? monitor(log, GoModel(chart_mc.a, chart_mc.b), to_probs(chart_probs))
                    : monitor(log, chart_mc.fit_method(), to_probs(chart_probs),
                              chart_mc.fit_options());
            chart_cfg.y_scale = chart_scale == "linear" ? YScale::Linear : YScale::Log10;
            chart_cfg.show_labels = !chart_plain;
            write_output(chart_out, render_chart(report.points, report.limits, chart_cfg), out);
        } else if (sim_cmd->parsed()) {
            SimulationSpec spec{GoModel(sim_a, sim_b), sim_horizon, sim_seed,
                                sim_generator == "thinning" ? SimMethod::Thinning
                                                            : SimMethod::OrderStatistics};
            const std::vector<double> times = simulate_log(spec);
            SerializeOptions so;
            so.comment = "simulated failure log\nmodel: a=" + fmt(sim_a) + " b=" + fmt(sim_b) +
                         "\nhorizon: " + fmt(sim_horizon) + "\nseed: " + std::to_string(sim_seed) +
                         "\ngenerator: " + sim_generator + " (xoshiro256++ stream)\nformat: " +
                         sim_format;
            std::vector<double> values = times;
            if (sim_format == "tbf" && !times.empty()) {
                values = gaps_from_cumulative(FailureLog(times)).gaps();
            }
            write_output(sim_out, serialize_failure_data(values, parse_format(sim_format), so),
                         out);
        } else if (convert_cmd->parsed()) {
            const DataFormat from = parse_format(convert_io.format);
            std::string text;
            if (convert_io.input == kEmbeddedName) {
                text = serialize_failure_data(embedded_dataset().gaps(), DataFormat::Tbf);
            } else {
                text = slurp(convert_io.input, in);
            }
            std::istringstream stream(text);
            const FailureLog log = parse_failure_data(stream, from);
            SerializeOptions so;
            so.separator = text.find(',') != std::string::npos ? ',' : '\n';
            std::string body;
            if (from == DataFormat::Tbf) {
                body = serialize_failure_data(log.times(), DataFormat::Cumulative, so);
            } else {
                body = serialize_failure_data(gaps_from_cumulative(log).gaps(), DataFormat::Tbf,
                                              so);
            }
            write_output(convert_out, body, out);
        }
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const EstimationError& e) {
        err << "error: " << e.what() << '\n';
        if (e.bracket()) {
            err << "  last bracket: [" << fmt(e.bracket()->first) << ", "
                << fmt(e.bracket()->second) << "]\n";
        }
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace relia::cli
