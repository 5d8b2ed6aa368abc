#include "relia/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "relia/errors.hpp"

namespace relia {

namespace {

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Frame {
    double left, right, top, bottom;   // plot-area pixel edges
    double x_min, x_max;               // failure-number domain
    double y_min, y_max;               // value domain (log10 space when log scale)
    bool log_scale;

    double x(double index) const {
        return left + (index - x_min) / (x_max - x_min) * (right - left);
    }
    double y(double value) const {
        const double v = log_scale ? std::log10(value) : value;
        return bottom - (v - y_min) / (y_max - y_min) * (bottom - top);
    }
};

void line(std::string& svg, double x1, double y1, double x2, double y2, const char* style) {
    svg += "<line x1=\"" + fmt6(x1) + "\" y1=\"" + fmt6(y1) + "\" x2=\"" + fmt6(x2) +
           "\" y2=\"" + fmt6(y2) + "\" " + style + "/>\n";
}

void text(std::string& svg, double x, double y, const char* anchor, const std::string& body,
          const char* extra = "") {
    svg += "<text x=\"" + fmt6(x) + "\" y=\"" + fmt6(y) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"" + anchor + "\"" +
           extra + ">" + xml_escape(body) + "</text>\n";
}

}  // namespace

std::string render_chart(const std::vector<ChartPoint>& points, const ControlLimits& limits,
                         const ChartConfig& config) {
    if (config.width < 100 || config.height < 100) {
        throw DomainError("chart dimensions must be at least 100x100 pixels");
    }
    const bool log_scale = config.y_scale == YScale::Log10;
    if (log_scale) {
        for (const auto& pt : points) {
            if (!(pt.diff > 0.0)) {
                throw DomainError("log-scale chart requires strictly positive differences");
            }
        }
        if (!(limits.m_low > 0.0)) {
            throw DomainError("log-scale chart requires a positive lower limit");
        }
    }

    double v_min = limits.m_low;
    double v_max = limits.m_high;
    double i_max = 2.0;
    for (const auto& pt : points) {
        v_min = std::min(v_min, pt.diff);
        v_max = std::max(v_max, pt.diff);
        i_max = std::max(i_max, static_cast<double>(pt.index));
    }

    Frame f;
    f.left = 64.0;
    f.right = static_cast<double>(config.width) - 18.0;
    f.top = 42.0;
    f.bottom = static_cast<double>(config.height) - 46.0;
    f.x_min = 0.0;
    f.x_max = i_max + 1.0;
    f.log_scale = log_scale;
    if (log_scale) {
        f.y_min = std::log10(v_min) - 0.25;
        f.y_max = std::log10(v_max) + 0.25;
    } else {
        const double pad = 0.06 * (v_max - v_min) + 1e-12;
        f.y_min = std::min(0.0, v_min - pad);
        f.y_max = v_max + pad;
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(config.width) +
           "\" height=\"" + std::to_string(config.height) + "\" viewBox=\"0 0 " +
           std::to_string(config.width) + " " + std::to_string(config.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    if (config.show_labels && !config.title.empty()) {
        text(svg, 0.5 * config.width, 22.0, "middle", config.title,
             " font-size=\"15\" font-weight=\"bold\"");
    }

    svg += "<rect x=\"" + fmt6(f.left) + "\" y=\"" + fmt6(f.top) + "\" width=\"" +
           fmt6(f.right - f.left) + "\" height=\"" + fmt6(f.bottom - f.top) +
           "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    struct Limit {
        double value;
        const char* name;
        const char* style;
    };
    const Limit rails[3] = {
        {limits.m_high, "UCL",
         "stroke=\"#b23b3b\" stroke-width=\"1\" stroke-dasharray=\"6 3\""},
        {limits.m_center, "CL", "stroke=\"#3b7a3b\" stroke-width=\"1\""},
        {limits.m_low, "LCL",
         "stroke=\"#b23b3b\" stroke-width=\"1\" stroke-dasharray=\"6 3\""},
    };
    for (const auto& rail : rails) {
        const double y = f.y(rail.value);
        line(svg, f.left, y, f.right, y, rail.style);
        if (config.show_labels) {
            text(svg, f.left - 6.0, y + 4.0, "end",
                 std::string(rail.name) + " " + fmt6(rail.value));
        }
    }

    if (config.show_labels) {
        const int step = i_max > 40.0 ? 10 : 5;
        for (int k = step; k <= static_cast<int>(i_max); k += step) {
            const double x = f.x(static_cast<double>(k));
            line(svg, x, f.bottom, x, f.bottom + 4.0, "stroke=\"#333333\" stroke-width=\"1\"");
            text(svg, x, f.bottom + 16.0, "middle", std::to_string(k));
        }
        text(svg, 0.5 * (f.left + f.right), static_cast<double>(config.height) - 10.0, "middle",
             "Failure number");
        text(svg, 16.0, 0.5 * (f.top + f.bottom), "middle",
             "Successive difference of mean value",
             (" transform=\"rotate(-90 16 " + fmt6(0.5 * (f.top + f.bottom)) + ")\"").c_str());
    }

    for (const auto& pt : points) {
        const double x = f.x(static_cast<double>(pt.index));
        const double y = f.y(pt.diff);
        if (pt.signal == Signal::Alarm) {
            svg += "<circle class=\"alarm\" cx=\"" + fmt6(x) + "\" cy=\"" + fmt6(y) +
                   "\" r=\"4.5\" fill=\"#d03030\" stroke=\"#7a1515\" stroke-width=\"1\"/>\n";
            if (config.show_labels) {
                text(svg, x, y + 16.0, "middle", std::to_string(pt.index),
                     " fill=\"#7a1515\" font-weight=\"bold\"");
            }
        } else if (pt.signal == Signal::AboveUpper) {
            svg += "<circle class=\"above\" cx=\"" + fmt6(x) + "\" cy=\"" + fmt6(y) +
                   "\" r=\"3.5\" fill=\"#e0a030\" stroke=\"#7a5a15\" stroke-width=\"1\"/>\n";
        } else {
            svg += "<circle class=\"point\" cx=\"" + fmt6(x) + "\" cy=\"" + fmt6(y) +
                   "\" r=\"3\" fill=\"#2b6cb0\"/>\n";
        }
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace relia
