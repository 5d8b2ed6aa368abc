#include "relia/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>
#include <utility>

#include "decimal.hpp"
#include "relia/errors.hpp"

namespace relia {

namespace {

std::string shortest(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

void check_positive_finite(double v, std::size_t index, const char* what) {
    if (!std::isfinite(v)) {
        throw DataError(std::string(what) + " at position " + std::to_string(index + 1) +
                        " is not finite");
    }
    if (v <= 0.0) {
        throw DataError(std::string(what) + " at position " + std::to_string(index + 1) +
                        " must be positive (got " + shortest(v) + ")");
    }
}

}  // namespace

FailureLog::FailureLog(std::vector<double> times) : times_(std::move(times)) {
    if (times_.empty()) throw DataError("failure log must contain at least one time");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        check_positive_finite(times_[i], i, "cumulative time");
        if (i > 0 && times_[i] <= times_[i - 1]) {
            throw DataError("cumulative time at position " + std::to_string(i + 1) +
                            " does not increase (" + shortest(times_[i]) + " after " +
                            shortest(times_[i - 1]) + ")");
        }
    }
}

InterFailureTimes::InterFailureTimes(std::vector<double> gaps) : gaps_(std::move(gaps)) {
    if (gaps_.empty()) throw DataError("inter-failure data must contain at least one gap");
    for (std::size_t i = 0; i < gaps_.size(); ++i) {
        check_positive_finite(gaps_[i], i, "time between failures");
    }
}

FailureLog cumulative_from_gaps(const InterFailureTimes& gaps) {
    const auto& g = gaps.gaps();
    std::vector<double> out(g.size());

    bool exact = true;
    detail::Decimal running{0, 0};
    for (std::size_t i = 0; i < g.size() && exact; ++i) {
        auto d = detail::decimal_from_double(g[i]);
        if (!d) {
            exact = false;
            break;
        }
        auto next = detail::decimal_add(running, *d);
        if (!next) {
            exact = false;
            break;
        }
        running = *next;
        out[i] = detail::decimal_to_double(running);
    }
    if (!exact) {
        double sum = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            sum += g[i];
            out[i] = sum;
        }
    }
    return FailureLog(std::move(out));
}

InterFailureTimes gaps_from_cumulative(const FailureLog& log) {
    const auto& s = log.times();
    std::vector<double> out(s.size());

    bool exact = true;
    detail::Decimal prev{0, 0};
    for (std::size_t i = 0; i < s.size() && exact; ++i) {
        auto d = detail::decimal_from_double(s[i]);
        if (!d) {
            exact = false;
            break;
        }
        auto diff = detail::decimal_sub(*d, prev);
        if (!diff) {
            exact = false;
            break;
        }
        out[i] = detail::decimal_to_double(*diff);
        prev = *d;
    }
    if (!exact) {
        double last = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            out[i] = s[i] - last;
            last = s[i];
        }
    }
    return InterFailureTimes(std::move(out));
}

const char* format_name(DataFormat f) {
    return f == DataFormat::Tbf ? "tbf" : "cumulative";
}

FailureLog parse_failure_data(std::istream& in, DataFormat format) {
    std::vector<std::pair<double, int>> values;  // value, source line
    std::string line;
    int line_no = 0;
    bool header_window = true;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        std::string trimmed = line;
        const auto first = trimmed.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = trimmed.find_last_not_of(" \t");
        trimmed = trimmed.substr(first, last - first + 1);
        if (trimmed.empty() || trimmed[0] == '#') continue;

        if (header_window) {
            header_window = false;
            const std::string word = lower(trimmed);
            if (word == format_name(format)) continue;
            if (word == "tbf" || word == "cumulative") {
                throw DataError("line " + std::to_string(line_no) + ": header '" + trimmed +
                                "' does not match the requested format '" + format_name(format) +
                                "'");
            }
        }

        std::stringstream fields(trimmed);
        std::string token;
        while (std::getline(fields, token, ',')) {
            const auto b = token.find_first_not_of(" \t");
            if (b == std::string::npos) {
                throw DataError("line " + std::to_string(line_no) + ": empty field");
            }
            const auto e = token.find_last_not_of(" \t");
            token = token.substr(b, e - b + 1);

            double v = 0.0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (ec != std::errc() || ptr != token.data() + token.size()) {
                throw DataError("line " + std::to_string(line_no) + ": cannot parse '" + token +
                                "' as a number");
            }
            values.emplace_back(v, line_no);
        }
    }

    if (values.empty()) throw DataError("no data values found in input");

    const char* what =
        format == DataFormat::Tbf ? "time between failures" : "cumulative time";
    for (const auto& [v, ln] : values) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw DataError("line " + std::to_string(ln) + ": " + what +
                            " must be positive and finite (got " + shortest(v) + ")");
        }
    }

    std::vector<double> plain(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) plain[i] = values[i].first;

    if (format == DataFormat::Tbf) {
        return cumulative_from_gaps(InterFailureTimes(std::move(plain)));
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i].first <= values[i - 1].first) {
            throw DataError("line " + std::to_string(values[i].second) +
                            ": cumulative time does not increase (" + shortest(values[i].first) +
                            " after " + shortest(values[i - 1].first) + ")");
        }
    }
    return FailureLog(std::move(plain));
}

std::string serialize_failure_data(const std::vector<double>& values, DataFormat format,
                                   const SerializeOptions& opts) {
    std::string out;
    if (!opts.comment.empty()) {
        std::stringstream lines(opts.comment);
        std::string line;
        while (std::getline(lines, line)) {
            out += "# ";
            out += line;
            out += '\n';
        }
    }
    if (opts.header) {
        out += format_name(format);
        out += '\n';
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += opts.separator;
        out += shortest(values[i]);
    }
    if (!values.empty()) out += '\n';
    return out;
}

InterFailureTimes embedded_dataset() {
    return InterFailureTimes({30.02,  1.44, 22.47, 1.36,   3.43,  13.2,  5.15,  3.83, 21.0, 12.97,
                              0.47,   6.23, 3.39,  9.11,   2.18,  15.53, 25.72, 2.79, 1.92, 4.13,
                              70.47, 17.07, 3.99,  176.06, 81.07, 2.27,  15.63, 120.78, 30.81,
                              34.19});
}

}  // namespace relia
