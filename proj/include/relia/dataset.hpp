#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace relia {

// Strictly increasing, strictly positive cumulative failure times.
class FailureLog {
public:
    explicit FailureLog(std::vector<double> times);

    const std::vector<double>& times() const { return times_; }
    std::size_t size() const { return times_.size(); }
    double back() const { return times_.back(); }
    double operator[](std::size_t i) const { return times_[i]; }

private:
    std::vector<double> times_;
};

// Strictly positive times between consecutive failures.
class InterFailureTimes {
public:
    explicit InterFailureTimes(std::vector<double> gaps);

    const std::vector<double>& gaps() const { return gaps_; }
    std::size_t size() const { return gaps_.size(); }
    double operator[](std::size_t i) const { return gaps_[i]; }

private:
    std::vector<double> gaps_;
};

// Conversions between the two representations. Partial sums and differences
// are carried out in exact decimal arithmetic when the inputs permit, so that
// gaps -> cumulative -> gaps reproduces the original doubles bit for bit.
FailureLog cumulative_from_gaps(const InterFailureTimes& gaps);
InterFailureTimes gaps_from_cumulative(const FailureLog& log);

enum class DataFormat { Tbf, Cumulative };

// Parses newline- or comma-separated numbers into a validated FailureLog,
// accumulating when `format` is Tbf. Lines starting with '#' are skipped. An
// optional leading header ("tbf" or "cumulative", any case) is accepted when
// it matches `format` and rejected with a clear message when it does not.
FailureLog parse_failure_data(std::istream& in, DataFormat format);

struct SerializeOptions {
    std::string comment;      // written as "# ..." lines before the data when nonempty
    bool header = false;      // write the format name as the first data line
    char separator = '\n';    // '\n' or ','
};

// Writes each value with the shortest decimal string that reparses to the
// identical double. A trailing newline is always present.
std::string serialize_failure_data(const std::vector<double>& values, DataFormat format,
                                   const SerializeOptions& opts = {});

// The 30-point times-between-failures data set compiled into the tool,
// available to the CLI under the name "xie2002".
InterFailureTimes embedded_dataset();

const char* format_name(DataFormat f);

}  // namespace relia
