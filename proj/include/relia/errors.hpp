#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace relia {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or unusable input data (bad file, nonpositive gaps, too few rows).
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

// Structurally valid input that violates a mathematical precondition
// (nonpositive parameters, probabilities outside (0,1), ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Estimation failed: no finite optimum exists, the linearization is out of
// range, or the solver did not converge. When a root search was involved the
// last bracket is carried along for diagnostics.
class EstimationError : public Error {
public:
    explicit EstimationError(const std::string& msg) : Error(msg) {}
    EstimationError(const std::string& msg, double lo, double hi)
        : Error(msg), bracket_(std::make_pair(lo, hi)) {}

    const std::optional<std::pair<double, double>>& bracket() const { return bracket_; }

private:
    std::optional<std::pair<double, double>> bracket_;
};

}  // namespace relia
