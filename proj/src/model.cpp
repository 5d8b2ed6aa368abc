#include "relia/model.hpp"

#include <cmath>
#include <string>

#include "relia/errors.hpp"

namespace relia {

namespace {

void check_time(double t) {
    if (!(t >= 0.0)) throw DomainError("time must be nonnegative (got " + std::to_string(t) + ")");
}

}  // namespace

GoModel::GoModel(double a_, double b_) : a(a_), b(b_) {
    if (!std::isfinite(a) || a <= 0.0) {
        throw DomainError("parameter a must be positive and finite");
    }
    if (!std::isfinite(b) || b <= 0.0) {
        throw DomainError("parameter b must be positive and finite");
    }
}

double mean_value(const GoModel& model, double t) {
    check_time(t);
    return -model.a * std::expm1(-model.b * t);
}

double intensity(const GoModel& model, double t) {
    check_time(t);
    return model.a * model.b * std::exp(-model.b * t);
}

double cdf(const GoModel& model, double t) {
    check_time(t);
    return -std::expm1(-model.b * t);
}

double quantile(const GoModel& model, double p) {
    if (!(p >= 0.0) || p >= 1.0) {
        throw DomainError("probability must lie in [0, 1) (got " + std::to_string(p) + ")");
    }
    return -std::log1p(-p) / model.b;
}

}  // namespace relia
