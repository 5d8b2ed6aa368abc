#pragma once

namespace relia {

// Exponential NHPP with mean value m(t) = a(1 - e^{-bt}). `a` is the expected
// total number of faults, `b` the per-time detection rate.
struct GoModel {
    GoModel(double a, double b);

    double a;
    double b;
};

// Expected cumulative failures by time t: a(1 - e^{-bt}).
double mean_value(const GoModel& model, double t);

// Instantaneous detection rate: b(a - m(t)) = a b e^{-bt}.
double intensity(const GoModel& model, double t);

// Underlying exponential cdf F(t) = 1 - e^{-bt}; mean_value = a * cdf.
double cdf(const GoModel& model, double t);

// Inverse of cdf: t with F(t) = p. Requires 0 <= p < 1; quantile(0) = 0.
double quantile(const GoModel& model, double p);

}  // namespace relia
