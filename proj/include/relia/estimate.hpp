#pragma once

#include <cstddef>
#include <optional>

#include "relia/dataset.hpp"
#include "relia/model.hpp"

namespace relia {

enum class FitMethod { Mle, Mmle };

struct Matrix2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 0.0;

    double det() const { return a11 * a22 - a12 * a21; }
};

Matrix2 multiply(const Matrix2& x, const Matrix2& y);

struct EstimateResult {
    GoModel model;
    FitMethod method;
    int iterations = 0;
    bool converged = false;
    std::optional<double> score_residual;   // g(b_hat), MLE only
    std::optional<Matrix2> covariance;      // asymptotic var/cov of (a_hat, b_hat)
};

// Secant line through h(z) = z e^{-z} / (1 - e^{-z}) at two data-free points
// chosen from the distribution of the largest of n uniform draws.
struct LinearizationConstants {
    std::size_t n = 0;
    double p = 0.0;
    double z_lo = 0.0;
    double z_hi = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
};

// ln L = -a(1 - e^{-b s_n}) + n ln(a b) - b * sum(s_k).
double log_likelihood(const GoModel& model, const FailureLog& log);

// First partials of log_likelihood in (a, b); used by tests and the Newton
// polish. Returned as {d/da, d/db}.
struct Gradient2 {
    double da = 0.0;
    double db = 0.0;
};
Gradient2 log_likelihood_gradient(const GoModel& model, const FailureLog& log);

// The profile score in b after eliminating a:
// g(b) = sum(s_k) - n/b + n s_n e^{-b s_n} / (1 - e^{-b s_n}).
// Monotone increasing; its root is the MLE of b.
double score_b(double b, const FailureLog& log);

// d g / d b, used for the final Newton polish.
double score_b_derivative(double b, const FailureLog& log);

struct FitOptions {
    double tol = 1e-10;   // relative; accepted when |g(b)| <= tol * (1 + |sum s_k|)
    int max_iter = 200;
};

// Iterative fit: bracket expansion from [1e-8, 1e-1], bisection to relative
// width 1e-13, one Newton polish, then a_hat = n / (1 - e^{-b_hat s_n}).
// Requires n >= 2 and mean(s_k) < s_n / 2 (otherwise no finite MLE exists).
EstimateResult fit_mle(const FailureLog& log, const FitOptions& opts = {});

// Data-free secant constants for sample size n (n >= 2).
LinearizationConstants mmle_constants(std::size_t n);

// Closed-form fit: b_hat = (1 - intercept) / (mean(s_k) + slope * s_n), then
// the same expression for a_hat. Zero iterations, fully deterministic.
EstimateResult fit_mmle(const FailureLog& log);

// Negated second partials of log_likelihood at the supplied parameters:
// [[n/a^2, s_n e^{-b s_n}], [s_n e^{-b s_n}, n/b^2 - a s_n^2 e^{-b s_n}]].
Matrix2 observed_information(const GoModel& model, const FailureLog& log);

// Exact 2x2 inverse of the information matrix.
Matrix2 asymptotic_covariance(const Matrix2& info);

}  // namespace relia
