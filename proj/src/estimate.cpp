#include "relia/estimate.hpp"

#include <cmath>
#include <string>

#include "relia/errors.hpp"

namespace relia {

namespace {

double sum_times(const FailureLog& log) {
    double sum = 0.0;
    for (double s : log.times()) sum += s;
    return sum;
}

// h(z) = z e^{-z} / (1 - e^{-z}) = z / (e^z - 1); decreasing, h(0+) = 1.
double h_secant_basis(double z) {
    return z / std::expm1(z);
}

void check_b(double b) {
    if (!(b > 0.0) || !std::isfinite(b)) {
        throw DomainError("rate b must be positive and finite");
    }
}

std::optional<Matrix2> covariance_or_nothing(const GoModel& model, const FailureLog& log) {
    const Matrix2 info = observed_information(model, log);
    if (std::fabs(info.det()) < 1e-300) return std::nullopt;
    return asymptotic_covariance(info);
}

}  // namespace

Matrix2 multiply(const Matrix2& x, const Matrix2& y) {
    return Matrix2{x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
                   x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}

double log_likelihood(const GoModel& model, const FailureLog& log) {
    const double n = static_cast<double>(log.size());
    const double sn = log.back();
    return model.a * std::expm1(-model.b * sn) + n * (std::log(model.a) + std::log(model.b)) -
           model.b * sum_times(log);
}

Gradient2 log_likelihood_gradient(const GoModel& model, const FailureLog& log) {
    const double n = static_cast<double>(log.size());
    const double sn = log.back();
    Gradient2 g;
    g.da = n / model.a + std::expm1(-model.b * sn);
    g.db = n / model.b - model.a * sn * std::exp(-model.b * sn) - sum_times(log);
    return g;
}

double score_b(double b, const FailureLog& log) {
    check_b(b);
    const double n = static_cast<double>(log.size());
    const double sn = log.back();
    return sum_times(log) - n / b + n * sn / std::expm1(b * sn);
}

double score_b_derivative(double b, const FailureLog& log) {
    check_b(b);
    const double n = static_cast<double>(log.size());
    const double sn = log.back();
    const double em = std::expm1(b * sn);
    const double inv = 1.0 / em;
    return n / (b * b) - n * sn * sn * inv * (1.0 + inv);
}

EstimateResult fit_mle(const FailureLog& log, const FitOptions& opts) {
    const std::size_t n = log.size();
    if (n < 2) {
        throw DataError("maximum likelihood fit requires at least 2 failures (got " +
                        std::to_string(n) + ")");
    }
    const double sum = sum_times(log);
    const double sn = log.back();
    const double mean = sum / static_cast<double>(n);
    if (!(mean < 0.5 * sn)) {
        throw EstimationError(
            "no finite MLE: the mean cumulative failure time must lie below half the final "
            "time, but mean(s_k) = " +
            std::to_string(mean) + " and s_n / 2 = " + std::to_string(0.5 * sn));
    }

    int iterations = 0;
    double lo = 1e-8;
    double hi = 1e-1;
    while (score_b(lo, log) > 0.0) {
        lo /= 8.0;
        ++iterations;
        if (lo < 1e-290 || iterations > opts.max_iter) {
            throw EstimationError("maximum likelihood fit failed to bracket the score root", lo,
                                  hi);
        }
    }
    while (score_b(hi, log) < 0.0) {
        hi *= 8.0;
        ++iterations;
        if (!std::isfinite(hi) || iterations > opts.max_iter) {
            throw EstimationError("maximum likelihood fit failed to bracket the score root", lo,
                                  hi);
        }
    }

    double mid = 0.5 * (lo + hi);
    while (hi - lo > 1e-13 * mid) {
        if (++iterations > opts.max_iter) {
            throw EstimationError("maximum likelihood fit did not converge within " +
                                      std::to_string(opts.max_iter) + " iterations",
                                  lo, hi);
        }
        if (score_b(mid, log) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
    }

    double b = mid;
    const double slope_at_root = score_b_derivative(b, log);
    if (std::isfinite(slope_at_root) && slope_at_root > 0.0) {
        const double polished = b - score_b(b, log) / slope_at_root;
        if (std::isfinite(polished) && polished > 0.0) b = polished;
    }

    const double residual = score_b(b, log);
    const double tol_abs = opts.tol * (1.0 + std::fabs(sum));
    if (!(std::fabs(residual) <= tol_abs)) {
        throw EstimationError("maximum likelihood fit did not reach the requested tolerance", lo,
                              hi);
    }

    const double a = static_cast<double>(n) / -std::expm1(-b * sn);
    EstimateResult result{GoModel(a, b), FitMethod::Mle, iterations, true, residual,
                          std::nullopt};
    result.covariance = covariance_or_nothing(result.model, log);
    return result;
}

LinearizationConstants mmle_constants(std::size_t n) {
    if (n < 2) throw DomainError("linearization constants require a sample size of at least 2");
    const double nn = static_cast<double>(n);
    const double q = 1.0 / (nn + 1.0);
    const double p = 1.0 - q;
    const double sd = std::sqrt(p * q / (nn + 2.0));
    const double z_lo = -std::log1p(-(p - sd));
    const double z_hi = -std::log1p(-(p + sd));
    const double slope = (h_secant_basis(z_hi) - h_secant_basis(z_lo)) / (z_hi - z_lo);
    const double intercept = h_secant_basis(z_lo) - slope * z_lo;
    return LinearizationConstants{n, p, z_lo, z_hi, slope, intercept};
}

EstimateResult fit_mmle(const FailureLog& log) {
    const std::size_t n = log.size();
    if (n < 2) {
        throw DataError("modified maximum likelihood fit requires at least 2 failures (got " +
                        std::to_string(n) + ")");
    }
    const LinearizationConstants c = mmle_constants(n);
    const double sn = log.back();
    const double mean = sum_times(log) / static_cast<double>(n);
    const double denom = mean + c.slope * sn;
    if (!(denom > 0.0)) {
        throw EstimationError(
            "linearization out of range: mean(s_k) + slope * s_n = " + std::to_string(denom) +
            " is not positive");
    }
    const double b = (1.0 - c.intercept) / denom;
    const double a = static_cast<double>(n) / -std::expm1(-b * sn);
    EstimateResult result{GoModel(a, b), FitMethod::Mmle, 0, true, std::nullopt, std::nullopt};
    result.covariance = covariance_or_nothing(result.model, log);
    return result;
}

Matrix2 observed_information(const GoModel& model, const FailureLog& log) {
    const double n = static_cast<double>(log.size());
    const double sn = log.back();
    const double decay = std::exp(-model.b * sn);
    const double off = sn * decay;
    return Matrix2{n / (model.a * model.a), off, off,
                   n / (model.b * model.b) - model.a * sn * sn * decay};
}

Matrix2 asymptotic_covariance(const Matrix2& info) {
    const double det = info.det();
    if (std::fabs(det) < 1e-300) {
        throw DomainError("information matrix is singular; covariance is undefined");
    }
    return Matrix2{info.a22 / det, -info.a12 / det, -info.a21 / det, info.a11 / det};
}

}  // namespace relia
