#include "windkrige/temporal.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace windkrige {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kKs5pctCoefficient = 1.358;
constexpr double kVarianceFloorFraction = 0.05;

double angular(double t, int harmonic = 1) { return kTwoPi * harmonic * t / kDaysPerYear; }

void require_log_series(const DailySeries& s) {
    if (s.transform != Transform::Log)
        throw std::invalid_argument("temporal fits operate on log-transformed series");
    if (has_gaps(s)) throw std::invalid_argument("series contains missing values; fill gaps first");
}

Eigen::MatrixXd seasonal_design(std::int64_t first_day_index, std::size_t n, int harmonics) {
    Eigen::MatrixXd design(n, 1 + 2 * harmonics);
    for (std::size_t row = 0; row < n; ++row) {
        const double t = static_cast<double>(first_day_index + static_cast<std::int64_t>(row));
        design(row, 0) = 1.0;
        for (int i = 1; i <= harmonics; ++i) {
            design(row, 2 * i - 1) = std::cos(angular(t, i));
            design(row, 2 * i) = std::sin(angular(t, i));
        }
    }
    return design;
}

}  // namespace

double TemporalParams::param(int index) const {
    if (index < 0 || index >= kParamCount) throw std::out_of_range("parameter index");
    if (index < 13) return a[static_cast<std::size_t>(index)];
    if (index < 15) return alpha[static_cast<std::size_t>(index - 13)];
    return b[static_cast<std::size_t>(index - 15)];
}

void TemporalParams::set_param(int index, double value) {
    if (index < 0 || index >= kParamCount) throw std::out_of_range("parameter index");
    if (index < 13)
        a[static_cast<std::size_t>(index)] = value;
    else if (index < 15)
        alpha[static_cast<std::size_t>(index - 13)] = value;
    else
        b[static_cast<std::size_t>(index - 15)] = value;
}

const std::array<std::string, TemporalParams::kParamCount>& TemporalParams::param_names() {
    static const std::array<std::string, kParamCount> names = {
        "a0", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11", "a12",
        "alpha1", "alpha2", "b0", "b1", "b2"};
    return names;
}

bool ar_stationary(const TemporalParams& p) {
    const double a1 = p.alpha[0];
    const double a2 = p.alpha[1];
    return (a2 + a1 < 1.0) && (a2 - a1 < 1.0) && (std::fabs(a2) < 1.0);
}

bool variance_positive(const TemporalParams& p) {
    for (int i = 0; i <= 1461; ++i) {
        if (!(eval_variance(p, 0.25 * i) > 0.0)) return false;
    }
    return true;
}

double eval_seasonal(const TemporalParams& p, double t) {
    double s = p.a[0];
    for (int i = 1; i <= 6; ++i) {
        s += p.a[static_cast<std::size_t>(2 * i - 1)] * std::cos(angular(t, i));
        s += p.a[static_cast<std::size_t>(2 * i)] * std::sin(angular(t, i));
    }
    return s;
}

double eval_variance(const TemporalParams& p, double t) {
    return p.b[0] + p.b[1] * std::cos(angular(t)) + p.b[2] * std::sin(angular(t));
}

std::array<double, 13> fit_seasonal(const DailySeries& log_series) {
    require_log_series(log_series);
    const std::size_t n = log_series.values.size();
    if (n < 27)
        throw std::invalid_argument("seasonal fit needs at least 27 points, got " + std::to_string(n));

    const Eigen::MatrixXd design = seasonal_design(0, n, 6);
    Eigen::Map<const Eigen::VectorXd> w(log_series.values.data(), static_cast<Eigen::Index>(n));

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < design.cols())
        throw std::runtime_error("rank-deficient seasonal design (series too short)");
    const Eigen::VectorXd coef = qr.solve(w);

    std::array<double, 13> out{};
    for (int i = 0; i < 13; ++i) out[static_cast<std::size_t>(i)] = coef(i);
    return out;
}

std::array<double, 2> fit_ar2(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 100) throw std::invalid_argument("AR(2) fit needs at least 100 points, got " + std::to_string(n));

    double s11 = 0.0, s22 = 0.0, s12 = 0.0, r1 = 0.0, r2 = 0.0;
    for (std::size_t t = 2; t < n; ++t) {
        const double x1 = x[t - 1];
        const double x2 = x[t - 2];
        s11 += x1 * x1;
        s22 += x2 * x2;
        s12 += x1 * x2;
        r1 += x[t] * x1;
        r2 += x[t] * x2;
    }
    const double det = s11 * s22 - s12 * s12;
    const double scale = std::max(s11, s22);
    if (!(det > 1e-12 * scale * scale))
        throw std::runtime_error("singular AR(2) design (constant or degenerate series)");

    return {(r1 * s22 - r2 * s12) / det, (r2 * s11 - r1 * s12) / det};
}

void shrink_variance(std::array<double, 3>& b) {
    const double amplitude = std::hypot(b[1], b[2]);
    if (amplitude <= 0.0) return;
    if (b[0] - amplitude > 0.0) return;  // never dips to zero, leave as fitted
    const double factor = (1.0 - kVarianceFloorFraction) * b[0] / amplitude;
    b[1] *= factor;
    b[2] *= factor;
}

std::array<double, 3> fit_seasonal_variance(std::span<const double> residuals,
                                            std::int64_t first_day_index) {
    const std::size_t n = residuals.size();
    if (n < 3) throw std::invalid_argument("seasonal variance fit needs at least 3 residuals");

    const Eigen::MatrixXd design = seasonal_design(first_day_index, n, 1);
    Eigen::VectorXd squared(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) squared(static_cast<Eigen::Index>(i)) = residuals[i] * residuals[i];

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < design.cols())
        throw std::runtime_error("rank-deficient seasonal variance design");
    const Eigen::VectorXd coef = qr.solve(squared);

    std::array<double, 3> b{coef(0), coef(1), coef(2)};
    if (!(b[0] > 0.0)) throw std::runtime_error("degenerate residuals: nonpositive base variance");
    shrink_variance(b);
    return b;
}

double seasonal_gaussian_loglik(const TemporalParams& p, std::span<const double> residuals,
                                std::int64_t first_day_index) {
    constexpr double kLogTwoPi = 1.8378770664093454836;
    double loglik = 0.0;
    for (std::size_t j = 0; j < residuals.size(); ++j) {
        const double s2 = eval_variance(p, static_cast<double>(first_day_index + static_cast<std::int64_t>(j)));
        if (!(s2 > 0.0)) throw std::runtime_error("nonpositive seasonal variance in likelihood");
        loglik += -0.5 * (kLogTwoPi + std::log(s2) + residuals[j] * residuals[j] / s2);
    }
    return loglik;
}

FitReport fit_temporal_model(const DailySeries& log_series) {
    require_log_series(log_series);
    const std::size_t n = log_series.values.size();

    FitReport report;
    report.params.epoch_date = log_series.epoch_date;
    report.params.a = fit_seasonal(log_series);

    std::vector<double> deseasonalized(n);
    double w_scale = 1.0;
    double x_scale = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        deseasonalized[t] =
            log_series.values[t] - eval_seasonal(report.params, static_cast<double>(t));
        w_scale = std::max(w_scale, std::fabs(log_series.values[t]));
        x_scale = std::max(x_scale, std::fabs(deseasonalized[t]));
    }
    // a numerically exact seasonal fit leaves nothing for the AR stage
    if (x_scale <= 1e-12 * w_scale)
        throw std::runtime_error("singular AR(2) design (seasonal mean explains the series exactly)");

    report.params.alpha = fit_ar2(deseasonalized);

    std::vector<double> ar_residuals(n - 2);
    for (std::size_t t = 2; t < n; ++t) {
        ar_residuals[t - 2] = deseasonalized[t] - report.params.alpha[0] * deseasonalized[t - 1] -
                              report.params.alpha[1] * deseasonalized[t - 2];
    }

    report.params.b = fit_seasonal_variance(ar_residuals, 2);

    report.residuals.resize(ar_residuals.size());
    for (std::size_t j = 0; j < ar_residuals.size(); ++j) {
        const double s2 = eval_variance(report.params, static_cast<double>(j + 2));
        report.residuals[j] = ar_residuals[j] / std::sqrt(s2);
    }

    const KsResult ks = ks_test_normal(report.residuals);
    report.ks_statistic = ks.statistic;
    report.ks_reject_5pct = ks.reject_5pct;
    report.aic = aic_from_loglik(seasonal_gaussian_loglik(report.params, ar_residuals, 2),
                                 TemporalParams::kParamCount);
    return report;
}

std::vector<double> acf(std::span<const double> x, int max_lag) {
    const std::size_t n = x.size();
    if (max_lag < 0) throw std::invalid_argument("max_lag must be non-negative");
    if (n <= static_cast<std::size_t>(max_lag))
        throw std::invalid_argument("series shorter than max_lag");

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);

    double c0 = 0.0;
    for (double v : x) c0 += (v - mean) * (v - mean);
    c0 /= static_cast<double>(n);
    if (!(c0 > 0.0)) throw std::runtime_error("zero-variance series");

    std::vector<double> out(static_cast<std::size_t>(max_lag) + 1);
    for (int k = 0; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = 0; t + static_cast<std::size_t>(k) < n; ++t)
            ck += (x[t] - mean) * (x[t + static_cast<std::size_t>(k)] - mean);
        out[static_cast<std::size_t>(k)] = ck / static_cast<double>(n) / c0;
    }
    return out;
}

std::vector<double> pacf(std::span<const double> x, int max_lag) {
    const std::vector<double> rho = acf(x, max_lag);
    std::vector<double> out(static_cast<std::size_t>(max_lag) + 1, 1.0);
    if (max_lag == 0) return out;

    std::vector<double> phi(static_cast<std::size_t>(max_lag) + 1, 0.0);
    std::vector<double> prev(phi);
    for (int k = 1; k <= max_lag; ++k) {
        double num = rho[static_cast<std::size_t>(k)];
        double den = 1.0;
        for (int j = 1; j < k; ++j) {
            num -= prev[static_cast<std::size_t>(j)] * rho[static_cast<std::size_t>(k - j)];
            den -= prev[static_cast<std::size_t>(j)] * rho[static_cast<std::size_t>(j)];
        }
        if (std::fabs(den) < 1e-12) throw std::runtime_error("Durbin-Levinson breakdown");
        const double phikk = num / den;
        phi[static_cast<std::size_t>(k)] = phikk;
        for (int j = 1; j < k; ++j) {
            phi[static_cast<std::size_t>(j)] =
                prev[static_cast<std::size_t>(j)] - phikk * prev[static_cast<std::size_t>(k - j)];
        }
        out[static_cast<std::size_t>(k)] = phikk;
        prev = phi;
    }
    return out;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

KsResult ks_test_normal(std::span<const double> eps) {
    const std::size_t n = eps.size();
    if (n < 30) throw std::invalid_argument("KS test needs at least 30 residuals");

    std::vector<double> sorted(eps.begin(), eps.end());
    std::sort(sorted.begin(), sorted.end());

    const double dn = static_cast<double>(n);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double cdf = normal_cdf(sorted[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / dn - cdf);
        d = std::max(d, cdf - static_cast<double>(i) / dn);
    }

    KsResult r;
    r.statistic = d;
    r.reject_5pct = d > kKs5pctCoefficient / std::sqrt(dn);
    return r;
}

double aic_from_loglik(double log_likelihood, int n_params) {
    return 2.0 * n_params - 2.0 * log_likelihood;
}

DayAheadForecast forecast_one_day(const TemporalParams& p, double w_t, double w_tm1,
                                  std::int64_t t) {
    if (!std::isfinite(w_t) || !std::isfinite(w_tm1))
        throw std::invalid_argument("non-finite log wind speed input");
    if (!ar_stationary(p)) throw std::invalid_argument("AR coefficients are not stationary");

    const double td = static_cast<double>(t);
    const double predicted = eval_seasonal(p, td + 1.0) +
                             p.alpha[0] * (w_t - eval_seasonal(p, td)) +
                             p.alpha[1] * (w_tm1 - eval_seasonal(p, td - 1.0));
    const double s2 = eval_variance(p, td + 1.0);
    if (!(s2 > 0.0)) throw std::runtime_error("nonpositive seasonal variance at forecast day");
    const double half_width = 1.96 * std::sqrt(s2);

    DayAheadForecast f;
    f.point_mps = std::exp(predicted);
    f.pi_low_mps = std::exp(predicted - half_width);
    f.pi_high_mps = std::exp(predicted + half_width);
    return f;
}

}  // namespace windkrige
