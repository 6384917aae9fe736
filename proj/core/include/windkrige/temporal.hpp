#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "windkrige/dates.hpp"
#include "windkrige/series.hpp"

namespace windkrige {

inline constexpr double kDaysPerYear = 365.25;

// Per-site temporal model: seasonal mean (truncated Fourier series), AR(2)
// on the deseasonalized residual, seasonal innovation variance. The day
// index t counts from epoch_date, which every site in a study shares so that
// the Fourier phases are spatially comparable.
struct TemporalParams {
    std::array<double, 13> a{};     // a0, then cos/sin pairs for harmonics 1..6
    std::array<double, 2> alpha{};  // AR(2) coefficients
    std::array<double, 3> b{};      // variance: b0 + b1 cos + b2 sin (annual period)
    Date epoch_date;

    static constexpr int kParamCount = 18;
    double param(int index) const;
    void set_param(int index, double value);
    static const std::array<std::string, kParamCount>& param_names();
};

// AR(2) stationarity: roots of 1 - alpha1 z - alpha2 z^2 outside the unit circle.
bool ar_stationary(const TemporalParams& p);

// Seasonal variance positive over a whole period, checked on a dense t grid.
bool variance_positive(const TemporalParams& p);

// Seasonal mean S(t); defined for real-valued t.
double eval_seasonal(const TemporalParams& p, double t);

// Seasonal innovation variance sigma^2(t) = b0 + b1 cos(2 pi t / 365.25) + b2 sin(...).
double eval_variance(const TemporalParams& p, double t);

// OLS of the log series on {1, cos(2 pi i t/365.25), sin(...)}, i = 1..6,
// with t = index into the series. Needs >= 27 points and full column rank.
std::array<double, 13> fit_seasonal(const DailySeries& log_series);

// OLS of x(t) on (x(t-1), x(t-2)) with no intercept; needs >= 100 points.
std::array<double, 2> fit_ar2(std::span<const double> x);

// OLS of r(t)^2 on {1, cos, sin} where residuals[j] sits at day index
// first_day_index + j. If the fitted curve dips <= 0 anywhere in a period,
// (b1, b2) shrink radially until the minimum is 5% of b0.
std::array<double, 3> fit_seasonal_variance(std::span<const double> residuals,
                                            std::int64_t first_day_index);

// The positivity shrinkage applied by fit_seasonal_variance, exposed because
// kriged variance coefficients need the same treatment.
void shrink_variance(std::array<double, 3>& b);

struct FitReport {
    TemporalParams params;
    std::vector<double> residuals;  // standardized innovations, length N - 2
    double ks_statistic = 0.0;
    bool ks_reject_5pct = false;
    double aic = 0.0;
};

// Full staged fit: seasonal -> deseasonalize -> AR(2) -> seasonal variance ->
// standardized residuals, plus the KS normality check and AIC.
FitReport fit_temporal_model(const DailySeries& log_series);

// Sample autocorrelations with divisor N; out[0] == 1.
std::vector<double> acf(std::span<const double> x, int max_lag);

// Partial autocorrelations via Durbin-Levinson; out[0] == 1.
std::vector<double> pacf(std::span<const double> x, int max_lag);

struct KsResult {
    double statistic = 0.0;
    bool reject_5pct = false;
};

// One-sample Kolmogorov-Smirnov against the standard normal; rejects at the
// 5% level when D > 1.358/sqrt(n). Needs n >= 30.
KsResult ks_test_normal(std::span<const double> eps);

double normal_cdf(double x);

// AIC = 2k - 2 log L.
double aic_from_loglik(double log_likelihood, int n_params);

// Gaussian log-likelihood of AR residuals under the seasonal variance; the
// residuals are indexed from first_day_index like fit_seasonal_variance.
double seasonal_gaussian_loglik(const TemporalParams& p, std::span<const double> residuals,
                                std::int64_t first_day_index);

struct DayAheadForecast {
    double point_mps = 0.0;
    double pi_low_mps = 0.0;
    double pi_high_mps = 0.0;
};

// One-day-ahead forecast from the log values at days t and t-1; the 95%
// interval is Gaussian on the log scale and exponentiated.
DayAheadForecast forecast_one_day(const TemporalParams& p, double w_t, double w_tm1,
                                  std::int64_t t);

}  // namespace windkrige
