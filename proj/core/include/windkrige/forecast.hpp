#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "windkrige/dates.hpp"
#include "windkrige/series.hpp"
#include "windkrige/temporal.hpp"

namespace windkrige {

// One day-ahead forecast with its 95% interval; observed is NaN when the
// site had no usable measurement that day.
struct ForecastRecord {
    std::string site_id;
    Date date;
    double point_mps = 0.0;
    double pi_low_mps = 0.0;
    double pi_high_mps = 0.0;
    double observed_mps = 0.0;
};

// A target site's identity plus its height-scaled log history, aligned to
// the study epoch (which must match the parameters' epoch).
struct SiteHistory {
    std::string id;
    GeoPoint location;
    DailySeries log_history;
};

// Rolling one-day-ahead forecasts for the given dates, using the site's own
// observed history as AR lags. Dates whose lags are missing are an error.
std::vector<ForecastRecord> predict_site(const TemporalParams& p, const DailySeries& log_history,
                                         std::span<const Date> dates, std::string site_id);

// Forecasts every date in the history whose two lags are available; dates
// with missing lags are skipped rather than raised.
std::vector<ForecastRecord> rolling_forecasts(const TemporalParams& p, const SiteHistory& site);

// Persistence baseline: tomorrow equals today. One (date, point) per day of
// the raw history that has the previous day present.
std::vector<std::pair<Date, double>> persistence_forecast(const DailySeries& raw_history);

// Mean absolute percentage error; actual must be positive elementwise.
double mape(std::span<const double> predicted, std::span<const double> actual);

struct ErrorMoments {
    double mean = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;  // raw fourth standardized moment, ~3 for normal
};

// Population moments; needs n >= 4 and nonzero variance.
ErrorMoments error_moments(std::span<const double> errors);

// Percent of observed values outside [pi_low, pi_high] (bounds inclusive).
// Every record must carry an observation.
double pi_coverage_outside_pct(std::span<const ForecastRecord> records);

struct BenchmarkRow {
    std::string site_id;
    double mean = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
    double pct_outside_pi = 0.0;
};

struct BenchmarkReport {
    std::vector<BenchmarkRow> in_sample;       // forecast dates <= split
    std::vector<BenchmarkRow> out_of_sample;   // forecast dates > split
    std::vector<std::string> warnings;         // sites/periods skipped and why
};

// Builds per-site, per-period benchmark rows from forecast records: the
// first four moments of the log-scale errors and the share outside the 95%
// PI. Records without an observation are left out of the statistics; a
// site/period without enough of them is skipped with a warning.
BenchmarkReport benchmark_from_records(std::span<const ForecastRecord> records, Date split_date);

// Full benchmark: rolling forecasts at each site from its kriged parameters,
// split in/out of sample at split_date.
BenchmarkReport benchmark_report(std::span<const TemporalParams> kriged_params,
                                 std::span<const SiteHistory> sites, Date split_date);

}  // namespace windkrige
