#pragma once

#include <vector>

#include "windkrige/dates.hpp"
#include "windkrige/geo.hpp"
#include "windkrige/series.hpp"

namespace windkrige {

inline constexpr double kKnotsToMps = 0.514444;

// One gridded forecast run: released at 00/06/12/18 UTC, horizon values as
// (lead hour, eastward u, northward v) in m/s.
struct ForecastRelease {
    struct LeadValue {
        int lead_hour = 0;
        double u_mps = 0.0;
        double v_mps = 0.0;
    };

    GeoPoint site;
    UtcTime release_time;
    std::vector<LeadValue> horizon_values;
};

// A station wind observation. wind_speed_kt may be NaN when the report has
// no usable speed.
struct StationReport {
    GeoPoint site;
    UtcTime timestamp;
    double wind_speed_kt = 0.0;
};

double resultant_speed(double u_mps, double v_mps);

// knots -> m/s; negative input is an error.
double knots_to_mps(double knots);

// Log wind profile: scales a speed measured at height z1 to height z2 using
// roughness length z0. Requires z1, z2 > z0 > 0 and ws1 >= 0.
double scale_log_wind(double ws1, double z1, double z2, double z0);
double log_wind_factor(double z1, double z2, double z0);

// Builds the hourly speed series for one site by taking lead hours 0-5 of
// each 6-hourly release; hours not covered by any release come out missing.
// Duplicate releases for the same timestamp are an error.
HourlySeries splice_releases(std::vector<ForecastRelease> releases);

// Hourly series from station reports: knots -> m/s, reports averaged within
// each clock hour, hours without a usable report missing.
HourlySeries hourly_from_reports(const std::vector<StationReport>& reports);

struct DailyAverageResult {
    DailySeries series;          // Raw m/s; day missing (NaN) below the coverage threshold
    std::vector<int> hours_present;
};

// Daily means over UTC calendar days; a day with fewer than 18 of 24 hours
// present is marked missing.
DailyAverageResult daily_average(const HourlySeries& hourly);

// Multiplies a Raw series by the log-wind-profile factor from z_from to z_to.
DailySeries scale_to_height(const DailySeries& raw, double z_from, double z_to, double z0);

DailySeries log_transform(const DailySeries& raw);
DailySeries inverse_transform(const DailySeries& logged);

// Linearly interpolates missing runs of at most max_gap_days; longer runs
// (or runs touching either end) raise an error listing the gap ranges.
DailySeries fill_gaps(const DailySeries& s, int max_gap_days);

// Re-indexes the series so that index 0 falls on `epoch`. Data before the
// epoch is dropped; a series starting after the epoch is an error.
DailySeries align_to_epoch(const DailySeries& s, Date epoch);

// Restricts the series to [first, last], both inclusive.
DailySeries crop(const DailySeries& s, Date first, Date last);

}  // namespace windkrige
