#include "windkrige/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace windkrige {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kLeadsPerRelease = 6;
constexpr int kMinHoursPerDay = 18;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void check_same_site(const GeoPoint& expected, const GeoPoint& got, const char* what) {
    if (!(expected == got))
        throw std::invalid_argument(std::string(what) + " mix multiple sites; ingest one site at a time");
}

}  // namespace

double resultant_speed(double u_mps, double v_mps) {
    if (!std::isfinite(u_mps) || !std::isfinite(v_mps))
        throw std::invalid_argument("non-finite wind component");
    return std::hypot(u_mps, v_mps);
}

double knots_to_mps(double knots) {
    if (knots < 0.0) throw std::invalid_argument("negative wind speed in knots: " + std::to_string(knots));
    return knots * kKnotsToMps;
}

double log_wind_factor(double z1, double z2, double z0) {
    if (!(z0 > 0.0)) throw std::invalid_argument("roughness length must be positive");
    if (!(z1 > z0) || !(z2 > z0))
        throw std::invalid_argument("log wind profile undefined: heights must exceed the roughness length");
    return std::log(z2 / z0) / std::log(z1 / z0);
}

double scale_log_wind(double ws1, double z1, double z2, double z0) {
    const double factor = log_wind_factor(z1, z2, z0);
    if (!(ws1 >= 0.0)) throw std::invalid_argument("wind speed must be non-negative");
    return ws1 * factor;
}

HourlySeries splice_releases(std::vector<ForecastRelease> releases) {
    if (releases.empty()) throw std::invalid_argument("no forecast releases");

    std::stable_sort(releases.begin(), releases.end(),
                     [](const ForecastRelease& a, const ForecastRelease& b) {
                         return a.release_time < b.release_time;
                     });
    for (std::size_t i = 1; i < releases.size(); ++i) {
        if (releases[i].release_time == releases[i - 1].release_time)
            throw std::runtime_error("duplicate forecast release at " +
                                     releases[i].release_time.to_string());
    }

    const GeoPoint site = releases.front().site;
    for (const auto& r : releases) {
        check_same_site(site, r.site, "forecast releases");
        if (r.release_time.hour % 6 != 0 || r.release_time.minute != 0 || r.release_time.second != 0)
            throw std::invalid_argument("release time not on a 6-hour cycle: " +
                                        r.release_time.to_string());
        int prev = -1;
        for (const auto& lv : r.horizon_values) {
            if (lv.lead_hour <= prev)
                throw std::invalid_argument("lead hours not strictly increasing in release " +
                                            r.release_time.to_string());
            prev = lv.lead_hour;
        }
    }

    const std::int64_t start_hour = releases.front().release_time.hours_since_epoch();
    const std::int64_t end_hour = releases.back().release_time.hours_since_epoch() + kLeadsPerRelease;

    HourlySeries out;
    out.site = site;
    out.start = releases.front().release_time;
    out.values.assign(static_cast<std::size_t>(end_hour - start_hour), kNaN);

    for (const auto& r : releases) {
        const std::int64_t base = r.release_time.hours_since_epoch() - start_hour;
        bool seen[kLeadsPerRelease] = {};
        for (const auto& lv : r.horizon_values) {
            if (lv.lead_hour < 0 || lv.lead_hour >= kLeadsPerRelease) continue;
            out.values[static_cast<std::size_t>(base + lv.lead_hour)] =
                resultant_speed(lv.u_mps, lv.v_mps);
            seen[lv.lead_hour] = true;
        }
        for (int lead = 0; lead < kLeadsPerRelease; ++lead) {
            if (!seen[lead])
                throw std::invalid_argument("release " + r.release_time.to_string() +
                                            " missing lead hour " + std::to_string(lead));
        }
    }
    return out;
}

HourlySeries hourly_from_reports(const std::vector<StationReport>& reports) {
    if (reports.empty()) throw std::invalid_argument("no station reports");

    const GeoPoint site = reports.front().site;
    std::map<std::int64_t, std::pair<double, int>> sums;  // hour -> (sum m/s, count)
    for (const auto& r : reports) {
        check_same_site(site, r.site, "station reports");
        if (std::isnan(r.wind_speed_kt)) continue;
        auto& slot = sums[r.timestamp.hours_since_epoch()];
        slot.first += knots_to_mps(r.wind_speed_kt);
        slot.second += 1;
    }
    if (sums.empty()) throw std::invalid_argument("station reports carry no usable wind speeds");

    const std::int64_t start_hour = sums.begin()->first;
    const std::int64_t end_hour = sums.rbegin()->first + 1;

    HourlySeries out;
    out.site = site;
    out.start.date = Date::from_serial(floor_div(start_hour, 24));
    out.start.hour = static_cast<int>(start_hour - out.start.date.serial() * 24);
    out.values.assign(static_cast<std::size_t>(end_hour - start_hour), kNaN);
    for (const auto& [hour, slot] : sums)
        out.values[static_cast<std::size_t>(hour - start_hour)] = slot.first / slot.second;
    return out;
}

DailyAverageResult daily_average(const HourlySeries& hourly) {
    if (hourly.values.empty()) throw std::invalid_argument("empty hourly series");
    if (hourly.start.minute != 0 || hourly.start.second != 0)
        throw std::invalid_argument("hourly series must be aligned to whole hours");

    const std::int64_t start_hour = hourly.start.hours_since_epoch();
    const std::int64_t end_hour = start_hour + static_cast<std::int64_t>(hourly.values.size());
    const std::int64_t first_day = floor_div(start_hour, 24);
    const std::int64_t last_day = floor_div(end_hour - 1, 24);

    DailyAverageResult out;
    out.series.site = hourly.site;
    out.series.epoch_date = Date::from_serial(first_day);
    out.series.transform = Transform::Raw;

    for (std::int64_t day = first_day; day <= last_day; ++day) {
        double sum = 0.0;
        int present = 0;
        for (int h = 0; h < 24; ++h) {
            const std::int64_t hour = day * 24 + h;
            if (hour < start_hour || hour >= end_hour) continue;
            const double v = hourly.values[static_cast<std::size_t>(hour - start_hour)];
            if (is_missing(v)) continue;
            sum += v;
            ++present;
        }
        out.hours_present.push_back(present);
        out.series.values.push_back(present >= kMinHoursPerDay ? sum / present : kNaN);
    }
    return out;
}

DailySeries scale_to_height(const DailySeries& raw, double z_from, double z_to, double z0) {
    if (raw.transform != Transform::Raw)
        throw std::invalid_argument("height scaling applies to raw speeds");
    const double factor = log_wind_factor(z_from, z_to, z0);
    DailySeries out = raw;
    for (double& v : out.values)
        if (!is_missing(v)) v *= factor;
    return out;
}

DailySeries log_transform(const DailySeries& raw) {
    if (raw.transform != Transform::Raw) throw std::invalid_argument("series already log-transformed");
    DailySeries out = raw;
    out.transform = Transform::Log;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (is_missing(out.values[i])) {
            throw std::invalid_argument("cannot log-transform missing value at day index " +
                                        std::to_string(i));
        }
        if (!(out.values[i] > 0.0))
            throw std::invalid_argument("nonpositive wind speed at day index " + std::to_string(i));
        out.values[i] = std::log(out.values[i]);
    }
    return out;
}

DailySeries inverse_transform(const DailySeries& logged) {
    if (logged.transform != Transform::Log) throw std::invalid_argument("series is not log-transformed");
    DailySeries out = logged;
    out.transform = Transform::Raw;
    for (double& v : out.values)
        if (!is_missing(v)) v = std::exp(v);
    return out;
}

DailySeries fill_gaps(const DailySeries& s, int max_gap_days) {
    if (max_gap_days < 0) throw std::invalid_argument("max_gap_days must be non-negative");
    DailySeries out = s;
    std::string bad;

    std::size_t i = 0;
    const std::size_t n = out.values.size();
    while (i < n) {
        if (!is_missing(out.values[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && is_missing(out.values[j])) ++j;
        const std::size_t gap = j - i;
        const bool interior = i > 0 && j < n;
        if (interior && gap <= static_cast<std::size_t>(max_gap_days)) {
            const double lo = out.values[i - 1];
            const double hi = out.values[j];
            const double step = (hi - lo) / static_cast<double>(gap + 1);
            for (std::size_t k = 0; k < gap; ++k)
                out.values[i + k] = lo + step * static_cast<double>(k + 1);
        } else {
            if (!bad.empty()) bad += ", ";
            bad += std::to_string(gap) + "-day gap at " + out.date_at(i).to_string() + ".." +
                   out.date_at(j - 1).to_string();
        }
        i = j;
    }
    if (!bad.empty())
        throw std::runtime_error("gaps exceed max_gap_days=" + std::to_string(max_gap_days) + ": " + bad);
    return out;
}

DailySeries align_to_epoch(const DailySeries& s, Date epoch) {
    if (s.epoch_date == epoch) return s;
    if (s.epoch_date > epoch)
        throw std::runtime_error("series at (" + std::to_string(s.site.lat_deg) + ", " +
                                 std::to_string(s.site.lon_deg) + ") begins " +
                                 s.epoch_date.to_string() + ", after the study epoch " +
                                 epoch.to_string());
    const std::int64_t drop = epoch - s.epoch_date;
    if (drop >= static_cast<std::int64_t>(s.values.size()))
        throw std::runtime_error("series ends before the study epoch " + epoch.to_string());
    DailySeries out = s;
    out.epoch_date = epoch;
    out.values.assign(s.values.begin() + drop, s.values.end());
    return out;
}

DailySeries crop(const DailySeries& s, Date first, Date last) {
    if (first > last) throw std::invalid_argument("crop window is empty");
    const std::int64_t lo = std::max<std::int64_t>(0, first - s.epoch_date);
    const std::int64_t hi =
        std::min<std::int64_t>(static_cast<std::int64_t>(s.values.size()) - 1, last - s.epoch_date);
    if (lo > hi) throw std::runtime_error("crop window does not intersect the series");
    DailySeries out = s;
    out.epoch_date = s.epoch_date + lo;
    out.values.assign(s.values.begin() + lo, s.values.begin() + hi + 1);
    return out;
}

}  // namespace windkrige
