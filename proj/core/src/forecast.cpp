#include "windkrige/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace windkrige {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_log(const DailySeries& s) {
    if (s.transform != Transform::Log)
        throw std::invalid_argument("forecast history must be log-transformed");
}

ForecastRecord make_record(const TemporalParams& p, const DailySeries& history, std::int64_t idx,
                           const std::string& site_id) {
    const DayAheadForecast f =
        forecast_one_day(p, history.values[static_cast<std::size_t>(idx - 1)],
                         history.values[static_cast<std::size_t>(idx - 2)], idx - 1);
    ForecastRecord rec;
    rec.site_id = site_id;
    rec.date = history.epoch_date + idx;
    rec.point_mps = f.point_mps;
    rec.pi_low_mps = f.pi_low_mps;
    rec.pi_high_mps = f.pi_high_mps;
    const bool have_obs = idx < static_cast<std::int64_t>(history.values.size()) &&
                          !is_missing(history.values[static_cast<std::size_t>(idx)]);
    rec.observed_mps = have_obs ? std::exp(history.values[static_cast<std::size_t>(idx)]) : kNaN;
    return rec;
}

bool lags_available(const DailySeries& history, std::int64_t idx) {
    return idx >= 2 && idx - 1 < static_cast<std::int64_t>(history.values.size()) &&
           !is_missing(history.values[static_cast<std::size_t>(idx - 1)]) &&
           !is_missing(history.values[static_cast<std::size_t>(idx - 2)]);
}

}  // namespace

std::vector<ForecastRecord> predict_site(const TemporalParams& p, const DailySeries& log_history,
                                         std::span<const Date> dates, std::string site_id) {
    require_log(log_history);
    if (log_history.epoch_date != p.epoch_date)
        throw std::invalid_argument("history epoch does not match the parameter epoch");

    std::string missing;
    for (const Date& d : dates) {
        if (!lags_available(log_history, d - log_history.epoch_date)) {
            if (!missing.empty()) missing += ", ";
            missing += d.to_string();
        }
    }
    if (!missing.empty())
        throw std::runtime_error("missing AR lag values for forecast dates: " + missing);

    std::vector<ForecastRecord> out;
    out.reserve(dates.size());
    for (const Date& d : dates)
        out.push_back(make_record(p, log_history, d - log_history.epoch_date, site_id));
    return out;
}

std::vector<ForecastRecord> rolling_forecasts(const TemporalParams& p, const SiteHistory& site) {
    require_log(site.log_history);
    if (site.log_history.epoch_date != p.epoch_date)
        throw std::invalid_argument("history epoch does not match the parameter epoch");

    std::vector<ForecastRecord> out;
    const std::int64_t n = static_cast<std::int64_t>(site.log_history.values.size());
    for (std::int64_t idx = 2; idx <= n; ++idx) {
        if (!lags_available(site.log_history, idx)) continue;
        out.push_back(make_record(p, site.log_history, idx, site.id));
    }
    return out;
}

std::vector<std::pair<Date, double>> persistence_forecast(const DailySeries& raw_history) {
    if (raw_history.transform != Transform::Raw)
        throw std::invalid_argument("persistence operates on raw speeds");
    std::vector<std::pair<Date, double>> out;
    for (std::size_t i = 1; i <= raw_history.values.size(); ++i) {
        const double prev = raw_history.values[i - 1];
        if (is_missing(prev)) continue;
        out.emplace_back(raw_history.epoch_date + static_cast<std::int64_t>(i), prev);
    }
    return out;
}

double mape(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.size() != actual.size())
        throw std::invalid_argument("predicted and actual differ in length");
    if (predicted.empty()) throw std::invalid_argument("empty forecast comparison");
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (!(actual[i] > 0.0))
            throw std::invalid_argument("MAPE undefined: nonpositive actual at index " +
                                        std::to_string(i));
        sum += std::fabs(predicted[i] - actual[i]) / actual[i];
    }
    return 100.0 * sum / static_cast<double>(actual.size());
}

ErrorMoments error_moments(std::span<const double> errors) {
    const std::size_t n = errors.size();
    if (n < 4) throw std::invalid_argument("error moments need at least 4 values");

    double mean = 0.0;
    for (double e : errors) mean += e;
    mean /= static_cast<double>(n);

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double e : errors) {
        const double d = e - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (!(m2 > 0.0)) throw std::invalid_argument("error moments undefined for zero variance");

    ErrorMoments out;
    out.mean = mean;
    out.std_dev = std::sqrt(m2);
    out.skewness = m3 / (m2 * out.std_dev);
    out.kurtosis = m4 / (m2 * m2);
    return out;
}

double pi_coverage_outside_pct(std::span<const ForecastRecord> records) {
    if (records.empty()) throw std::invalid_argument("no forecast records");
    std::size_t outside = 0;
    for (const auto& r : records) {
        if (std::isnan(r.observed_mps))
            throw std::invalid_argument("record without observation in PI coverage");
        if (r.observed_mps < r.pi_low_mps || r.observed_mps > r.pi_high_mps) ++outside;
    }
    return 100.0 * static_cast<double>(outside) / static_cast<double>(records.size());
}

BenchmarkReport benchmark_from_records(std::span<const ForecastRecord> records, Date split_date) {
    BenchmarkReport report;

    std::vector<std::string> order;
    for (const auto& r : records)
        if (std::find(order.begin(), order.end(), r.site_id) == order.end())
            order.push_back(r.site_id);

    struct Period {
        const char* name;
        std::vector<BenchmarkRow>* rows;
    };
    Period periods[2] = {{"in_sample", &report.in_sample}, {"out_of_sample", &report.out_of_sample}};

    for (const auto& id : order) {
        for (int p = 0; p < 2; ++p) {
            std::vector<ForecastRecord> kept;
            for (const auto& r : records) {
                if (r.site_id != id || std::isnan(r.observed_mps)) continue;
                const bool in = r.date <= split_date;
                if (in == (p == 0)) kept.push_back(r);
            }
            if (kept.size() < 4) {
                report.warnings.push_back("site " + id + " skipped for " + periods[p].name +
                                          ": only " + std::to_string(kept.size()) +
                                          " observed forecasts");
                continue;
            }
            std::vector<double> log_errors;
            log_errors.reserve(kept.size());
            for (const auto& r : kept)
                log_errors.push_back(std::log(r.point_mps) - std::log(r.observed_mps));

            BenchmarkRow row;
            row.site_id = id;
            try {
                const ErrorMoments m = error_moments(log_errors);
                row.mean = m.mean;
                row.std_dev = m.std_dev;
                row.skewness = m.skewness;
                row.kurtosis = m.kurtosis;
            } catch (const std::exception& e) {
                report.warnings.push_back("site " + id + " skipped for " + periods[p].name + ": " +
                                          e.what());
                continue;
            }
            row.pct_outside_pi = pi_coverage_outside_pct(kept);
            periods[p].rows->push_back(std::move(row));
        }
    }
    return report;
}

BenchmarkReport benchmark_report(std::span<const TemporalParams> kriged_params,
                                 std::span<const SiteHistory> sites, Date split_date) {
    if (kriged_params.size() != sites.size())
        throw std::invalid_argument("one parameter set per site required");
    std::vector<ForecastRecord> records;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const auto site_records = rolling_forecasts(kriged_params[i], sites[i]);
        records.insert(records.end(), site_records.begin(), site_records.end());
    }
    return benchmark_from_records(records, split_date);
}

}  // namespace windkrige
