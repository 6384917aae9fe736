#include "commands.hpp"

#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "windkrige/forecast.hpp"
#include "windkrige/ingest.hpp"
#include "windkrige/io.hpp"
#include "windkrige/kriging.hpp"
#include "windkrige/temporal.hpp"
#include "windkrige/variogram.hpp"

namespace windkrige::cli {

namespace fs = std::filesystem;

namespace {

fs::path ensure_output_dir(const RunConfig& config) {
    fs::create_directories(config.output_dir);
    return config.output_dir;
}

void announce(const fs::path& file) { std::cout << "wrote " << file.string() << '\n'; }

double auto_max_lag(std::span<const GeoPoint> sites, double configured) {
    if (configured > 0.0) return configured;
    double max_d = 0.0;
    for (std::size_t i = 0; i < sites.size(); ++i)
        for (std::size_t j = i + 1; j < sites.size(); ++j)
            max_d = std::max(max_d, haversine_km(sites[i], sites[j]));
    return 0.5 * max_d;
}

// Grid-site daily series: splice the 6-hourly releases, average to days,
// align to the study epoch and interpolate short gaps.
struct GridDaily {
    std::string id;
    DailySeries raw;
};

std::vector<GridDaily> grid_daily_series(const RunConfig& config) {
    if (config.forecast_csv.empty()) throw std::runtime_error("config: forecast_csv is required");
    const auto sites = io::read_forecast_csv(config.forecast_csv);
    std::vector<GridDaily> out;
    out.reserve(sites.size());
    for (const auto& site : sites) {
        try {
            const HourlySeries hourly = splice_releases(site.releases);
            DailySeries daily = daily_average(hourly).series;
            daily = align_to_epoch(daily, *config.epoch_date);
            daily = fill_gaps(daily, config.max_gap_days);
            out.push_back({site.id, std::move(daily)});
        } catch (const std::exception& e) {
            throw std::runtime_error("site " + site.id + ": " + e.what());
        }
    }
    return out;
}

// Station daily log histories at the forecast reference height.
std::vector<SiteHistory> station_histories(const RunConfig& config) {
    if (config.station_csv.empty()) throw std::runtime_error("config: station_csv is required");
    const auto sites = io::read_station_csv(config.station_csv);
    std::vector<SiteHistory> out;
    out.reserve(sites.size());
    for (const auto& site : sites) {
        try {
            const HourlySeries hourly = hourly_from_reports(site.reports);
            DailySeries daily = daily_average(hourly).series;
            daily = align_to_epoch(daily, *config.epoch_date);
            daily = fill_gaps(daily, config.max_gap_days);
            daily = scale_to_height(daily, config.station_height_m, config.forecast_height_m,
                                    config.z0);
            out.push_back({site.id, site.location, log_transform(daily)});
        } catch (const std::exception& e) {
            throw std::runtime_error("station " + site.id + ": " + e.what());
        }
    }
    return out;
}

struct FittedField {
    io::ParamTable table;
    std::vector<GeoPoint> sites;
};

FittedField load_param_table(const RunConfig& config) {
    FittedField f;
    f.table = io::read_params_csv(config.output_dir / "params.csv", *config.epoch_date);
    for (const auto& r : f.table.records) f.sites.push_back(r.location);
    return f;
}

// Models keyed by parameter name, ordered a0..b2; every parameter must be present.
std::vector<VariogramModel> load_models(const RunConfig& config) {
    const auto fits = io::read_models_file(config.output_dir / "models.txt");
    std::vector<VariogramModel> models(TemporalParams::kParamCount);
    std::vector<bool> seen(TemporalParams::kParamCount, false);
    const auto& names = TemporalParams::param_names();
    for (const auto& nf : fits) {
        for (int j = 0; j < TemporalParams::kParamCount; ++j) {
            if (names[static_cast<std::size_t>(j)] == nf.param) {
                models[static_cast<std::size_t>(j)] = nf.fit.model;
                seen[static_cast<std::size_t>(j)] = true;
            }
        }
    }
    for (int j = 0; j < TemporalParams::kParamCount; ++j) {
        if (!seen[static_cast<std::size_t>(j)])
            throw std::runtime_error("models.txt has no model for parameter " +
                                     names[static_cast<std::size_t>(j)]);
    }
    return models;
}

std::vector<ForecastRecord> kriged_site_forecasts(const RunConfig& config,
                                                  const FittedField& field,
                                                  const std::vector<VariogramModel>& models,
                                                  const std::vector<SiteHistory>& stations) {
    std::vector<TemporalParams> grid_params;
    grid_params.reserve(field.table.records.size());
    for (const auto& r : field.table.records) grid_params.push_back(r.params);

    std::vector<ForecastRecord> records;
    for (const auto& station : stations) {
        if (config.has_raster_bounds) {
            const RasterSpec& r = config.raster;
            const GeoPoint& p = station.location;
            if (p.lat_deg < r.lat_min || p.lat_deg > r.lat_max || p.lon_deg < r.lon_min ||
                p.lon_deg > r.lon_max) {
                std::cerr << "warning: station " << station.id
                          << " lies outside the raster bounds; kriging uses the global "
                             "neighbourhood anyway\n";
            }
        }
        const TemporalParams kriged =
            krige_params_at(models, field.sites, grid_params, station.location);
        const auto site_records = rolling_forecasts(kriged, station);
        records.insert(records.end(), site_records.begin(), site_records.end());
    }
    return records;
}

}  // namespace

void cmd_fit(const RunConfig& config) {
    require_epoch(config);
    require_split(config);
    const fs::path out_dir = ensure_output_dir(config);

    const std::vector<GridDaily> daily = grid_daily_series(config);

    std::vector<io::SiteSeries> series_out;
    std::vector<io::ParamRecord> records;
    for (const auto& site : daily) {
        series_out.push_back({site.id, site.raw});
        try {
            const DailySeries in_sample = crop(site.raw, *config.epoch_date, *config.split_date);
            const FitReport report = fit_temporal_model(log_transform(in_sample));
            io::ParamRecord rec;
            rec.site_id = site.id;
            rec.location = site.raw.site;
            rec.params = report.params;
            rec.ks_stat = report.ks_statistic;
            rec.ks_reject = report.ks_reject_5pct;
            rec.aic = report.aic;
            records.push_back(std::move(rec));
        } catch (const std::exception& e) {
            throw std::runtime_error("site " + site.id + ": " + e.what());
        }
    }

    const fs::path series_path = out_dir / "series.csv";
    io::write_series_csv(series_path, series_out);
    announce(series_path);

    const fs::path params_path = out_dir / "params.csv";
    io::write_params_csv(params_path, records, *config.epoch_date);
    announce(params_path);
}

void cmd_variogram(const RunConfig& config) {
    require_epoch(config);
    const FittedField field = load_param_table(config);
    if (field.sites.size() < 2) throw std::runtime_error("need at least 2 fitted sites");

    const double max_lag = auto_max_lag(field.sites, config.max_lag_km);
    const auto& names = TemporalParams::param_names();

    VariogramFitOptions options;
    options.seed = config.seed;

    std::vector<io::NamedEmpiricalVariogram> empirical;
    std::vector<io::NamedVariogramFit> fits;
    std::vector<double> column(field.table.records.size());
    for (int j = 0; j < TemporalParams::kParamCount; ++j) {
        for (std::size_t i = 0; i < field.table.records.size(); ++i)
            column[i] = field.table.records[i].params.param(j);
        const std::string& name = names[static_cast<std::size_t>(j)];
        try {
            EmpiricalVariogram ev =
                empirical_semivariogram(field.sites, column, config.bin_width_km, max_lag);
            VariogramFit fit = fit_model_for_kriging(ev, config.families, field.sites, options);
            empirical.push_back({name, std::move(ev)});
            fits.push_back({name, std::move(fit)});
        } catch (const std::exception& e) {
            throw std::runtime_error("parameter " + name + ": " + e.what());
        }
    }

    const fs::path out_dir = ensure_output_dir(config);
    const fs::path empirical_path = out_dir / "empirical.csv";
    io::write_empirical_csv(empirical_path, empirical);
    announce(empirical_path);

    const fs::path models_path = out_dir / "models.txt";
    io::write_models_file(models_path, fits);
    announce(models_path);
}

void cmd_krige(const RunConfig& config) {
    require_epoch(config);
    if (!config.has_raster_bounds)
        throw std::runtime_error("config: raster_lat_min/max and raster_lon_min/max are required");
    validate(config.raster);

    const FittedField field = load_param_table(config);
    const std::vector<VariogramModel> models = load_models(config);
    const fs::path out_dir = ensure_output_dir(config);
    const auto& names = TemporalParams::param_names();

    std::vector<double> column(field.table.records.size());
    for (int j = 0; j < TemporalParams::kParamCount; ++j) {
        for (std::size_t i = 0; i < field.table.records.size(); ++i)
            column[i] = field.table.records[i].params.param(j);
        const std::string& name = names[static_cast<std::size_t>(j)];
        const ParamSurface surface =
            krige_parameter_surface(models[static_cast<std::size_t>(j)], field.sites, column,
                                    config.raster, name, config.threads);
        const fs::path path = out_dir / ("surface_" + name + ".csv");
        io::write_surface_csv(path, surface);
        announce(path);
    }
}

void cmd_predict(const RunConfig& config) {
    require_epoch(config);
    const FittedField field = load_param_table(config);
    const std::vector<VariogramModel> models = load_models(config);
    const std::vector<SiteHistory> stations = station_histories(config);

    const auto records = kriged_site_forecasts(config, field, models, stations);

    const fs::path out_dir = ensure_output_dir(config);
    const fs::path forecast_path = out_dir / "forecasts.csv";
    io::write_forecast_csv(forecast_path, records);
    announce(forecast_path);
}

void cmd_benchmark(const RunConfig& config) {
    require_epoch(config);
    require_split(config);
    const FittedField field = load_param_table(config);
    const std::vector<VariogramModel> models = load_models(config);
    const std::vector<SiteHistory> stations = station_histories(config);

    const auto records = kriged_site_forecasts(config, field, models, stations);
    const BenchmarkReport report = benchmark_from_records(records, *config.split_date);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';

    const fs::path out_dir = ensure_output_dir(config);
    const fs::path forecast_path = out_dir / "forecasts.csv";
    io::write_forecast_csv(forecast_path, records);
    announce(forecast_path);

    const fs::path benchmark_path = out_dir / "benchmark.csv";
    io::write_benchmark_csv(benchmark_path, report);
    announce(benchmark_path);
}

}  // namespace windkrige::cli
