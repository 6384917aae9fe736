#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "windkrige/forecast.hpp"
#include "windkrige/geo.hpp"
#include "windkrige/ingest.hpp"
#include "windkrige/kriging.hpp"
#include "windkrige/series.hpp"
#include "windkrige/temporal.hpp"
#include "windkrige/variogram.hpp"

// File formats. All CSVs use a decimal point, no thousands separators, and
// ISO-8601 UTC timestamps; doubles round-trip exactly.
namespace windkrige::io {

// --- forecast input: site_id,lat,lon,release_time_utc,lead_hour,u_mps,v_mps
struct ForecastSite {
    std::string id;
    GeoPoint location;
    std::vector<ForecastRelease> releases;
};
std::vector<ForecastSite> read_forecast_csv(const std::filesystem::path& file);

// --- station input: site_id,lat,lon,timestamp_utc,wind_speed_kt
// An empty wind_speed_kt field marks a report without a usable speed.
struct StationSite {
    std::string id;
    GeoPoint location;
    std::vector<StationReport> reports;
};
std::vector<StationSite> read_station_csv(const std::filesystem::path& file);

// --- daily series: site_id,date,value,transform
struct SiteSeries {
    std::string id;
    DailySeries series;
};
void write_series_csv(const std::filesystem::path& file, std::span<const SiteSeries> sites);
std::vector<SiteSeries> read_series_csv(const std::filesystem::path& file);

// --- fitted parameter table:
// site_id,lat,lon,a0,...,a12,alpha1,alpha2,b0,b1,b2,ks_stat,ks_reject,aic
struct ParamRecord {
    std::string site_id;
    GeoPoint location;
    TemporalParams params;
    double ks_stat = 0.0;
    bool ks_reject = false;
    double aic = 0.0;
};
void write_params_csv(const std::filesystem::path& file, std::span<const ParamRecord> records,
                      Date epoch_date);
struct ParamTable {
    Date epoch_date;
    std::vector<ParamRecord> records;
};
ParamTable read_params_csv(const std::filesystem::path& file, Date epoch_date);

// --- empirical variograms, all parameters stacked:
// param,bin_center_km,gamma_hat,pair_count
struct NamedEmpiricalVariogram {
    std::string param;
    EmpiricalVariogram variogram;
};
void write_empirical_csv(const std::filesystem::path& file,
                         std::span<const NamedEmpiricalVariogram> variograms);

// --- fitted model records, one line per parameter:
// param,nugget,kind1,c1,r1[,kind2,c2,r2],wls_objective
struct NamedVariogramFit {
    std::string param;
    VariogramFit fit;
};
void write_models_file(const std::filesystem::path& file,
                       std::span<const NamedVariogramFit> fits);
std::vector<NamedVariogramFit> read_models_file(const std::filesystem::path& file);

// --- kriged surface, row-major raster order: param,lat,lon,estimate,sigma2
void write_surface_csv(const std::filesystem::path& file, const ParamSurface& surface);

// --- benchmark report: period,site_id,mean,std,skewness,kurtosis,pct_outside_pi
void write_benchmark_csv(const std::filesystem::path& file, const BenchmarkReport& report);

// --- forecasts: site_id,date,point_mps,pi_low_mps,pi_high_mps,observed_mps
// observed_mps is empty when no observation exists.
void write_forecast_csv(const std::filesystem::path& file,
                        std::span<const ForecastRecord> records);

}  // namespace windkrige::io
