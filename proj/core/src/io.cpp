#include "windkrige/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "windkrige/csv.hpp"

namespace windkrige::io {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* kForecastHeader = "site_id,lat,lon,release_time_utc,lead_hour,u_mps,v_mps";
const char* kStationHeader = "site_id,lat,lon,timestamp_utc,wind_speed_kt";
const char* kSeriesHeader = "site_id,date,value,transform";
const char* kParamsHeader =
    "site_id,lat,lon,a0,a1,a2,a3,a4,a5,a6,a7,a8,a9,a10,a11,a12,alpha1,alpha2,b0,b1,b2,"
    "ks_stat,ks_reject,aic";
const char* kEmpiricalHeader = "param,bin_center_km,gamma_hat,pair_count";
const char* kSurfaceHeader = "param,lat,lon,estimate,sigma2";
const char* kBenchmarkHeader = "period,site_id,mean,std,skewness,kurtosis,pct_outside_pi";
const char* kForecastOutHeader = "site_id,date,point_mps,pi_low_mps,pi_high_mps,observed_mps";

void check_field_count(const CsvReader& reader, const std::vector<std::string>& fields,
                       std::size_t expected) {
    if (fields.size() != expected)
        reader.fail("expected " + std::to_string(expected) + " fields, got " +
                    std::to_string(fields.size()));
}

GeoPoint parse_location(const CsvReader& reader, const std::string& lat, const std::string& lon) {
    GeoPoint p{parse_double(lat, reader.path(), reader.line()),
               parse_double(lon, reader.path(), reader.line())};
    try {
        validate(p);
    } catch (const std::exception& e) {
        reader.fail(e.what());
    }
    return p;
}

template <typename Site>
Site& site_slot(std::vector<Site>& sites, const CsvReader& reader, const std::string& id,
                const GeoPoint& location) {
    for (auto& s : sites) {
        if (s.id != id) continue;
        if (!(s.location == location)) reader.fail("site " + id + " listed with two locations");
        return s;
    }
    sites.push_back(Site{id, location, {}});
    return sites.back();
}

}  // namespace

std::vector<ForecastSite> read_forecast_csv(const std::filesystem::path& file) {
    CsvReader reader(file);
    reader.expect_header(kForecastHeader);

    std::vector<ForecastSite> sites;
    // (site index, release hours) -> release index, to group rows into releases
    std::map<std::pair<std::size_t, std::int64_t>, std::size_t> release_index;

    std::vector<std::string> fields;
    while (reader.next_row(fields)) {
        check_field_count(reader, fields, 7);
        const GeoPoint location = parse_location(reader, fields[1], fields[2]);
        ForecastSite& site = site_slot(sites, reader, fields[0], location);
        const std::size_t site_idx = static_cast<std::size_t>(&site - sites.data());

        UtcTime release_time;
        try {
            release_time = UtcTime::parse(fields[3]);
        } catch (const std::exception& e) {
            reader.fail(e.what());
        }

        const auto key = std::make_pair(site_idx, release_time.hours_since_epoch());
        auto it = release_index.find(key);
        if (it == release_index.end()) {
            ForecastRelease release;
            release.site = location;
            release.release_time = release_time;
            site.releases.push_back(std::move(release));
            it = release_index.emplace(key, site.releases.size() - 1).first;
        }

        ForecastRelease::LeadValue lead;
        lead.lead_hour = static_cast<int>(parse_int(fields[4], reader.path(), reader.line()));
        if (lead.lead_hour < 0) reader.fail("negative lead hour");
        lead.u_mps = parse_double(fields[5], reader.path(), reader.line());
        lead.v_mps = parse_double(fields[6], reader.path(), reader.line());
        site.releases[it->second].horizon_values.push_back(lead);
    }
    if (sites.empty()) throw ParseError(file, reader.line(), "no forecast rows");

    for (auto& site : sites) {
        for (auto& release : site.releases) {
            auto& leads = release.horizon_values;
            std::sort(leads.begin(), leads.end(),
                      [](const auto& a, const auto& b) { return a.lead_hour < b.lead_hour; });
            for (std::size_t i = 1; i < leads.size(); ++i) {
                if (leads[i].lead_hour == leads[i - 1].lead_hour)
                    throw ParseError(file, 0,
                                     "site " + site.id + " release " +
                                         release.release_time.to_string() + " repeats lead hour " +
                                         std::to_string(leads[i].lead_hour));
            }
        }
    }
    return sites;
}

std::vector<StationSite> read_station_csv(const std::filesystem::path& file) {
    CsvReader reader(file);
    reader.expect_header(kStationHeader);

    std::vector<StationSite> sites;
    std::vector<std::string> fields;
    while (reader.next_row(fields)) {
        check_field_count(reader, fields, 5);
        const GeoPoint location = parse_location(reader, fields[1], fields[2]);
        StationSite& site = site_slot(sites, reader, fields[0], location);

        StationReport report;
        report.site = location;
        try {
            report.timestamp = UtcTime::parse(fields[3]);
        } catch (const std::exception& e) {
            reader.fail(e.what());
        }
        if (fields[4].empty()) {
            report.wind_speed_kt = kNaN;
        } else {
            report.wind_speed_kt = parse_double(fields[4], reader.path(), reader.line());
            if (report.wind_speed_kt < 0.0) reader.fail("negative wind speed in knots");
        }
        site.reports.push_back(report);
    }
    if (sites.empty()) throw ParseError(file, reader.line(), "no station rows");
    return sites;
}

void write_series_csv(const std::filesystem::path& file, std::span<const SiteSeries> sites) {
    CsvWriter writer(file, kSeriesHeader);
    for (const auto& s : sites) {
        for (std::size_t i = 0; i < s.series.values.size(); ++i) {
            writer.write_row({s.id, s.series.date_at(i).to_string(),
                              is_missing(s.series.values[i]) ? ""
                                                             : format_double(s.series.values[i]),
                              to_string(s.series.transform)});
        }
    }
}

std::vector<SiteSeries> read_series_csv(const std::filesystem::path& file) {
    CsvReader reader(file);
    reader.expect_header(kSeriesHeader);

    std::vector<SiteSeries> sites;
    std::vector<std::string> fields;
    while (reader.next_row(fields)) {
        check_field_count(reader, fields, 4);
        Date date;
        try {
            date = Date::parse(fields[1]);
        } catch (const std::exception& e) {
            reader.fail(e.what());
        }
        const double value =
            fields[2].empty() ? kNaN : parse_double(fields[2], reader.path(), reader.line());
        Transform transform;
        if (fields[3] == "raw")
            transform = Transform::Raw;
        else if (fields[3] == "log")
            transform = Transform::Log;
        else
            reader.fail("unknown transform '" + fields[3] + "'");

        SiteSeries* slot = nullptr;
        for (auto& s : sites)
            if (s.id == fields[0]) slot = &s;
        if (slot == nullptr) {
            sites.push_back({fields[0], DailySeries{}});
            slot = &sites.back();
            slot->series.epoch_date = date;
            slot->series.transform = transform;
        }
        if (slot->series.transform != transform) reader.fail("mixed transforms for site " + fields[0]);
        const std::int64_t idx = date - slot->series.epoch_date;
        if (idx != static_cast<std::int64_t>(slot->series.values.size()))
            reader.fail("non-contiguous dates for site " + fields[0]);
        slot->series.values.push_back(value);
    }
    if (sites.empty()) throw ParseError(file, reader.line(), "no series rows");
    return sites;
}

void write_params_csv(const std::filesystem::path& file, std::span<const ParamRecord> records,
                      Date epoch_date) {
    CsvWriter writer(file, kParamsHeader);
    for (const auto& r : records) {
        if (r.params.epoch_date != epoch_date)
            throw std::invalid_argument("parameter record epoch differs from the table epoch");
        std::vector<std::string> fields{r.site_id, format_double(r.location.lat_deg),
                                        format_double(r.location.lon_deg)};
        for (int j = 0; j < TemporalParams::kParamCount; ++j)
            fields.push_back(format_double(r.params.param(j)));
        fields.push_back(format_double(r.ks_stat));
        fields.push_back(r.ks_reject ? "1" : "0");
        fields.push_back(format_double(r.aic));
        writer.write_row(fields);
    }
}

ParamTable read_params_csv(const std::filesystem::path& file, Date epoch_date) {
    CsvReader reader(file);
    reader.expect_header(kParamsHeader);

    ParamTable table;
    table.epoch_date = epoch_date;
    std::vector<std::string> fields;
    while (reader.next_row(fields)) {
        check_field_count(reader, fields, 3 + TemporalParams::kParamCount + 3);
        ParamRecord r;
        r.site_id = fields[0];
        r.location = parse_location(reader, fields[1], fields[2]);
        r.params.epoch_date = epoch_date;
        for (int j = 0; j < TemporalParams::kParamCount; ++j)
            r.params.set_param(j, parse_double(fields[static_cast<std::size_t>(3 + j)],
                                               reader.path(), reader.line()));
        r.ks_stat = parse_double(fields[21], reader.path(), reader.line());
        const std::int64_t reject = parse_int(fields[22], reader.path(), reader.line());
        if (reject != 0 && reject != 1) reader.fail("ks_reject must be 0 or 1");
        r.ks_reject = reject == 1;
        r.aic = parse_double(fields[23], reader.path(), reader.line());
        table.records.push_back(std::move(r));
    }
    if (table.records.empty()) throw ParseError(file, reader.line(), "no parameter rows");
    return table;
}

void write_empirical_csv(const std::filesystem::path& file,
                         std::span<const NamedEmpiricalVariogram> variograms) {
    CsvWriter writer(file, kEmpiricalHeader);
    for (const auto& nv : variograms) {
        for (std::size_t i = 0; i < nv.variogram.bin_centers_km.size(); ++i) {
            writer.write_row({nv.param, format_double(nv.variogram.bin_centers_km[i]),
                              format_double(nv.variogram.gamma_hat[i]),
                              std::to_string(nv.variogram.pair_counts[i])});
        }
    }
}

void write_models_file(const std::filesystem::path& file,
                       std::span<const NamedVariogramFit> fits) {
    std::ofstream out(file, std::ios::trunc);  // structured records, no header line
    if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
    for (const auto& nf : fits) {
        out << nf.param << ',' << format_double(nf.fit.model.nugget);
        for (const auto& s : nf.fit.model.structures)
            out << ',' << to_string(s.kind) << ',' << format_double(s.sill) << ','
                << format_double(s.range);
        out << ',' << format_double(nf.fit.wls_objective) << '\n';
    }
    if (!out) throw std::runtime_error("write failed on " + file.string());
}

std::vector<NamedVariogramFit> read_models_file(const std::filesystem::path& file) {
    CsvReader reader(file);
    std::vector<NamedVariogramFit> fits;
    std::vector<std::string> fields;
    while (reader.next_row(fields)) {
        if (fields.size() < 3 || (fields.size() - 3) % 3 != 0)
            reader.fail("malformed model record (" + std::to_string(fields.size()) + " fields)");
        NamedVariogramFit nf;
        nf.param = fields[0];
        nf.fit.model.nugget = parse_double(fields[1], reader.path(), reader.line());
        const std::size_t n_structures = (fields.size() - 3) / 3;
        for (std::size_t s = 0; s < n_structures; ++s) {
            VariogramStructure st;
            try {
                st.kind = structure_kind_from_string(fields[2 + 3 * s]);
            } catch (const std::exception& e) {
                reader.fail(e.what());
            }
            st.sill = parse_double(fields[3 + 3 * s], reader.path(), reader.line());
            st.range = parse_double(fields[4 + 3 * s], reader.path(), reader.line());
            nf.fit.model.structures.push_back(st);
        }
        nf.fit.wls_objective = parse_double(fields.back(), reader.path(), reader.line());
        try {
            validate(nf.fit.model);
        } catch (const std::exception& e) {
            reader.fail(e.what());
        }
        fits.push_back(std::move(nf));
    }
    if (fits.empty()) throw ParseError(file, reader.line(), "no model records");
    return fits;
}

void write_surface_csv(const std::filesystem::path& file, const ParamSurface& surface) {
    CsvWriter writer(file, kSurfaceHeader);
    const std::vector<GeoPoint> cells = raster_points(surface.spec);
    if (cells.size() != surface.values.size() || cells.size() != surface.sigma2.size())
        throw std::invalid_argument("surface rasters do not match the raster spec");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        writer.write_row({surface.param_name, format_double(cells[i].lat_deg),
                          format_double(cells[i].lon_deg), format_double(surface.values[i]),
                          format_double(surface.sigma2[i])});
    }
}

void write_benchmark_csv(const std::filesystem::path& file, const BenchmarkReport& report) {
    CsvWriter writer(file, kBenchmarkHeader);
    auto write_rows = [&writer](const char* period, std::span<const BenchmarkRow> rows) {
        for (const auto& r : rows) {
            writer.write_row({period, r.site_id, format_double(r.mean), format_double(r.std_dev),
                              format_double(r.skewness), format_double(r.kurtosis),
                              format_double(r.pct_outside_pi)});
        }
    };
    write_rows("in_sample", report.in_sample);
    write_rows("out_of_sample", report.out_of_sample);
}

void write_forecast_csv(const std::filesystem::path& file,
                        std::span<const ForecastRecord> records) {
    CsvWriter writer(file, kForecastOutHeader);
    for (const auto& r : records) {
        writer.write_row({r.site_id, r.date.to_string(), format_double(r.point_mps),
                          format_double(r.pi_low_mps), format_double(r.pi_high_mps),
                          std::isnan(r.observed_mps) ? "" : format_double(r.observed_mps)});
    }
}

}  // namespace windkrige::io
