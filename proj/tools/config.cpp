#include "config.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "windkrige/csv.hpp"

namespace windkrige::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::vector<StructureKind> parse_families(const std::string& value) {
    std::vector<StructureKind> out;
    for (const auto& token : split_csv_line(value)) {
        const std::string name = trim(token);
        if (name.empty()) continue;
        out.push_back(structure_kind_from_string(name));
    }
    if (out.empty()) throw std::invalid_argument("variogram_families lists no families");
    return out;
}

}  // namespace

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open config " + file.string());
    const std::filesystem::path base = file.has_parent_path() ? file.parent_path() : ".";

    auto resolve = [&base](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_absolute() ? path : base / path;
    };

    RunConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(file, line_no, "expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        try {
            if (key == "forecast_csv") config.forecast_csv = resolve(value);
            else if (key == "station_csv") config.station_csv = resolve(value);
            else if (key == "output_dir") config.output_dir = resolve(value);
            else if (key == "epoch_date") config.epoch_date = Date::parse(value);
            else if (key == "split_date") config.split_date = Date::parse(value);
            else if (key == "z0") config.z0 = std::stod(value);
            else if (key == "forecast_height_m") config.forecast_height_m = std::stod(value);
            else if (key == "station_height_m") config.station_height_m = std::stod(value);
            else if (key == "raster_lat_min") { config.raster.lat_min = std::stod(value); config.has_raster_bounds = true; }
            else if (key == "raster_lat_max") { config.raster.lat_max = std::stod(value); config.has_raster_bounds = true; }
            else if (key == "raster_lon_min") { config.raster.lon_min = std::stod(value); config.has_raster_bounds = true; }
            else if (key == "raster_lon_max") { config.raster.lon_max = std::stod(value); config.has_raster_bounds = true; }
            else if (key == "raster_step_deg") config.raster.step_deg = std::stod(value);
            else if (key == "bin_width_km") config.bin_width_km = std::stod(value);
            else if (key == "max_lag_km") config.max_lag_km = std::stod(value);
            else if (key == "max_gap_days") config.max_gap_days = std::stoi(value);
            else if (key == "variogram_families") config.families = parse_families(value);
            else if (key == "seed") config.seed = std::stoull(value);
            else if (key == "threads") config.threads = std::stoi(value);
            else std::cerr << "warning: unknown config key '" << key << "' ignored\n";
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(file, line_no, "bad value for " + key + ": " + e.what());
        }
    }

    if (!(config.z0 > 0.0)) throw std::runtime_error("config: z0 must be positive");
    if (config.epoch_date && config.split_date && !(*config.epoch_date < *config.split_date))
        throw std::runtime_error("config: epoch_date must precede split_date");
    return config;
}

void require_epoch(const RunConfig& config) {
    if (!config.epoch_date) throw std::runtime_error("config: epoch_date is required");
}

void require_split(const RunConfig& config) {
    if (!config.split_date) throw std::runtime_error("config: split_date is required");
}

}  // namespace windkrige::cli
