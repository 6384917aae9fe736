#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "windkrige/dates.hpp"
#include "windkrige/geo.hpp"
#include "windkrige/variogram.hpp"

namespace windkrige::cli {

// Declarative run configuration: a flat key=value file, '#' comments.
// Relative paths resolve against the config file's directory. Command-line
// flags override individual keys.
struct RunConfig {
    std::filesystem::path forecast_csv;
    std::filesystem::path station_csv;
    std::filesystem::path output_dir = "out";

    std::optional<Date> epoch_date;
    std::optional<Date> split_date;

    double z0 = 0.0024;               // airport-runway roughness length, metres
    double forecast_height_m = 100.0;  // gridded forecast reference height AGL
    double station_height_m = 10.0;    // station report height AGL

    RasterSpec raster{0.0, 0.0, 0.0, 0.0, 0.01};
    bool has_raster_bounds = false;

    double bin_width_km = 25.0;
    double max_lag_km = 0.0;  // 0 = half the maximum pairwise distance
    int max_gap_days = 3;

    std::vector<StructureKind> families{StructureKind::Spherical, StructureKind::Exponential,
                                        StructureKind::HoleEffectSine};

    std::uint64_t seed = 42;
    int threads = 0;  // 0 = auto
};

RunConfig load_config(const std::filesystem::path& file);

// Shared validation: epoch/split presence, ordering, z0 > 0.
void require_epoch(const RunConfig& config);
void require_split(const RunConfig& config);

}  // namespace windkrige::cli
