#pragma once

#include <cstddef>
#include <vector>

namespace windkrige {

inline constexpr double kEarthRadiusKm = 6371.0;

// Geographic location in degrees; latitude in [-90, 90], longitude in [-180, 180).
struct GeoPoint {
    double lat_deg = 0.0;
    double lon_deg = 0.0;

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

// Regular latitude/longitude lattice, inclusive of the min corner.
struct RasterSpec {
    double lat_min = 0.0;
    double lat_max = 0.0;
    double lon_min = 0.0;
    double lon_max = 0.0;
    double step_deg = 0.0;
};

// Throws std::invalid_argument when coordinates are out of range.
void validate(const GeoPoint& p);

// Throws unless lat_min < lat_max, lon_min < lon_max and step_deg > 0.
void validate(const RasterSpec& spec);

// Great-circle distance on a sphere of radius 6371 km. Symmetric by
// construction: both argument orders run the exact same arithmetic.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

std::size_t raster_rows(const RasterSpec& spec);
std::size_t raster_cols(const RasterSpec& spec);

// Lattice points in row-major order: latitude outer (ascending), longitude
// inner (ascending). Deterministic.
std::vector<GeoPoint> raster_points(const RasterSpec& spec);

}  // namespace windkrige
