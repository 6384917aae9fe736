#include "windkrige/geo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace windkrige {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Guards span/step ratios like 0.02/0.01 that land just below an integer.
constexpr double kGridEps = 1e-9;

}  // namespace

void validate(const GeoPoint& p) {
    if (!(p.lat_deg >= -90.0 && p.lat_deg <= 90.0))
        throw std::invalid_argument("latitude out of range [-90, 90]: " + std::to_string(p.lat_deg));
    if (!(p.lon_deg >= -180.0 && p.lon_deg < 180.0))
        throw std::invalid_argument("longitude out of range [-180, 180): " + std::to_string(p.lon_deg));
}

void validate(const RasterSpec& spec) {
    if (!(spec.lat_min < spec.lat_max))
        throw std::invalid_argument("degenerate latitude span");
    if (!(spec.lon_min < spec.lon_max))
        throw std::invalid_argument("degenerate longitude span");
    if (!(spec.step_deg > 0.0))
        throw std::invalid_argument("raster step must be positive");
    validate(GeoPoint{spec.lat_min, spec.lon_min});
    validate(GeoPoint{spec.lat_max, spec.lon_max});
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
    const double lat1 = a.lat_deg * kDegToRad;
    const double lat2 = b.lat_deg * kDegToRad;
    const double dlat = std::fabs(b.lat_deg - a.lat_deg) * kDegToRad;
    const double dlon = std::fabs(b.lon_deg - a.lon_deg) * kDegToRad;
    const double sin_lat = std::sin(0.5 * dlat);
    const double sin_lon = std::sin(0.5 * dlon);
    const double h = sin_lat * sin_lat + std::cos(lat1) * std::cos(lat2) * sin_lon * sin_lon;
    return 2.0 * kEarthRadiusKm * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
}

std::size_t raster_rows(const RasterSpec& spec) {
    validate(spec);
    return static_cast<std::size_t>(
               std::floor((spec.lat_max - spec.lat_min) / spec.step_deg + kGridEps)) +
           1;
}

std::size_t raster_cols(const RasterSpec& spec) {
    validate(spec);
    return static_cast<std::size_t>(
               std::floor((spec.lon_max - spec.lon_min) / spec.step_deg + kGridEps)) +
           1;
}

std::vector<GeoPoint> raster_points(const RasterSpec& spec) {
    const std::size_t rows = raster_rows(spec);
    const std::size_t cols = raster_cols(spec);
    std::vector<GeoPoint> pts;
    pts.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const double lat = spec.lat_min + static_cast<double>(i) * spec.step_deg;
        for (std::size_t j = 0; j < cols; ++j) {
            pts.push_back({lat, spec.lon_min + static_cast<double>(j) * spec.step_deg});
        }
    }
    return pts;
}

}  // namespace windkrige
