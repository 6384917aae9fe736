#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "windkrige/geo.hpp"

namespace windkrige {
namespace {

GeoPoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> lat(-89.0, 89.0);
    std::uniform_real_distribution<double> lon(-180.0, 180.0 - 1e-9);
    return {lat(rng), lon(rng)};
}

TEST_CASE("haversine: identical points are zero distance") {
    CHECK(haversine_km({0.0, 0.0}, {0.0, 0.0}) == 0.0);
    CHECK(haversine_km({35.2, -118.7}, {35.2, -118.7}) == 0.0);
}

TEST_CASE("haversine: one degree of meridian arc") {
    // pi * R / 180 with R = 6371
    const double expected = std::numbers::pi * kEarthRadiusKm / 180.0;
    CHECK(haversine_km({0.0, 0.0}, {1.0, 0.0}) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(expected == doctest::Approx(111.195).epsilon(1e-4));
}

TEST_CASE("haversine: half-degree arc along a meridian") {
    const double expected = 0.5 * std::numbers::pi * kEarthRadiusKm / 180.0;
    CHECK(haversine_km({35.0, -118.0}, {35.5, -118.0}) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(expected == doctest::Approx(55.597).epsilon(1e-4));
}

TEST_CASE("haversine: exact symmetry and triangle inequality on random triples") {
    std::mt19937_64 rng(20240201);
    for (int trial = 0; trial < 500; ++trial) {
        const GeoPoint a = random_point(rng);
        const GeoPoint b = random_point(rng);
        const GeoPoint c = random_point(rng);
        CHECK(haversine_km(a, b) == haversine_km(b, a));  // bit-exact
        CHECK(haversine_km(a, c) <= haversine_km(a, b) + haversine_km(b, c) + 1e-9);
        CHECK(haversine_km(a, b) >= 0.0);
    }
}

TEST_CASE("geo point validation") {
    CHECK_THROWS_AS(validate(GeoPoint{91.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(GeoPoint{0.0, 180.0}), std::invalid_argument);
    CHECK_NOTHROW(validate(GeoPoint{-90.0, -180.0}));
}

TEST_CASE("raster: 3x3 lattice, row-major with latitude outer") {
    const RasterSpec spec{0.0, 0.02, 0.0, 0.02, 0.01};
    const auto pts = raster_points(spec);
    REQUIRE(pts.size() == 9);
    CHECK(pts[0] == GeoPoint{0.0, 0.0});
    CHECK(pts[1].lon_deg == doctest::Approx(0.01));
    CHECK(pts[1].lat_deg == 0.0);
    CHECK(pts[3].lat_deg == doctest::Approx(0.01));
    CHECK(pts[3].lon_deg == 0.0);
    CHECK(pts[8].lat_deg == doctest::Approx(0.02));
    CHECK(pts[8].lon_deg == doctest::Approx(0.02));
}

TEST_CASE("raster: degenerate spans are errors") {
    CHECK_THROWS_AS(raster_points(RasterSpec{0.0, 0.0, 0.0, 1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(raster_points(RasterSpec{0.0, 1.0, 1.0, 1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(raster_points(RasterSpec{0.0, 1.0, 0.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("raster: Southern California 0.01 degree cell count") {
    const RasterSpec spec{32.0, 37.0, -121.0, -114.0, 0.01};
    CHECK(raster_rows(spec) == 501);
    CHECK(raster_cols(spec) == 701);
    CHECK(raster_rows(spec) * raster_cols(spec) == 351201);
}

TEST_CASE("raster: point count matches the span formula and stays in bounds") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> origin(-50.0, 50.0);
    std::uniform_real_distribution<double> span(0.05, 3.0);
    std::uniform_real_distribution<double> step(0.01, 0.5);
    for (int trial = 0; trial < 50; ++trial) {
        RasterSpec spec;
        spec.lat_min = origin(rng);
        spec.lat_max = spec.lat_min + span(rng);
        spec.lon_min = origin(rng);
        spec.lon_max = spec.lon_min + span(rng);
        spec.step_deg = step(rng);
        const auto pts = raster_points(spec);
        const auto expect_rows = static_cast<std::size_t>(
                                     std::floor((spec.lat_max - spec.lat_min) / spec.step_deg + 1e-9)) +
                                 1;
        const auto expect_cols = static_cast<std::size_t>(
                                     std::floor((spec.lon_max - spec.lon_min) / spec.step_deg + 1e-9)) +
                                 1;
        CHECK(pts.size() == expect_rows * expect_cols);
        CHECK(pts.front().lat_deg == spec.lat_min);
        CHECK(pts.front().lon_deg == spec.lon_min);
        CHECK(pts.back().lat_deg <= spec.lat_max + 1e-9);
        CHECK(pts.back().lon_deg <= spec.lon_max + 1e-9);
    }
}

}  // namespace
}  // namespace windkrige
