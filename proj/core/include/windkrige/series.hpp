#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "windkrige/dates.hpp"
#include "windkrige/geo.hpp"

namespace windkrige {

enum class Transform { Raw, Log };

inline const char* to_string(Transform t) { return t == Transform::Raw ? "raw" : "log"; }

// A site's contiguous daily series: values[i] belongs to epoch_date + i.
// A NaN entry marks a missing day until fill_gaps() resolves it.
struct DailySeries {
    GeoPoint site;
    Date epoch_date;
    std::vector<double> values;
    Transform transform = Transform::Raw;

    std::size_t size() const { return values.size(); }
    Date date_at(std::size_t i) const { return epoch_date + static_cast<std::int64_t>(i); }
};

// Hourly resultant wind speeds in m/s; values[i] sits at start + i hours,
// NaN marks a missing hour.
struct HourlySeries {
    GeoPoint site;
    UtcTime start;
    std::vector<double> values;
};

inline bool is_missing(double v) { return std::isnan(v); }

inline bool has_gaps(const DailySeries& s) {
    for (double v : s.values)
        if (is_missing(v)) return true;
    return false;
}

}  // namespace windkrige
