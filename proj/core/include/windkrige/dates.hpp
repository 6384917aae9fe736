#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace windkrige {

// Calendar date (proleptic Gregorian), stored as days since 1970-01-01.
class Date {
public:
    Date() = default;
    Date(int year, int month, int day);

    static Date from_serial(std::int64_t days);
    // Parses "YYYY-MM-DD".
    static Date parse(std::string_view iso);

    std::int64_t serial() const { return days_; }
    int year() const;
    int month() const;
    int day() const;
    std::string to_string() const;

    Date operator+(std::int64_t days) const { return from_serial(days_ + days); }
    Date operator-(std::int64_t days) const { return from_serial(days_ - days); }
    std::int64_t operator-(const Date& other) const { return days_ - other.days_; }

    friend auto operator<=>(const Date&, const Date&) = default;

private:
    std::int64_t days_ = 0;
};

// UTC wall-clock timestamp, second resolution.
struct UtcTime {
    Date date;
    int hour = 0;
    int minute = 0;
    int second = 0;

    // Parses "YYYY-MM-DDTHH:MM[:SS]" with optional trailing 'Z'; a space is
    // accepted in place of 'T'.
    static UtcTime parse(std::string_view iso);
    std::string to_string() const;

    std::int64_t hours_since_epoch() const { return date.serial() * 24 + hour; }

    friend auto operator<=>(const UtcTime&, const UtcTime&) = default;
};

}  // namespace windkrige
