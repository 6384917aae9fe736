#include "windkrige/dates.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace windkrige {

namespace {

namespace chrono = std::chrono;

chrono::year_month_day ymd_of(std::int64_t serial) {
    return chrono::year_month_day{chrono::sys_days{chrono::days{serial}}};
}

int parse_field(std::string_view text, std::size_t pos, std::size_t len, const char* what) {
    if (pos + len > text.size()) throw std::invalid_argument(std::string("truncated ") + what);
    int value = 0;
    const char* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, value);
    if (ec != std::errc{} || ptr != first + len)
        throw std::invalid_argument(std::string("bad ") + what + " in '" + std::string(text) + "'");
    return value;
}

}  // namespace

Date::Date(int year, int month, int day) {
    const chrono::year_month_day ymd{chrono::year{year}, chrono::month{static_cast<unsigned>(month)},
                                     chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
        throw std::invalid_argument(std::string("invalid calendar date ") + buf);
    }
    days_ = chrono::sys_days{ymd}.time_since_epoch().count();
}

Date Date::from_serial(std::int64_t days) {
    Date d;
    d.days_ = days;
    return d;
}

Date Date::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
        throw std::invalid_argument("expected YYYY-MM-DD, got '" + std::string(iso) + "'");
    return Date(parse_field(iso, 0, 4, "year"), parse_field(iso, 5, 2, "month"),
                parse_field(iso, 8, 2, "day"));
}

int Date::year() const { return static_cast<int>(ymd_of(days_).year()); }
int Date::month() const { return static_cast<int>(static_cast<unsigned>(ymd_of(days_).month())); }
int Date::day() const { return static_cast<int>(static_cast<unsigned>(ymd_of(days_).day())); }

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year(), month(), day());
    return buf;
}

UtcTime UtcTime::parse(std::string_view iso) {
    if (iso.size() < 16) throw std::invalid_argument("timestamp too short: '" + std::string(iso) + "'");
    if (iso[10] != 'T' && iso[10] != ' ')
        throw std::invalid_argument("expected 'T' between date and time in '" + std::string(iso) + "'");
    UtcTime t;
    t.date = Date::parse(iso.substr(0, 10));
    t.hour = parse_field(iso, 11, 2, "hour");
    if (iso[13] != ':') throw std::invalid_argument("expected ':' after hour in '" + std::string(iso) + "'");
    t.minute = parse_field(iso, 14, 2, "minute");
    std::size_t rest = 16;
    if (rest < iso.size() && iso[rest] == ':') {
        t.second = parse_field(iso, rest + 1, 2, "second");
        rest += 3;
    }
    if (rest < iso.size() && iso[rest] == 'Z') rest += 1;
    if (rest != iso.size())
        throw std::invalid_argument("trailing characters in timestamp '" + std::string(iso) + "'");
    if (t.hour > 23 || t.minute > 59 || t.second > 59)
        throw std::invalid_argument("time of day out of range in '" + std::string(iso) + "'");
    return t;
}

std::string UtcTime::to_string() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", date.to_string().c_str(), hour, minute,
                  second);
    return buf;
}

}  // namespace windkrige
