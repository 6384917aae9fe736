#include "windkrige/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace windkrige {

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        double back = 0.0;
        const auto* end = buf + std::char_traits<char>::length(buf);
        std::from_chars(buf, end, back);
        if (back == v) return buf;
    }
    return buf;
}

double parse_double(std::string_view token, const std::filesystem::path& file, std::size_t line) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(file, line, "expected a number, got '" + std::string(token) + "'");
    return value;
}

std::int64_t parse_int(std::string_view token, const std::filesystem::path& file, std::size_t line) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(file, line, "expected an integer, got '" + std::string(token) + "'");
    return value;
}

CsvReader::CsvReader(std::filesystem::path file) : path_(std::move(file)), stream_(path_) {
    if (!stream_) throw std::runtime_error("cannot open " + path_.string());
}

void CsvReader::expect_header(std::string_view header) {
    std::string line;
    if (!std::getline(stream_, line)) throw ParseError(path_, 1, "missing header");
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header)
        throw ParseError(path_, line_,
                         "unexpected header '" + line + "', expected '" + std::string(header) + "'");
}

bool CsvReader::next_row(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(stream_, line)) {
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        fields = split_csv_line(line);
        return true;
    }
    return false;
}

CsvWriter::CsvWriter(std::filesystem::path file, std::string_view header)
    : path_(std::move(file)), stream_(path_, std::ios::trunc) {
    if (!stream_) throw std::runtime_error("cannot open " + path_.string() + " for writing");
    stream_ << header << '\n';
}

void CsvWriter::write_row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) stream_ << ',';
        stream_ << fields[i];
    }
    stream_ << '\n';
    if (!stream_) throw std::runtime_error("write failed on " + path_.string());
}

}  // namespace windkrige
