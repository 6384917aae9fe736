#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace windkrige {

// Malformed input file; carries the 1-based line number for diagnostics.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::filesystem::path& file, std::size_t line, const std::string& message)
        : std::runtime_error(file.string() + ":" + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

std::vector<std::string> split_csv_line(std::string_view line);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

double parse_double(std::string_view token, const std::filesystem::path& file, std::size_t line);
std::int64_t parse_int(std::string_view token, const std::filesystem::path& file, std::size_t line);

// Line-oriented CSV reader; no quoting (none of the formats need it).
class CsvReader {
public:
    explicit CsvReader(std::filesystem::path file);

    // Reads the header line and throws unless it matches exactly.
    void expect_header(std::string_view header);

    // Next non-empty row split on commas; false at end of file.
    bool next_row(std::vector<std::string>& fields);

    std::size_t line() const { return line_; }
    const std::filesystem::path& path() const { return path_; }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(path_, line_, message); }

private:
    std::filesystem::path path_;
    std::ifstream stream_;
    std::size_t line_ = 0;
};

class CsvWriter {
public:
    CsvWriter(std::filesystem::path file, std::string_view header);

    void write_row(const std::vector<std::string>& fields);

private:
    std::filesystem::path path_;
    std::ofstream stream_;
};

}  // namespace windkrige
