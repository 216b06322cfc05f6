#pragma once

// Minimal CSV reading/writing for the backtest file formats: UTF-8, comma
// separated, header row required, '#' comment lines and blank lines ignored,
// no quoting.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lstamm {

using Date = std::chrono::sys_days;

struct CsvRow {
    std::size_t line = 0;  // 1-based line number in the file
    std::vector<std::string> fields;
};

struct CsvTable {
    std::string file;
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

/// Reads `path` and checks that the header equals `columns` exactly.
/// Throws SchemaError for unreadable or empty files, header mismatches and
/// rows with the wrong number of fields.
CsvTable read_csv(const std::filesystem::path& path, std::span<const std::string_view> columns);

/// Field parsers; errors carry file, line and 1-based column.
double parse_number(const CsvTable& table, const CsvRow& row, std::size_t column);
std::int64_t parse_integer(const CsvTable& table, const CsvRow& row, std::size_t column);
Date parse_date(const CsvTable& table, const CsvRow& row, std::size_t column);

/// Strict ISO-8601 calendar date (YYYY-MM-DD); returns false on failure.
bool parse_iso_date(std::string_view text, Date& out);
std::string format_date(Date date);

/// Round-trip-safe decimal formatting (17 significant digits).
std::string format_double(double value);

/// Days in [from, to] missing from the sorted list, compressed into
/// "YYYY-MM-DD" or "YYYY-MM-DD..YYYY-MM-DD" ranges.
std::vector<std::string> missing_day_ranges(std::span<const Date> sorted_dates);

}  // namespace lstamm
