#include "lstamm/csv.hpp"

#include "lstamm/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace lstamm {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const std::string_view field =
            line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.emplace_back(trim(field));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string join(std::span<const std::string_view> columns) {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    return out;
}

const std::string& field_at(const CsvTable& table, const CsvRow& row, std::size_t column) {
    if (column >= row.fields.size()) {
        throw SchemaError(table.file, row.line, column + 1, "missing field");
    }
    return row.fields[column];
}

std::string column_name(const CsvTable& table, std::size_t column) {
    return column < table.header.size() ? table.header[column] : "?";
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path, std::span<const std::string_view> columns) {
    CsvTable table;
    table.file = path.string();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError(table.file, 0, 0, "cannot open file");

    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        view = trim(view);
        if (view.empty() || view.front() == '#') continue;
        auto fields = split(view);
        if (!have_header) {
            bool match = fields.size() == columns.size();
            for (std::size_t i = 0; match && i < columns.size(); ++i) match = fields[i] == columns[i];
            if (!match) {
                throw SchemaError(table.file, line_no, 0,
                                  "header must be '" + join(columns) + "', got '" + std::string(view) + "'");
            }
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != columns.size()) {
            throw SchemaError(table.file, line_no, std::min(fields.size(), columns.size()) + 1,
                              "expected " + std::to_string(columns.size()) + " fields, got " +
                                  std::to_string(fields.size()));
        }
        table.rows.push_back({line_no, std::move(fields)});
    }
    if (!have_header) throw SchemaError(table.file, 0, 0, "empty file: header row required");
    if (table.rows.empty()) throw SchemaError(table.file, line_no, 0, "no data rows");
    return table;
}

double parse_number(const CsvTable& table, const CsvRow& row, std::size_t column) {
    const std::string& text = field_at(table, row, column);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw SchemaError(table.file, row.line, column + 1,
                          "column '" + column_name(table, column) + "': not a finite decimal number: '" +
                              text + "'");
    }
    return value;
}

std::int64_t parse_integer(const CsvTable& table, const CsvRow& row, std::size_t column) {
    const std::string& text = field_at(table, row, column);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw SchemaError(table.file, row.line, column + 1,
                          "column '" + column_name(table, column) + "': not an integer: '" + text + "'");
    }
    return value;
}

Date parse_date(const CsvTable& table, const CsvRow& row, std::size_t column) {
    const std::string& text = field_at(table, row, column);
    Date out;
    if (!parse_iso_date(text, out)) {
        throw SchemaError(table.file, row.line, column + 1,
                          "column '" + column_name(table, column) + "': not an ISO-8601 date: '" + text + "'");
    }
    return out;
}

bool parse_iso_date(std::string_view text, Date& out) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    auto num = [&](std::size_t pos, std::size_t len, auto& v) {
        const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, v);
        return ec == std::errc() && ptr == text.data() + pos + len;
    };
    if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) return false;
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) return false;
    out = Date{ymd};
    return true;
}

std::string format_date(Date date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::vector<std::string> missing_day_ranges(std::span<const Date> sorted_dates) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i < sorted_dates.size(); ++i) {
        const auto gap = (sorted_dates[i] - sorted_dates[i - 1]).count();
        if (gap <= 1) continue;
        const Date first = sorted_dates[i - 1] + std::chrono::days{1};
        const Date last = sorted_dates[i] - std::chrono::days{1};
        out.push_back(first == last ? format_date(first) : format_date(first) + ".." + format_date(last));
    }
    return out;
}

}  // namespace lstamm
