#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace windmarket::csv {

// A parsed CSV file: one header row plus data rows of trimmed cells.
// Blank lines and lines starting with '#' are skipped.
struct Table {
    std::string source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<int> line_numbers;  // 1-based source line of each data row

    int column(const std::string& name) const;          // -1 when absent
    int require_column(const std::string& name) const;  // throws ParseError
    const std::string& cell(std::size_t row, int col) const;
};

Table read_table(const std::filesystem::path& path);
Table parse_table(const std::string& text, const std::string& source_name);

// Cell parsers. Context (file, line, column name) is baked into error messages.
double to_double(const Table& t, std::size_t row, int col);
bool to_bool(const Table& t, std::size_t row, int col);

// Deterministic, locale-independent fixed-point formatting for report files.
std::string format_fixed(double value, int decimals = 6);

}  // namespace windmarket::csv
