#include "windmarket/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "windmarket/errors.hpp"

namespace windmarket::csv {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

}  // namespace

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

int Table::require_column(const std::string& name) const {
    int c = column(name);
    if (c < 0) throw ParseError(source + ": missing required column '" + name + "'");
    return c;
}

const std::string& Table::cell(std::size_t row, int col) const {
    static const std::string empty;
    if (row >= rows.size() || col < 0 || static_cast<std::size_t>(col) >= rows[row].size())
        return empty;
    return rows[row][static_cast<std::size_t>(col)];
}

Table parse_table(const std::string& text, const std::string& source_name) {
    Table t;
    t.source = source_name;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        auto cells = split_line(line);
        if (!have_header) {
            t.header = cells;
            have_header = true;
            continue;
        }
        if (cells.size() != t.header.size()) {
            throw ParseError(source_name + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(t.header.size()) + " columns, found " +
                             std::to_string(cells.size()));
        }
        t.rows.push_back(std::move(cells));
        t.line_numbers.push_back(line_no);
    }
    if (!have_header) throw ParseError(source_name + ": empty file");
    return t;
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_table(buf.str(), path.string());
}

double to_double(const Table& t, std::size_t row, int col) {
    const std::string& s = t.cell(row, col);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(t.source + ":" + std::to_string(t.line_numbers[row]) + ": column '" +
                         t.header[static_cast<std::size_t>(col)] + "': '" + s +
                         "' is not a number");
    }
    return v;
}

bool to_bool(const Table& t, std::size_t row, int col) {
    const std::string& s = t.cell(row, col);
    if (s == "1" || s == "true" || s == "yes") return true;
    if (s == "0" || s == "false" || s == "no") return false;
    throw ParseError(t.source + ":" + std::to_string(t.line_numbers[row]) + ": column '" +
                     t.header[static_cast<std::size_t>(col)] + "': '" + s + "' is not a boolean");
}

std::string format_fixed(double value, int decimals) {
    if (value == 0.0) value = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

}  // namespace windmarket::csv
