#include "windmarket/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

#include "windmarket/errors.hpp"

namespace windmarket {

std::vector<double> default_grid() {
    std::vector<double> grid;
    for (int c = 0; c <= 1000; c += 50) grid.push_back(c);
    grid.push_back(505.5);
    std::sort(grid.begin(), grid.end());
    return grid;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_num(const std::string& s, const std::string& what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(what + ": '" + s + "' is not a number");
    return v;
}

bool parse_flag(const std::string& s, const std::string& what) {
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw ParseError(what + ": '" + s + "' is not a boolean");
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::string token;
    auto flush = [&] {
        token = trim(token);
        if (token.empty()) return;
        auto c1 = token.find(':');
        if (c1 == std::string::npos) {
            grid.push_back(parse_num(token, "grid"));
        } else {
            auto c2 = token.find(':', c1 + 1);
            if (c2 == std::string::npos) throw ParseError("grid: range needs lo:hi:step");
            double lo = parse_num(token.substr(0, c1), "grid");
            double hi = parse_num(token.substr(c1 + 1, c2 - c1 - 1), "grid");
            double step = parse_num(token.substr(c2 + 1), "grid");
            if (!(step > 0.0) || hi < lo) throw ParseError("grid: bad range '" + token + "'");
            for (double v = lo; v <= hi + 1e-9; v += step) grid.push_back(v);
        }
        token.clear();
    };
    for (char ch : text) {
        if (ch == ',') flush();
        else token.push_back(ch);
    }
    flush();
    if (grid.empty()) throw ParseError("grid: no capacities given");
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::fabs(a - b) < 1e-9; }),
               grid.end());
    for (double v : grid)
        if (v < 0.0) throw ParseError("grid: capacities must be >= 0");
    return grid;
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open config file");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        auto where = [&] { return path.string() + ":" + std::to_string(line_no) + ": " + key; };
        if (key == "fleet") config.fleet_path = val;
        else if (key == "demand") config.demand_path = val;
        else if (key == "wind") config.wind_path = val;
        else if (key == "curve") config.curve_path = val;
        else if (key == "out") config.out_dir = val;
        else if (key == "grid") config.grid = parse_grid(val);
        else if (key == "time-limit") config.time_limit_seconds = parse_num(val, where());
        else if (key == "mip-gap") config.mip_gap = parse_num(val, where());
        else if (key == "node-limit") config.node_limit = static_cast<long>(parse_num(val, where()));
        else if (key == "uplift-convention") config.uplift_convention = uplift_convention_from_string(val);
        else if (key == "curtailment") config.curtailment = parse_flag(val, where());
        else if (key == "net-price-takers") config.net_price_takers = parse_flag(val, where());
        else if (key == "integer-turbines") config.integer_turbines = parse_flag(val, where());
        else if (key == "jobs") config.jobs = static_cast<int>(parse_num(val, where()));
        else if (key == "seed") config.seed = static_cast<unsigned>(parse_num(val, where()));
        else if (key == "day") config.day = val;
        else if (key == "capacity") config.capacity_mw = parse_num(val, where());
        else if (key == "bin-width") config.bin_width_ms = parse_num(val, where());
        else if (key == "track-unit") config.track_unit = val;
        else throw ParseError(path.string() + ":" + std::to_string(line_no) + ": unknown key '" +
                              key + "'");
    }
}

}  // namespace windmarket
