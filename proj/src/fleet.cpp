#include "windmarket/fleet.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "windmarket/csv.hpp"
#include "windmarket/errors.hpp"

namespace windmarket {

std::string to_string(Tech t) {
    switch (t) {
        case Tech::Hydro: return "Hydro";
        case Tech::SmallHydro: return "SmallHydro";
        case Tech::Gas: return "Gas";
        case Tech::Coal: return "Coal";
        case Tech::Wind: return "Wind";
    }
    return "?";
}

Tech tech_from_string(const std::string& s) {
    if (s == "Hydro") return Tech::Hydro;
    if (s == "SmallHydro" || s == "Small hydro" || s == "Small Hydro") return Tech::SmallHydro;
    if (s == "Gas") return Tech::Gas;
    if (s == "Coal") return Tech::Coal;
    if (s == "Wind") return Tech::Wind;
    throw ParseError("unknown technology '" + s + "'");
}

const Generator* Fleet::find(const std::string& id) const {
    for (const auto& g : generators)
        if (g.id == id) return &g;
    return nullptr;
}

Participation classify_participation(const Generator& g) {
    if (g.p_max_mw > 20.0) return Participation::Mandatory;
    if (g.p_max_mw >= 10.0) return Participation::Optional;
    return Participation::PriceTaker;
}

namespace {

[[noreturn]] void invariant_error(const Generator& g, const std::string& what) {
    throw ValidationError("generator '" + g.id + "': " + what);
}

}  // namespace

void validate_generator(const Generator& g, const FleetLoadOptions& opts) {
    if (g.id.empty()) throw ValidationError("generator with empty id");
    if (!(g.p_min_mw >= 0.0)) invariant_error(g, "p_min must be >= 0");
    if (!(g.p_min_mw <= g.p_max_mw)) invariant_error(g, "p_min must be <= p_max");
    if (!(g.ramp_up_mw > 0.0)) invariant_error(g, "ramp_up must be > 0");
    if (!(g.ramp_down_mw > 0.0)) invariant_error(g, "ramp_down must be > 0");
    if (!(g.energy_cost_cop_mwh >= 0.0)) invariant_error(g, "energy_cost must be >= 0");
    if (!(g.startup_cost_cop >= 0.0)) invariant_error(g, "startup_cost must be >= 0");
    if (!g.initial_on && g.initial_power_mw != 0.0)
        invariant_error(g, "initial_power must be 0 for an initially-off unit");
    if (g.initial_on && (g.initial_power_mw < 0.0 || g.initial_power_mw > g.p_max_mw))
        invariant_error(g, "initial_power must lie in [0, p_max]");
    if ((g.tech == Tech::Hydro || g.tech == Tech::SmallHydro) && g.startup_cost_cop != 0.0 &&
        !opts.allow_nonzero_hydro_startup)
        invariant_error(g, "hydro units bid zero start-up cost (override to allow)");
}

void validate_fleet(const Fleet& f, const FleetLoadOptions& opts) {
    if (f.generators.empty()) throw ValidationError("fleet has no generators");
    std::set<std::string> ids;
    for (const auto& g : f.generators) {
        validate_generator(g, opts);
        if (!ids.insert(g.id).second)
            throw ValidationError("duplicate generator id '" + g.id + "'");
    }
}

namespace {

Fleet fleet_from_csv(const std::filesystem::path& path) {
    csv::Table t = csv::read_table(path);
    if (t.rows.empty()) throw ParseError(path.string() + ": no generator rows");
    int c_id = t.require_column("id");
    int c_name = t.column("name");
    int c_tech = t.require_column("tech");
    int c_pmax = t.require_column("p_max_mw");
    int c_pmin = t.column("p_min_mw");
    int c_ru = t.require_column("ramp_up_mw");
    int c_rd = t.column("ramp_down_mw");
    int c_cost = t.require_column("energy_cost_cop_mwh");
    int c_su = t.require_column("startup_cost_cop");
    int c_on = t.column("initial_on");
    int c_p0 = t.column("initial_power_mw");

    Fleet f;
    f.metadata = path.filename().string();
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        Generator g;
        g.id = t.cell(r, c_id);
        g.name = c_name >= 0 ? t.cell(r, c_name) : g.id;
        try {
            g.tech = tech_from_string(t.cell(r, c_tech));
        } catch (const ParseError& e) {
            throw ParseError(t.source + ":" + std::to_string(t.line_numbers[r]) + ": " + e.what());
        }
        g.p_max_mw = csv::to_double(t, r, c_pmax);
        g.p_min_mw = c_pmin >= 0 && !t.cell(r, c_pmin).empty() ? csv::to_double(t, r, c_pmin) : 0.0;
        g.ramp_up_mw = csv::to_double(t, r, c_ru);
        g.ramp_down_mw =
            c_rd >= 0 && !t.cell(r, c_rd).empty() ? csv::to_double(t, r, c_rd) : g.ramp_up_mw;
        g.energy_cost_cop_mwh = csv::to_double(t, r, c_cost);
        g.startup_cost_cop = csv::to_double(t, r, c_su);
        g.initial_on = c_on >= 0 && !t.cell(r, c_on).empty() ? csv::to_bool(t, r, c_on) : false;
        g.initial_power_mw =
            c_p0 >= 0 && !t.cell(r, c_p0).empty() ? csv::to_double(t, r, c_p0) : 0.0;
        f.generators.push_back(std::move(g));
    }
    return f;
}

Fleet fleet_from_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    Fleet f;
    try {
        f.currency_unit = j.value("currency_unit", "COP");
        f.metadata = j.value("metadata", "");
        for (const auto& gj : j.at("generators")) {
            Generator g;
            g.id = gj.at("id").get<std::string>();
            g.name = gj.value("name", g.id);
            g.tech = tech_from_string(gj.at("tech").get<std::string>());
            g.p_max_mw = gj.at("p_max_mw").get<double>();
            g.p_min_mw = gj.value("p_min_mw", 0.0);
            g.ramp_up_mw = gj.at("ramp_up_mw").get<double>();
            g.ramp_down_mw = gj.value("ramp_down_mw", g.ramp_up_mw);
            g.energy_cost_cop_mwh = gj.at("energy_cost_cop_mwh").get<double>();
            g.startup_cost_cop = gj.at("startup_cost_cop").get<double>();
            g.initial_on = gj.value("initial_on", false);
            g.initial_power_mw = gj.value("initial_power_mw", 0.0);
            f.generators.push_back(std::move(g));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (f.generators.empty()) throw ParseError(path.string() + ": no generator rows");
    return f;
}

}  // namespace

Fleet load_fleet(const std::filesystem::path& path, FleetFormat format,
                 const FleetLoadOptions& opts) {
    Fleet f = format == FleetFormat::Csv ? fleet_from_csv(path) : fleet_from_json(path);
    validate_fleet(f, opts);
    return f;
}

Fleet load_fleet(const std::filesystem::path& path, const FleetLoadOptions& opts) {
    FleetFormat fmt = path.extension() == ".json" ? FleetFormat::Json : FleetFormat::Csv;
    return load_fleet(path, fmt, opts);
}

void write_fleet(const Fleet& f, const std::filesystem::path& path, FleetFormat format) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string() + ": cannot open file for writing");
    if (format == FleetFormat::Csv) {
        out << "id,name,tech,p_max_mw,p_min_mw,ramp_up_mw,ramp_down_mw,"
               "energy_cost_cop_mwh,startup_cost_cop,initial_on,initial_power_mw\n";
        for (const auto& g : f.generators) {
            out << g.id << ',' << g.name << ',' << to_string(g.tech) << ','
                << csv::format_fixed(g.p_max_mw, 3) << ',' << csv::format_fixed(g.p_min_mw, 3)
                << ',' << csv::format_fixed(g.ramp_up_mw, 3) << ','
                << csv::format_fixed(g.ramp_down_mw, 3) << ','
                << csv::format_fixed(g.energy_cost_cop_mwh, 3) << ','
                << csv::format_fixed(g.startup_cost_cop, 3) << ',' << (g.initial_on ? 1 : 0) << ','
                << csv::format_fixed(g.initial_power_mw, 3) << '\n';
        }
    } else {
        nlohmann::json j;
        j["currency_unit"] = f.currency_unit;
        j["metadata"] = f.metadata;
        j["generators"] = nlohmann::json::array();
        for (const auto& g : f.generators) {
            j["generators"].push_back({{"id", g.id},
                                       {"name", g.name},
                                       {"tech", to_string(g.tech)},
                                       {"p_max_mw", g.p_max_mw},
                                       {"p_min_mw", g.p_min_mw},
                                       {"ramp_up_mw", g.ramp_up_mw},
                                       {"ramp_down_mw", g.ramp_down_mw},
                                       {"energy_cost_cop_mwh", g.energy_cost_cop_mwh},
                                       {"startup_cost_cop", g.startup_cost_cop},
                                       {"initial_on", g.initial_on},
                                       {"initial_power_mw", g.initial_power_mw}});
        }
        out << j.dump(2) << '\n';
    }
}

std::vector<DemandProfile> load_demand(const std::filesystem::path& path) {
    csv::Table t = csv::read_table(path);
    if (t.rows.empty()) throw ParseError(path.string() + ": no demand rows");
    int c_label = t.require_column("day_label");
    std::vector<int> hour_cols;
    for (int h = 0; h < 24; ++h) {
        char name[8];
        std::snprintf(name, sizeof(name), "h%02d", h);
        hour_cols.push_back(t.column(name));
    }
    int present = 0;
    for (int c : hour_cols) present += c >= 0 ? 1 : 0;
    if (present != 24)
        throw ParseError(path.string() + ": horizon must be 24 (found " + std::to_string(present) +
                         " hour columns h00..h23)");

    std::vector<DemandProfile> days;
    std::set<std::string> labels;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        DemandProfile d;
        d.day_label = t.cell(r, c_label);
        if (!labels.insert(d.day_label).second)
            throw ValidationError(path.string() + ": duplicate day label '" + d.day_label + "'");
        for (int h = 0; h < 24; ++h) {
            double v = csv::to_double(t, r, hour_cols[static_cast<std::size_t>(h)]);
            if (!(v > 0.0))
                throw ValidationError(path.string() + ":" + std::to_string(t.line_numbers[r]) +
                                      ": day '" + d.day_label + "' hour " + std::to_string(h) +
                                      ": demand must be positive");
            d.demand_mw.push_back(v);
        }
        days.push_back(std::move(d));
    }
    return days;
}

void write_demand(const std::vector<DemandProfile>& days, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string() + ": cannot open file for writing");
    out << "day_label";
    for (int h = 0; h < 24; ++h) {
        char name[8];
        std::snprintf(name, sizeof(name), ",h%02d", h);
        out << name;
    }
    out << '\n';
    for (const auto& d : days) {
        out << d.day_label;
        for (double v : d.demand_mw) out << ',' << csv::format_fixed(v, 3);
        out << '\n';
    }
}

}  // namespace windmarket
