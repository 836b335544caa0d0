// Regenerates the bundled sample datasets deterministically from a seed.
// The full fleet is the reference 51-unit system; the desk fleet is a small
// 12-unit system sized so a whole capacity sweep runs in minutes. Demand and
// wind series are synthetic and labelled as such.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "windmarket/fleet.hpp"
#include "windmarket/wind.hpp"

using namespace windmarket;

namespace {

struct FullRow {
    const char* id;
    double p_max, ramp, cost, startup;
    const char* tech;
};

// Reference 51-unit generation system (capacity MW, hourly ramp MW,
// energy cost COP/MWh, start-up cost COP).
const FullRow kFullFleet[] = {
    {"1", 167, 33.4, 563830, 48291289, "Gas"},
    {"2", 51, 10.2, 867638, 16566477, "Gas"},
    {"3", 30, 30.5, 0, 0, "SmallHydro"},
    {"4", 135, 90, 0, 0, "SmallHydro"},
    {"5", 1000, 1000, 144114, 0, "Hydro"},
    {"6", 540, 504, 310000, 0, "Hydro"},
    {"7", 1200, 1100, 173300, 0, "Hydro"},
    {"8", 600, 600, 33623, 0, "Hydro"},
    {"9", 61, 12.2, 780000, 42437917, "Gas"},
    {"10", 60, 12, 810000, 42437917, "Gas"},
    {"11", 66, 13.2, 840000, 43129398, "Gas"},
    {"12", 34, 6.8, 130568, 58231563, "Coal"},
    {"13", 63, 12.6, 131000, 66492527, "Coal"},
    {"14", 64, 12.8, 130500, 66492527, "Coal"},
    {"15", 64, 12.8, 128694, 66492527, "Coal"},
    {"16", 60, 30.6, 0, 0, "SmallHydro"},
    {"17", 560, 560, 33623, 0, "Hydro"},
    {"18", 306, 306, 33623, 0, "Hydro"},
    {"19", 201, 201, 220000, 0, "Hydro"},
    {"20", 512, 512, 280000, 0, "Hydro"},
    {"21", 405, 405, 320000, 0, "Hydro"},
    {"22", 660, 660, 164000, 0, "Hydro"},
    {"23", 460, 92, 607654, 143192622, "Gas"},
    {"24", 132, 132, 3000000, 0, "Hydro"},
    {"25", 46, 46, 175000, 0, "Hydro"},
    {"26", 285, 285, 400000, 0, "Hydro"},
    {"27", 429, 381.2, 173000, 0, "Hydro"},
    {"28", 791, 158.2, 148342, 0, "Gas"},
    {"29", 64, 12.8, 719319, 58063051, "Gas"},
    {"30", 63, 12.6, 707036, 58063051, "Gas"},
    {"31", 151, 30.2, 151404, 43574889, "Gas"},
    {"32", 151, 30.2, 146129, 43489665, "Gas"},
    {"33", 31, 6.2, 48000, 72855309, "Coal"},
    {"34", 70, 14, 111000, 77868058, "Coal"},
    {"35", 70, 14, 111000, 77868058, "Coal"},
    {"36", 150, 30, 102000, 48423000, "Coal"},
    {"37", 170, 170, 175000, 0, "Hydro"},
    {"38", 1240, 1240, 187500, 0, "Hydro"},
    {"39", 396, 396, 33800, 0, "Hydro"},
    {"40", 278, 55.6, 85785, 38002370, "Gas"},
    {"41", 78, 70.8, 0, 0, "SmallHydro"},
    {"42", 90, 18, 266548, 20899367, "Gas"},
    {"43", 157, 31.4, 1381136, 38389754, "Gas"},
    {"44", 157, 31.4, 1362870, 38389754, "Gas"},
    {"45", 229, 45.8, 1200000, 131175970, "Gas"},
    {"46", 205, 41, 263000, 110619438, "Gas"},
    {"47", 30, 6, 37000, 2889885, "Gas"},
    {"48", 155, 31, 141480, 100080656, "Coal"},
    {"49", 338, 332, 380000, 0, "Hydro"},
    {"50", 160, 32, 968740, 29334653, "Gas"},
    {"51", 450, 90, 170230, 78520800, "Gas"},
};

Fleet full_fleet() {
    Fleet f;
    f.metadata = "51-unit reference system; thermal base units start the day online";
    for (const auto& r : kFullFleet) {
        Generator g;
        g.id = r.id;
        g.name = "G" + std::string(r.id);
        g.tech = tech_from_string(r.tech);
        g.p_max_mw = r.p_max;
        g.p_min_mw = 0.0;
        g.ramp_up_mw = r.ramp;
        g.ramp_down_mw = r.ramp;
        g.energy_cost_cop_mwh = r.cost;
        g.startup_cost_cop = r.startup;
        // Thermal units cheap enough to run around the clock are modelled as
        // already online at full output from the previous day.
        bool thermal = g.tech == Tech::Gas || g.tech == Tech::Coal;
        if (thermal && g.energy_cost_cop_mwh <= 200000.0 && g.startup_cost_cop > 0.0) {
            g.initial_on = true;
            g.initial_power_mw = g.p_max_mw;
        }
        f.generators.push_back(std::move(g));
    }
    return f;
}

Fleet desk_fleet() {
    Fleet f;
    f.metadata = "12-unit desk system for fast sweeps";
    auto add = [&](const char* id, Tech tech, double p_max, double cost, double su, double ramp,
                   bool on0 = false, double p0 = 0.0) {
        Generator g;
        g.id = id;
        g.name = id;
        g.tech = tech;
        g.p_max_mw = p_max;
        g.p_min_mw = 0.0;
        g.ramp_up_mw = ramp;
        g.ramp_down_mw = ramp;
        g.energy_cost_cop_mwh = cost;
        g.startup_cost_cop = su;
        g.initial_on = on0;
        g.initial_power_mw = p0;
        f.generators.push_back(std::move(g));
    };
    add("sh1", Tech::SmallHydro, 90, 0, 0, 90);
    add("sh2", Tech::SmallHydro, 60, 0, 0, 60);
    add("h1", Tech::Hydro, 700, 62000, 0, 700);
    add("h2", Tech::Hydro, 550, 71000, 0, 550);
    add("h3", Tech::Hydro, 420, 80000, 0, 420);
    add("h4", Tech::Hydro, 380, 95000, 0, 380);
    add("h5", Tech::Hydro, 3400, 185000, 0, 3400);  // flexible balancing unit
    add("h6", Tech::Hydro, 260, 52000, 0, 260);
    // Start-up costs increase along the merit order so commitment follows a
    // clean last-on-first-off pattern as wind displaces the peak.
    add("g1", Tech::Gas, 320, 55000, 20000000, 320, true, 320);  // gas base load
    add("g2", Tech::Gas, 250, 105000, 1500000, 250);
    add("g3", Tech::Gas, 180, 135000, 2500000, 180);  // evening peaker
    add("g4", Tech::Gas, 150, 240000, 8000000, 150);  // reserve unit, rarely economic
    return f;
}

const double kDeskShape[24] = {1650, 1600, 1560, 1540, 1540, 1580, 1700, 1900,
                               2150, 2350, 2500, 2620, 2700, 2760, 2820, 2900,
                               3000, 3120, 3180, 3160, 3000, 2700, 2250, 1850};

const double kFullShape[24] = {7050, 6950, 6900, 6880, 6900, 6980, 7200, 7500,
                               7900, 8250, 8500, 8650, 8700, 8730, 8760, 8830,
                               8950, 9100, 9300, 9280, 9050, 8600, 8050, 7500};

std::vector<DemandProfile> make_demand(const double* shape, int days, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> noise(-0.003, 0.003);
    std::vector<DemandProfile> out;
    for (int d = 0; d < days; ++d) {
        DemandProfile p;
        char label[16];
        std::snprintf(label, sizeof(label), "day%02d", d + 1);
        p.day_label = label;
        double scale = 0.97 + 0.0024 * d;
        for (int h = 0; h < 24; ++h) {
            double v = shape[h] * scale * (1.0 + noise(rng));
            p.demand_mw.push_back(std::round(v * 10.0) / 10.0);
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<WindDay> make_wind(int days, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gust(0.0, 1.1);
    std::vector<WindDay> out;
    for (int d = 0; d < days; ++d) {
        WindDay w;
        char label[16];
        std::snprintf(label, sizeof(label), "day%02d", d + 1);
        w.day_label = label;
        for (int h = 0; h < 24; ++h) {
            double diurnal = 8.5 + 2.3 * std::sin(2.0 * M_PI * (h - 15.0) / 24.0);
            double n = std::clamp(gust(rng), -2.5, 2.5);
            double v = std::clamp(diurnal + n, 0.4, 13.3);
            w.speeds_ms.push_back(std::round(v * 100.0) / 100.0);
        }
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path out_dir = "data";
    unsigned seed = 1;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--out" && i + 1 < argc) out_dir = argv[++i];
        else if (arg == "--seed" && i + 1 < argc) seed = static_cast<unsigned>(std::stoul(argv[++i]));
        else {
            std::cerr << "usage: gen_data [--out DIR] [--seed N]\n";
            return 1;
        }
    }
    std::filesystem::create_directories(out_dir);

    Fleet full = full_fleet();
    validate_fleet(full);
    write_fleet(full, out_dir / "fleet_full.csv", FleetFormat::Csv);
    write_fleet(full, out_dir / "fleet_full.json", FleetFormat::Json);

    Fleet desk = desk_fleet();
    validate_fleet(desk);
    write_fleet(desk, out_dir / "fleet_desk.csv", FleetFormat::Csv);

    write_demand(make_demand(kDeskShape, 25, seed), out_dir / "demand_desk.csv");
    write_demand(make_demand(kFullShape, 25, seed + 1), out_dir / "demand_full.csv");
    write_wind(make_wind(25, seed + 2), out_dir / "wind.csv");
    write_curve(default_power_curve(), out_dir / "curve.csv");

    std::cout << "wrote sample data to " << out_dir.string() << " (seed " << seed << ")\n";
    return 0;
}
