#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "support/toys.hpp"
#include "windmarket/errors.hpp"
#include "windmarket/fleet.hpp"

using namespace windmarket;

namespace {

std::filesystem::path data_dir() { return WINDMARKET_DATA; }

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

const char* kHeader =
    "id,name,tech,p_max_mw,p_min_mw,ramp_up_mw,ramp_down_mw,"
    "energy_cost_cop_mwh,startup_cost_cop,initial_on,initial_power_mw\n";

}  // namespace

TEST_CASE("bundled reference fleet loads with the expected unit 47") {
    Fleet f = load_fleet(data_dir() / "fleet_full.csv");
    CHECK(f.generators.size() == 51);
    CHECK(f.generators[46].id == "47");  // row order preserved
    const Generator* g = f.find("47");
    REQUIRE(g != nullptr);
    CHECK(g->p_max_mw == doctest::Approx(30.0));
    CHECK(g->ramp_up_mw == doctest::Approx(6.0));
    CHECK(g->energy_cost_cop_mwh == doctest::Approx(37000.0));
    CHECK(g->startup_cost_cop == doctest::Approx(2889885.0));
    CHECK(g->tech == Tech::Gas);
}

TEST_CASE("participation thresholds") {
    CHECK(classify_participation(toys::gen("a", Tech::Gas, 30, 1, 0, 1)) ==
          Participation::Mandatory);
    CHECK(classify_participation(toys::gen("b", Tech::Gas, 15, 1, 0, 1)) ==
          Participation::Optional);
    CHECK(classify_participation(toys::gen("c", Tech::Gas, 20, 1, 0, 1)) ==
          Participation::Optional);
    CHECK(classify_participation(toys::gen("d", Tech::Gas, 10, 1, 0, 1)) ==
          Participation::Optional);
    CHECK(classify_participation(toys::gen("e", Tech::Gas, 5, 1, 0, 1)) ==
          Participation::PriceTaker);
    CHECK(classify_participation(toys::gen("f", Tech::Gas, 20.0001, 1, 0, 1)) ==
          Participation::Mandatory);
}

TEST_CASE("generator invariants are rejected, not repaired") {
    auto p = write_temp("bad_fleet.csv", std::string(kHeader) +
                                             "x,x,Gas,10,20,5,5,100,0,0,0\n");
    CHECK_THROWS_WITH_AS(load_fleet(p), doctest::Contains("p_min"), ValidationError);

    auto p2 = write_temp("bad_fleet2.csv", std::string(kHeader) +
                                               "x,x,Hydro,10,0,5,5,100,500,0,0\n");
    CHECK_THROWS_WITH_AS(load_fleet(p2), doctest::Contains("start-up"), ValidationError);
    FleetLoadOptions allow;
    allow.allow_nonzero_hydro_startup = true;
    CHECK_NOTHROW(load_fleet(p2, allow));

    auto p3 = write_temp("bad_fleet3.csv", std::string(kHeader) +
                                               "x,x,Gas,10,0,5,5,100,0,0,3\n");
    CHECK_THROWS_WITH_AS(load_fleet(p3), doctest::Contains("initial_power"), ValidationError);

    auto p4 = write_temp("bad_fleet4.csv", std::string(kHeader) +
                                               "x,x,Gas,10,0,5,5,100,0,0,0\n"
                                               "x,y,Gas,12,0,5,5,100,0,0,0\n");
    CHECK_THROWS_WITH_AS(load_fleet(p4), doctest::Contains("duplicate"), ValidationError);
}

TEST_CASE("parse errors carry location") {
    auto p = write_temp("empty_fleet.csv", std::string(kHeader));
    CHECK_THROWS_WITH_AS(load_fleet(p), doctest::Contains("no generator rows"), ParseError);

    auto p2 = write_temp("noncsv.csv", "");
    CHECK_THROWS_AS(load_fleet(p2), ParseError);

    auto p3 = write_temp("badnum.csv", std::string(kHeader) + "x,x,Gas,ten,0,5,5,100,0,0,0\n");
    try {
        load_fleet(p3);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("badnum.csv:2") != std::string::npos);  // row location
        CHECK(msg.find("p_max_mw") != std::string::npos);      // column name
    }

    CHECK_THROWS_AS(load_fleet(data_dir() / "does_not_exist.csv"), ParseError);
}

TEST_CASE("optional columns default") {
    auto p = write_temp("minimal_fleet.csv",
                        "id,name,tech,p_max_mw,ramp_up_mw,energy_cost_cop_mwh,startup_cost_cop\n"
                        "g,gen,Gas,100,50,1000,5\n");
    Fleet f = load_fleet(p);
    const Generator& g = f.generators[0];
    CHECK(g.p_min_mw == 0.0);
    CHECK(g.ramp_down_mw == doctest::Approx(50.0));  // mirrors ramp_up
    CHECK_FALSE(g.initial_on);
    CHECK(g.initial_power_mw == 0.0);
}

TEST_CASE("fleet round trip is lossless in both formats") {
    Fleet f = load_fleet(data_dir() / "fleet_full.csv");
    auto same = [&](const Fleet& g) {
        REQUIRE(g.generators.size() == f.generators.size());
        for (std::size_t i = 0; i < f.generators.size(); ++i) {
            const Generator &a = f.generators[i], &b = g.generators[i];
            CHECK(a.id == b.id);
            CHECK(a.name == b.name);
            CHECK(a.tech == b.tech);
            CHECK(a.p_max_mw == doctest::Approx(b.p_max_mw));
            CHECK(a.p_min_mw == doctest::Approx(b.p_min_mw));
            CHECK(a.ramp_up_mw == doctest::Approx(b.ramp_up_mw));
            CHECK(a.ramp_down_mw == doctest::Approx(b.ramp_down_mw));
            CHECK(a.energy_cost_cop_mwh == doctest::Approx(b.energy_cost_cop_mwh));
            CHECK(a.startup_cost_cop == doctest::Approx(b.startup_cost_cop));
            CHECK(a.initial_on == b.initial_on);
            CHECK(a.initial_power_mw == doctest::Approx(b.initial_power_mw));
        }
    };
    auto pc = std::filesystem::temp_directory_path() / "roundtrip.csv";
    write_fleet(f, pc, FleetFormat::Csv);
    same(load_fleet(pc));
    auto pj = std::filesystem::temp_directory_path() / "roundtrip.json";
    write_fleet(f, pj, FleetFormat::Json);
    same(load_fleet(pj));
}

TEST_CASE("demand loader") {
    auto days = load_demand(data_dir() / "demand_desk.csv");
    CHECK(days.size() == 25);
    for (const auto& d : days) CHECK(d.demand_mw.size() == 24);

    auto p = write_temp("short_demand.csv",
                        "day_label,h00,h01,h02\nd1,1,2,3\n");
    CHECK_THROWS_WITH_AS(load_demand(p), doctest::Contains("horizon must be 24"), ParseError);

    std::string row = "d1";
    for (int h = 0; h < 24; ++h) row += h == 3 ? ",0" : ",100";
    std::string header = "day_label";
    for (int h = 0; h < 24; ++h) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), ",h%02d", h);
        header += buf;
    }
    auto p2 = write_temp("zero_demand.csv", header + "\n" + row + "\n");
    CHECK_THROWS_WITH_AS(load_demand(p2), doctest::Contains("must be positive"),
                         ValidationError);
}
