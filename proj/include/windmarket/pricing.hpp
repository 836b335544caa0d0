#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "windmarket/uc.hpp"

namespace windmarket {

// The uplift can be read two ways from the source material: the make-whole
// form compensates units whose plant cost exceeds their marginal-price
// revenue; the as-printed form uses the opposite difference. Make-whole is
// the default.
enum class UpliftConvention { MakeWhole, AsPrinted };

std::string to_string(UpliftConvention c);
UpliftConvention uplift_convention_from_string(const std::string& s);

struct PriceReport {
    std::vector<double> mpo;   // hourly marginal price, COP/MWh
    double uplift = 0.0;       // constant adder, COP/MWh
    std::vector<double> spot;  // mpo + uplift
    std::vector<std::uint8_t> all_wind_hour;  // flagged hours with no dispatched unit
};

struct SettlementEntry {
    std::string id;
    double energy_revenue = 0.0;  // spot * dispatch
    double c_plant = 0.0;         // generation + start-up cost
    double c_mpo = 0.0;           // marginal-price revenue
    double reimbursement = 0.0;   // uplift share returned by recovered units
    double retained_uplift = 0.0; // uplift share kept by unrecovered units
    double net_revenue = 0.0;     // energy_revenue - reimbursement
    bool keeper = false;          // true when the unit keeps its uplift share
};

struct SettlementReport {
    std::vector<SettlementEntry> units;  // order matches the schedule
    SettlementEntry wind;                // exogenous wind settled as one agent
    double demand_payment = 0.0;         // sum over hours of spot * demand
};

// Hourly marginal price: the highest energy cost among units dispatched above
// 1e-4 MW; zero (and flagged) when wind alone covers the hour.
std::vector<double> marginal_prices(const UCInstance& inst, const UCSchedule& sched);

double uplift(const UCInstance& inst, const UCSchedule& sched, const std::vector<double>& mpo,
              UpliftConvention convention = UpliftConvention::MakeWhole);

std::vector<double> spot_price(const std::vector<double>& mpo, double uplift_value);

PriceReport compute_prices(const UCInstance& inst, const UCSchedule& sched,
                           UpliftConvention convention = UpliftConvention::MakeWhole);

// Pay every agent the spot price, then settle the uplift: units whose plant
// cost is covered by marginal-price revenue reimburse their uplift share,
// units with unrecovered costs keep theirs.
SettlementReport settle(const UCInstance& inst, const UCSchedule& sched, const PriceReport& prices);

void write_prices_csv(const PriceReport& prices, const std::filesystem::path& path);
void write_settlement_csv(const SettlementReport& report, const std::filesystem::path& path);

}  // namespace windmarket
