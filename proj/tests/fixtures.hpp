#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "decarb/workbook.hpp"

#ifndef DECARB_DATA_DIR
#error "DECARB_DATA_DIR must point at the bundled workbooks"
#endif

namespace fixtures {

inline std::filesystem::path scenario_dir(int scenario) {
  return std::filesystem::path(DECARB_DATA_DIR) /
         ("scenario" + std::to_string(scenario));
}

inline decarb::Instance scenario(int scenario) {
  return decarb::to_instance(decarb::read_workbook(scenario_dir(scenario)));
}

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("decarb_" + tag + "_" + std::to_string(rd()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// One-period instance with a single fossil plant and one technology of each
// kind, small enough to reason about by hand.
inline decarb::Instance tiny_instance(int periods = 1) {
  using namespace decarb;
  Instance inst;
  inst.horizon.num_periods = periods;
  const PeriodSeries ones(periods, 1.0);
  const PeriodSeries zeros(periods, 0.0);
  PowerPlant coal;
  coal.id = "1";
  coal.category = PlantCategory::kFossil;
  coal.fuel = FuelKind::kCoal;
  coal.fuel_label = "Coal";
  coal.lower_bound = 2.0;
  coal.upper_bound = 10.0;
  coal.co2_intensity = 1.0;
  coal.commission_period = 1;
  coal.decommission_period = periods + 1;
  coal.op_cost = PeriodSeries(periods, 10.0);
  coal.fixed_capex = zeros;
  coal.capacity_capex = zeros;
  inst.plants.push_back(coal);

  inst.ccs_techs.push_back({"CCS_1", PeriodSeries(periods, 0.85),
                            PeriodSeries(periods, 0.15),
                            PeriodSeries(periods, 5.0), zeros});
  inst.alt_fuels.push_back({"SOLID_1", FuelPhase::kSolid,
                            PeriodSeries(periods, 0.1), ones, zeros});
  inst.alt_fuels.push_back({"GAS_1", FuelPhase::kGas,
                            PeriodSeries(periods, 0.2), ones, zeros});
  inst.renewables.push_back({"Solar", PeriodSeries(periods, 0.05),
                             PeriodSeries(periods, 20.0),
                             PeriodSeries(periods, 100.0), zeros, zeros});
  inst.nets.push_back({"EP_1", NetKind::kEnergyProducing,
                       PeriodSeries(periods, -0.5), PeriodSeries(periods, 30.0),
                       PeriodSeries(periods, 100.0), zeros, zeros});
  inst.nets.push_back({"EC_1", NetKind::kEnergyConsuming,
                       PeriodSeries(periods, -1.0), PeriodSeries(periods, 40.0),
                       PeriodSeries(periods, 100.0), zeros, zeros});
  for (int k = 0; k < periods; ++k) {
    inst.period_params.push_back({5.0, 100.0, 1000.0});
  }
  for (const char* id : {"CCS_1", "SOLID_1", "GAS_1", "Solar", "EP_1", "EC_1"}) {
    inst.availability.set(id, std::vector<bool>(periods, true));
  }
  return inst;
}

}  // namespace fixtures
