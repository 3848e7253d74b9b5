#pragma once

#include <string_view>

namespace decarb {

// Groups of constraints in the planning model. The model builder tags every
// row with one of these and the auditor reports residuals under the same tags.
enum class ConstraintFamily {
  kDemand,             // plant gross output meets demand
  kPlantMinOutput,     // gross >= lower bound when the plant runs
  kPlantMaxOutput,     // gross <= upper bound when the plant runs
  kPlantWindow,        // nothing runs outside [CM_i, DCM_i)
  kPlantRatchet,       // gross output never falls while commissioned
  kPlantOnRatchet,     // run flag never drops while commissioned
  kCcsMax,             // retrofit energy within plant capacity
  kCcsTotal,           // retrofit energy within plant gross output
  kCcsRatchet,
  kCcsNet,             // net = gross * (1 - parasitic loss)
  kSolidRatchet,
  kGasRatchet,
  kSolidMax,
  kGasMax,
  kPlantSplit,         // unabated + retrofit + substituted = gross
  kRenewableMax,
  kEpNetMax,
  kEcNetMax,
  kRenewableRatchet,
  kEpNetRatchet,
  kEcNetRatchet,
  kEnergyBalance,      // net supply = demand + EC-NET consumption
  kEmissions,          // CO2 load definition
  kPlantCost,
  kRenewableCost,
  kEpNetCost,
  kEcNetCost,
  kTotalCost,
  kEmissionLimit,
  kBudget,
  kAvailability,       // unavailable technology deployed
  kAttachment,         // retrofit/fuel on a plant that cannot take it
  kIntegrality,
  kBounds,             // sign restrictions on flows and costs
};

inline constexpr int kNumConstraintFamilies =
    static_cast<int>(ConstraintFamily::kBounds) + 1;

std::string_view to_string(ConstraintFamily family);

}  // namespace decarb
