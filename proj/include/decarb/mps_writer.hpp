#pragma once

#include <string>
#include <utility>
#include <vector>

#include "decarb/milp_problem.hpp"

namespace decarb {

struct MpsExport {
  std::string text;  // fixed-format MPS
  // (short name, original name) for every row and column, objective first.
  std::vector<std::pair<std::string, std::string>> names;

  // Two-column CSV "mps_name,name" of `names`.
  std::string name_map_csv() const;
};

// Fixed-format MPS. Rows become R0000001.., columns C0000001.., the
// objective row is COST; binaries are written as BV bounds, other integer
// columns between MARKER lines with explicit bounds.
MpsExport export_mps(const MilpProblem& problem);

}  // namespace decarb
