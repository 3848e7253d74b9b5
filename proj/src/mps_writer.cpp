#include "decarb/mps_writer.hpp"

#include <cmath>

#include <fmt/format.h>

namespace decarb {

namespace {

// Shortest %g rendering that fits the 12-character numeric field.
std::string number(double v) {
  if (v == 0.0) return "0";
  for (int digits = 12; digits > 1; --digits) {
    std::string s = fmt::format("{:.{}g}", v, digits);
    if (s.size() <= 12) return s;
  }
  return fmt::format("{:.1e}", v);
}

// Data line with fields starting at columns 2, 5, 15, 25, 40 and 50.
std::string line(std::string_view f1, std::string_view f2, std::string_view f3,
                 std::string_view f4, std::string_view f5 = {},
                 std::string_view f6 = {}) {
  std::string s = fmt::format(" {:<2} {:<8}  {:<8}  {:>12}", f1, f2, f3, f4);
  if (!f5.empty()) s += fmt::format("   {:<8}  {:>12}", f5, f6);
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s + "\n";
}

std::string row_name(int i) { return fmt::format("R{:07d}", i + 1); }
std::string col_name(int j) { return fmt::format("C{:07d}", j + 1); }

}  // namespace

std::string MpsExport::name_map_csv() const {
  std::string out = "mps_name,name\n";
  for (const auto& [short_name, name] : names) {
    out += fmt::format("{},\"{}\"\n", short_name, name);
  }
  return out;
}

MpsExport export_mps(const MilpProblem& problem) {
  check_problem(problem);
  MpsExport out;
  std::string& s = out.text;
  const std::string name = problem.name.empty() ? "MODEL" : problem.name;
  s += fmt::format("NAME          {}\n", name.substr(0, 8));
  s += "ROWS\n";
  s += " N  COST\n";
  out.names.emplace_back("COST", "objective");
  for (int i = 0; i < problem.num_constraints(); ++i) {
    const Constraint& c = problem.constraints[i];
    const char* type = c.sense == RowSense::kLessEqual      ? "L"
                       : c.sense == RowSense::kGreaterEqual ? "G"
                                                            : "E";
    s += fmt::format(" {}  {}\n", type, row_name(i));
    out.names.emplace_back(row_name(i), c.name);
  }

  // Column-major view with duplicate terms merged.
  const int n = problem.num_variables();
  std::vector<std::vector<std::pair<int, double>>> cols(n);
  for (int i = 0; i < problem.num_constraints(); ++i) {
    for (const LinearTerm& t : problem.constraints[i].terms) {
      auto& col = cols[t.var];
      if (!col.empty() && col.back().first == i) {
        col.back().second += t.coef;
      } else {
        col.emplace_back(i, t.coef);
      }
    }
  }

  s += "COLUMNS\n";
  bool in_marker = false;
  int marker = 0;
  for (int j = 0; j < n; ++j) {
    const Variable& v = problem.variables[j];
    out.names.emplace_back(col_name(j), v.name);
    const bool general_int = v.integer && !(v.lower == 0.0 && v.upper == 1.0);
    if (general_int != in_marker) {
      const std::string m = fmt::format("MARKER{:02d}", marker++ % 100);
      s += line("", m, "'MARKER'", "",
                general_int ? "'INTORG'" : "'INTEND'");
      in_marker = general_int;
    }
    std::vector<std::pair<std::string, double>> entries;
    if (v.objective != 0.0) entries.emplace_back("COST", v.objective);
    for (const auto& [row, coef] : cols[j]) {
      if (coef != 0.0) entries.emplace_back(row_name(row), coef);
    }
    if (entries.empty()) entries.emplace_back("COST", 0.0);
    for (std::size_t e = 0; e < entries.size(); e += 2) {
      if (e + 1 < entries.size()) {
        s += line("", col_name(j), entries[e].first, number(entries[e].second),
                  entries[e + 1].first, number(entries[e + 1].second));
      } else {
        s += line("", col_name(j), entries[e].first, number(entries[e].second));
      }
    }
  }
  if (in_marker) {
    s += line("", fmt::format("MARKER{:02d}", marker % 100), "'MARKER'", "",
              "'INTEND'");
  }

  s += "RHS\n";
  if (problem.objective_offset != 0.0) {
    s += line("", "RHS", "COST", number(-problem.objective_offset));
  }
  for (int i = 0; i < problem.num_constraints(); ++i) {
    const double rhs = problem.constraints[i].rhs;
    if (rhs != 0.0) s += line("", "RHS", row_name(i), number(rhs));
  }

  s += "BOUNDS\n";
  for (int j = 0; j < n; ++j) {
    const Variable& v = problem.variables[j];
    const std::string c = col_name(j);
    const bool lo_fin = std::isfinite(v.lower);
    const bool up_fin = std::isfinite(v.upper);
    if (v.integer && v.lower == 0.0 && v.upper == 1.0) {
      s += line("BV", "BND", c, "1");
    } else if (lo_fin && up_fin && v.lower == v.upper) {
      s += line("FX", "BND", c, number(v.lower));
    } else if (!lo_fin && !up_fin) {
      s += line("FR", "BND", c, "");
    } else {
      if (!lo_fin) {
        s += line("MI", "BND", c, "");
      } else if (v.lower != 0.0 || v.integer || (up_fin && v.upper < 0.0)) {
        s += line("LO", "BND", c, number(v.lower));
      }
      if (up_fin) {
        s += line("UP", "BND", c, number(v.upper));
      } else if (v.integer) {
        s += line("PL", "BND", c, "");
      }
    }
  }
  s += "ENDATA\n";
  return out;
}

}  // namespace decarb
