#include "decarb/workbook.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace decarb {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string>& period_tables() {
  static const std::vector<std::string> names = {
      "ENERGY_PLANNING_DATA", "FUEL_COST_DATA",   "RENEWABLE_CI_DATA",
      "RENEWABLE_COST_DATA",  "CAPEX_DATA_1",     "CAPEX_DATA_2",
      "ALT_SOLID_CI",         "ALT_SOLID_COST",   "ALT_GAS_CI",
      "ALT_GAS_COST",         "CCS_DATA",         "NET_CI_DATA",
      "NET_COST_DATA"};
  return names;
}

const std::map<std::string, std::string>& table_aliases() {
  static const std::map<std::string, std::string> aliases = {
      {"RENEWABLE_CI_DATA", "COMPENSATORY_CI_DATA"}};
  return aliases;
}

using CsvRows = std::vector<std::vector<std::string>>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

CsvRows parse_csv(const std::string& text) {
  CsvRows rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t i = 0;
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) i = 3;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    any = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(trim(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(trim(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field.push_back(c);
    }
  }
  if (any) {
    row.push_back(trim(field));
    rows.push_back(std::move(row));
  }
  // Lines with nothing but separators carry no data.
  std::erase_if(rows, [](const std::vector<std::string>& r) {
    return std::all_of(r.begin(), r.end(),
                       [](const std::string& f) { return f.empty(); });
  });
  return rows;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw fs::filesystem_error("cannot open file", path,
                               std::make_error_code(std::errc::io_error));
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) {
    throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  }
}

std::optional<double> parse_number(const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) return std::nullopt;
  return v;
}

std::string cell(const std::vector<std::string>& row, std::size_t c) {
  return c < row.size() ? row[c] : std::string();
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

std::string exact(double v) { return fmt::format("{}", v); }

class Reader {
 public:
  explicit Reader(const fs::path& dir) : dir_(dir) {}

  Workbook read() {
    if (!fs::is_directory(dir_)) {
      throw fs::filesystem_error("workbook path is not a directory", dir_,
                                 std::make_error_code(std::errc::not_a_directory));
    }
    std::map<std::string, CsvRows> raw;
    for (const std::string& name : canonical_tables()) {
      const auto path = locate(name);
      if (!path) {
        issue(fmt::format("missing table {} ({}.csv)", name, name));
        continue;
      }
      raw[name] = parse_csv(read_file(*path));
    }
    if (!issues_.empty()) throw WorkbookError(issues_);

    Workbook wb;
    if (const auto cfg = dir_ / "RUN_CONFIG.csv"; fs::exists(cfg)) {
      wb.config = read_config(parse_csv(read_file(cfg)));
    }
    wb.num_periods = wb.config.num_periods > 0
                         ? wb.config.num_periods
                         : header_periods(raw["ENERGY_PLANNING_DATA"]);
    check_period_counts(raw, wb.num_periods);
    if (!issues_.empty()) throw WorkbookError(issues_);
    wb.config.num_periods = wb.num_periods;

    for (const std::string& name : period_tables()) {
      wb.tables[name] = read_period_table(name, raw[name], wb.num_periods);
    }
    wb.availability = read_availability(raw["TECH_IMPLEMENTATION_TIME"],
                                         wb.num_periods);
    wb.plants = read_plants(raw["PLANT_DATA"]);
    if (!issues_.empty()) throw WorkbookError(issues_);
    return wb;
  }

 private:
  void issue(std::string text) { issues_.push_back(std::move(text)); }

  std::optional<fs::path> locate(const std::string& name) const {
    if (auto p = dir_ / (name + ".csv"); fs::exists(p)) return p;
    if (const auto it = table_aliases().find(name); it != table_aliases().end()) {
      if (auto p = dir_ / (it->second + ".csv"); fs::exists(p)) return p;
    }
    return std::nullopt;
  }

  RunConfig read_config(const CsvRows& rows) {
    RunConfig cfg;
    for (const auto& row : rows) {
      const std::string key = normalize_label(cell(row, 0));
      const std::string value = cell(row, 1);
      if (key.empty() || key == "key") continue;
      if (key == "objective") {
        try {
          cfg.objective = parse_objective(normalize_label(value));
        } catch (const std::invalid_argument&) {
          issue(fmt::format(
              "RUN_CONFIG row 'objective', column 'value': '{}' is not "
              "min_budget or min_emission",
              value));
        }
      } else if (key == "num_periods") {
        const auto v = parse_number(value);
        if (!v || *v != static_cast<int>(*v) || *v < 1 || *v > kMaxPeriods) {
          issue(fmt::format(
              "RUN_CONFIG row 'num_periods', column 'value': '{}' is not an "
              "integer in 1..{}",
              value, kMaxPeriods));
        } else {
          cfg.num_periods = static_cast<int>(*v);
        }
      } else if (key == "aff") {
        const auto v = parse_number(value);
        if (!v) {
          issue(fmt::format(
              "RUN_CONFIG row 'aff', column 'value': '{}' is not a number",
              value));
        } else {
          cfg.aff = *v;
        }
      } else {
        issue(fmt::format("RUN_CONFIG row '{}', column 'key': unknown key",
                          cell(row, 0)));
      }
    }
    return cfg;
  }

  static int header_periods(const CsvRows& rows) {
    if (rows.empty()) return 0;
    int n = static_cast<int>(rows[0].size()) - 1;
    while (n > 0 && rows[0][n].empty()) --n;
    return n;
  }

  void check_period_counts(const std::map<std::string, CsvRows>& raw, int K) {
    std::vector<std::string> offenders;
    for (const auto& [name, rows] : raw) {
      if (name == "PLANT_DATA") continue;
      const int found = header_periods(rows);
      if (found != K) {
        offenders.push_back(fmt::format("{} ({})", name, found));
        continue;
      }
      for (int k = 1; k <= K; ++k) {
        const std::string& h = rows[0][k];
        const auto v = parse_number(h);
        if (!v || *v != k) {
          issue(fmt::format("{} row 'header', column '{}': expected period {}",
                            name, h, k));
        }
      }
    }
    if (!offenders.empty()) {
      std::string list;
      for (const auto& o : offenders) list += (list.empty() ? "" : ", ") + o;
      issue(fmt::format("period count mismatch: expected {} periods, found {}",
                        K, list));
    }
  }

  PeriodTable read_period_table(const std::string& name, const CsvRows& rows,
                                int K) {
    PeriodTable table;
    const std::vector<std::string>& header = rows.front();
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      const std::string label = cell(row, 0);
      if (label.empty()) {
        issue(fmt::format("{} row {}: missing row label", name, r + 1));
        continue;
      }
      const std::vector<double>* above =
          table.rows.empty() ? nullptr : &table.rows.back();
      bool blank = true;
      for (int k = 1; k <= K; ++k) blank = blank && cell(row, k).empty();
      std::vector<double> values(K, 0.0);
      if (blank) {
        if (above == nullptr) {
          issue(fmt::format("{} row '{}': no values and no row above to copy",
                            name, label));
          continue;
        }
        values = *above;
      } else {
        for (int k = 1; k <= K; ++k) {
          const std::string text = cell(row, k);
          if (text.empty()) {
            if (k > 1) {
              values[k - 1] = values[k - 2];
            } else if (above != nullptr) {
              values[0] = (*above)[0];
            } else {
              issue(fmt::format(
                  "{} row '{}', column '{}': blank with nothing to inherit",
                  name, label, header[k]));
            }
            continue;
          }
          const auto v = parse_number(text);
          if (!v) {
            issue(fmt::format("{} row '{}', column '{}': '{}' is not a number",
                              name, label, header[k], text));
            continue;
          }
          values[k - 1] = *v;
        }
      }
      table.add(label, std::move(values));
    }
    return table;
  }

  std::vector<std::pair<std::string, std::vector<bool>>> read_availability(
      const CsvRows& rows, int K) {
    std::vector<std::pair<std::string, std::vector<bool>>> out;
    const std::vector<std::string>& header = rows.front();
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      const std::string label = cell(row, 0);
      if (label.empty()) {
        issue(fmt::format("TECH_IMPLEMENTATION_TIME row {}: missing row label",
                          r + 1));
        continue;
      }
      std::vector<bool> flags(K, false);
      for (int k = 1; k <= K; ++k) {
        const std::string v = normalize_label(cell(row, k));
        if (v == "yes") {
          flags[k - 1] = true;
        } else if (v != "no") {
          issue(fmt::format(
              "TECH_IMPLEMENTATION_TIME row '{}', column '{}': '{}' is not YES "
              "or NO",
              label, header[k], cell(row, k)));
        }
      }
      out.emplace_back(label, std::move(flags));
    }
    return out;
  }

  std::vector<PlantRecord> read_plants(const CsvRows& rows) {
    static const char* kColumns[] = {"Plant", "Category", "Fuel",
                                     "Lower Bound", "Upper Bound",
                                     "CO2 Intensity", "CM", "DCM"};
    std::vector<PlantRecord> out;
    if (rows.empty()) return out;
    const auto& header = rows.front();
    auto column = [&](int c) {
      const std::string h = cell(header, c);
      return h.empty() ? std::string(kColumns[c]) : h;
    };
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      PlantRecord p;
      p.id = cell(row, 0);
      if (p.id.empty()) {
        issue(fmt::format("PLANT_DATA row {}: missing plant id", r + 1));
        continue;
      }
      p.category = cell(row, 1);
      p.fuel = cell(row, 2);
      if (p.category.empty() && !out.empty()) p.category = out.back().category;
      if (p.fuel.empty() && !out.empty()) p.fuel = out.back().fuel;
      if (p.category.empty()) {
        issue(fmt::format("PLANT_DATA row '{}', column '{}': blank", p.id,
                          column(1)));
      }
      if (p.fuel.empty()) {
        issue(fmt::format("PLANT_DATA row '{}', column '{}': blank", p.id,
                          column(2)));
      }
      auto number = [&](int c) -> double {
        const auto v = parse_number(cell(row, c));
        if (!v) {
          issue(fmt::format("PLANT_DATA row '{}', column '{}': '{}' is not a "
                            "number",
                            p.id, column(c), cell(row, c)));
          return 0.0;
        }
        return *v;
      };
      auto integer = [&](int c) -> int {
        const double v = number(c);
        if (v != static_cast<int>(v)) {
          issue(fmt::format("PLANT_DATA row '{}', column '{}': '{}' is not an "
                            "integer",
                            p.id, column(c), cell(row, c)));
        }
        return static_cast<int>(v);
      };
      p.lower_bound = number(3);
      p.upper_bound = number(4);
      p.co2_intensity = number(5);
      p.commission_period = integer(6);
      p.decommission_period = integer(7);
      out.push_back(std::move(p));
    }
    return out;
  }

  fs::path dir_;
  std::vector<std::string> issues_;
};

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out;
  for (const auto& i : issues) out += (out.empty() ? "" : "\n") + i;
  return out;
}

}  // namespace

const std::vector<std::string>& canonical_tables() {
  static const std::vector<std::string> names = {
      "PLANT_DATA",     "ENERGY_PLANNING_DATA", "FUEL_COST_DATA",
      "RENEWABLE_CI_DATA", "RENEWABLE_COST_DATA", "CAPEX_DATA_1",
      "CAPEX_DATA_2",   "ALT_SOLID_CI",         "ALT_SOLID_COST",
      "ALT_GAS_CI",     "ALT_GAS_COST",         "CCS_DATA",
      "NET_CI_DATA",    "NET_COST_DATA",        "TECH_IMPLEMENTATION_TIME"};
  return names;
}

WorkbookError::WorkbookError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

const std::vector<double>* PeriodTable::find(std::string_view label) const {
  const std::string key = normalize_label(label);
  for (std::size_t r = 0; r < labels.size(); ++r) {
    if (normalize_label(labels[r]) == key) return &rows[r];
  }
  return nullptr;
}

void PeriodTable::add(std::string label, std::vector<double> values) {
  labels.push_back(std::move(label));
  rows.push_back(std::move(values));
}

Workbook read_workbook(const fs::path& dir) { return Reader(dir).read(); }

Instance to_instance(const Workbook& wb) {
  std::vector<std::string> issues;
  const int K = wb.num_periods;
  Instance inst;
  inst.horizon.num_periods = K;
  inst.aff = wb.config.aff;
  const PeriodTable empty;
  auto table = [&](const std::string& name) -> const PeriodTable& {
    const auto it = wb.tables.find(name);
    return it == wb.tables.end() ? empty : it->second;
  };
  auto require = [&](const std::string& name, const std::string& label,
                     const std::string& owner) -> std::vector<double> {
    if (const auto* row = table(name).find(label)) return *row;
    issues.push_back(
        fmt::format("{} row '{}': missing (needed by {})", name, label, owner));
    return std::vector<double>(K, 0.0);
  };
  auto optional_row = [&](const std::string& name, const std::string& label,
                          std::vector<double> fallback) {
    if (const auto* row = table(name).find(label)) return *row;
    return fallback;
  };

  // Period parameters.
  const PeriodTable& energy = table("ENERGY_PLANNING_DATA");
  auto energy_row = [&](std::string_view key, const char* what) {
    for (std::size_t r = 0; r < energy.labels.size(); ++r) {
      if (normalize_label(energy.labels[r]).find(key) != std::string::npos) {
        return energy.rows[r];
      }
    }
    issues.push_back(
        fmt::format("ENERGY_PLANNING_DATA row '{}': missing", what));
    return std::vector<double>(K, 0.0);
  };
  const auto demand = energy_row("demand", "Demand");
  const auto limit = energy_row("limit", "Emission Limit");
  const auto budget = energy_row("budget", "Budget");
  for (int k = 0; k < K; ++k) {
    inst.period_params.push_back({demand[k], limit[k], budget[k]});
  }

  for (const PlantRecord& rec : wb.plants) {
    PowerPlant p;
    p.id = rec.id;
    if (const auto cat = parse_plant_category(rec.category)) {
      p.category = *cat;
    } else {
      issues.push_back(fmt::format(
          "PLANT_DATA row '{}', column 'Category': '{}' is not Renewable or "
          "Fossil Fuel",
          rec.id, rec.category));
    }
    p.fuel_label = rec.fuel;
    p.fuel = parse_fuel_kind(rec.fuel);
    p.lower_bound = rec.lower_bound;
    p.upper_bound = rec.upper_bound;
    p.co2_intensity = rec.co2_intensity;
    p.commission_period = rec.commission_period;
    p.decommission_period = rec.decommission_period;
    const std::string owner = fmt::format("plant '{}'", rec.id);
    p.op_cost = require("FUEL_COST_DATA", rec.fuel, owner);
    p.fixed_capex = require("CAPEX_DATA_1", rec.fuel, owner);
    p.capacity_capex = require("CAPEX_DATA_2", rec.fuel, owner);
    inst.plants.push_back(std::move(p));
  }

  for (const std::string& id : table("RENEWABLE_CI_DATA").labels) {
    RenewableTech t;
    t.id = id;
    t.co2_intensity = *table("RENEWABLE_CI_DATA").find(id);
    const std::string owner = fmt::format("renewable '{}'", id);
    t.op_cost = require("RENEWABLE_COST_DATA", id, owner);
    t.availability_cap =
        optional_row("RENEWABLE_COST_DATA", id + ":availability", demand);
    t.fixed_capex = require("CAPEX_DATA_1", id, owner);
    t.capacity_capex = require("CAPEX_DATA_2", id, owner);
    inst.renewables.push_back(std::move(t));
  }

  auto add_fuels = [&](const char* ci_table, const char* cost_table,
                       FuelPhase phase) {
    for (const std::string& id : table(ci_table).labels) {
      AltFuel f;
      f.id = id;
      f.phase = phase;
      f.co2_intensity = *table(ci_table).find(id);
      f.cost = require(cost_table, id, fmt::format("fuel '{}'", id));
      f.fixed_cost = optional_row(cost_table, id + ":fixed_cost",
                                  std::vector<double>(K, 0.0));
      inst.alt_fuels.push_back(std::move(f));
    }
  };
  add_fuels("ALT_SOLID_CI", "ALT_SOLID_COST", FuelPhase::kSolid);
  add_fuels("ALT_GAS_CI", "ALT_GAS_COST", FuelPhase::kGas);

  std::vector<std::string> ccs_ids;
  for (const std::string& label : table("CCS_DATA").labels) {
    const auto colon = label.find(':');
    if (colon == std::string::npos) {
      issues.push_back(fmt::format(
          "CCS_DATA row '{}': label must look like <id>:<field>", label));
      continue;
    }
    const std::string id = trim(label.substr(0, colon));
    const std::string field = normalize_label(label.substr(colon + 1));
    if (field != "removal_ratio" && field != "parasitic_loss" &&
        field != "gen_cost" && field != "fixed_cost") {
      issues.push_back(fmt::format(
          "CCS_DATA row '{}': unknown field (expected removal_ratio, "
          "parasitic_loss, gen_cost or fixed_cost)",
          label));
      continue;
    }
    if (std::none_of(ccs_ids.begin(), ccs_ids.end(), [&](const auto& x) {
          return normalize_label(x) == normalize_label(id);
        })) {
      ccs_ids.push_back(id);
    }
  }
  for (const std::string& id : ccs_ids) {
    CcsTech t;
    t.id = id;
    const std::string owner = fmt::format("CCS technology '{}'", id);
    t.removal_ratio = require("CCS_DATA", id + ":removal_ratio", owner);
    t.parasitic_loss = require("CCS_DATA", id + ":parasitic_loss", owner);
    t.gen_cost = require("CCS_DATA", id + ":gen_cost", owner);
    t.fixed_cost = require("CCS_DATA", id + ":fixed_cost", owner);
    inst.ccs_techs.push_back(std::move(t));
  }

  for (const std::string& id : table("NET_CI_DATA").labels) {
    NetTech t;
    t.id = id;
    const std::string key = normalize_label(id);
    if (key.rfind("ep", 0) == 0) {
      t.kind = NetKind::kEnergyProducing;
    } else if (key.rfind("ec", 0) == 0) {
      t.kind = NetKind::kEnergyConsuming;
    } else {
      issues.push_back(fmt::format(
          "NET_CI_DATA row '{}': id must start with EP or EC", id));
    }
    t.co2_intensity = *table("NET_CI_DATA").find(id);
    const std::string owner = fmt::format("NET '{}'", id);
    t.op_cost = require("NET_COST_DATA", id, owner);
    t.availability_cap =
        optional_row("NET_COST_DATA", id + ":availability", demand);
    t.fixed_capex = require("CAPEX_DATA_1", id, owner);
    t.capacity_capex = require("CAPEX_DATA_2", id, owner);
    inst.nets.push_back(std::move(t));
  }

  std::vector<std::string> tech_ids;
  for (const auto& r : inst.renewables) tech_ids.push_back(r.id);
  for (const auto& f : inst.alt_fuels) tech_ids.push_back(f.id);
  for (const auto& c : inst.ccs_techs) tech_ids.push_back(c.id);
  for (const auto& n : inst.nets) tech_ids.push_back(n.id);
  for (const auto& [label, flags] : wb.availability) {
    const std::string key = normalize_label(label);
    const auto it = std::find_if(tech_ids.begin(), tech_ids.end(), [&](const auto& id) {
      return normalize_label(id) == key;
    });
    if (it == tech_ids.end()) {
      issues.push_back(fmt::format(
          "TECH_IMPLEMENTATION_TIME row '{}': unknown technology", label));
      continue;
    }
    inst.availability.set(*it, flags);
  }

  if (!issues.empty()) throw WorkbookError(issues);
  return inst;
}

Workbook from_instance(const Instance& inst, Objective objective) {
  Workbook wb;
  const int K = inst.num_periods();
  wb.num_periods = K;
  wb.config = {objective, K, inst.aff};
  for (const std::string& name : period_tables()) wb.tables[name];

  PeriodTable& energy = wb.tables["ENERGY_PLANNING_DATA"];
  std::vector<double> demand, limit, budget;
  for (const PeriodParams& p : inst.period_params) {
    demand.push_back(p.demand);
    limit.push_back(p.emission_limit);
    budget.push_back(p.budget);
  }
  energy.add("Demand", demand);
  energy.add("Emission Limit", limit);
  energy.add("Budget", budget);

  auto add_once = [&](const char* name, const std::string& label,
                      const std::vector<double>& values) {
    PeriodTable& t = wb.tables[name];
    if (t.find(label) == nullptr) t.add(label, values);
  };
  for (const PowerPlant& p : inst.plants) {
    wb.plants.push_back({p.id, std::string(to_string(p.category)), p.fuel_label,
                         p.lower_bound, p.upper_bound, p.co2_intensity,
                         p.commission_period, p.decommission_period});
    add_once("FUEL_COST_DATA", p.fuel_label, p.op_cost);
    add_once("CAPEX_DATA_1", p.fuel_label, p.fixed_capex);
    add_once("CAPEX_DATA_2", p.fuel_label, p.capacity_capex);
  }
  for (const RenewableTech& t : inst.renewables) {
    wb.tables["RENEWABLE_CI_DATA"].add(t.id, t.co2_intensity);
    wb.tables["RENEWABLE_COST_DATA"].add(t.id, t.op_cost);
    wb.tables["RENEWABLE_COST_DATA"].add(t.id + ":availability",
                                         t.availability_cap);
    add_once("CAPEX_DATA_1", t.id, t.fixed_capex);
    add_once("CAPEX_DATA_2", t.id, t.capacity_capex);
  }
  for (const AltFuel& f : inst.alt_fuels) {
    const bool solid = f.phase == FuelPhase::kSolid;
    wb.tables[solid ? "ALT_SOLID_CI" : "ALT_GAS_CI"].add(f.id, f.co2_intensity);
    PeriodTable& cost = wb.tables[solid ? "ALT_SOLID_COST" : "ALT_GAS_COST"];
    cost.add(f.id, f.cost);
    cost.add(f.id + ":fixed_cost", f.fixed_cost);
  }
  for (const CcsTech& t : inst.ccs_techs) {
    PeriodTable& ccs = wb.tables["CCS_DATA"];
    ccs.add(t.id + ":removal_ratio", t.removal_ratio);
    ccs.add(t.id + ":parasitic_loss", t.parasitic_loss);
    ccs.add(t.id + ":gen_cost", t.gen_cost);
    ccs.add(t.id + ":fixed_cost", t.fixed_cost);
  }
  for (const NetTech& t : inst.nets) {
    wb.tables["NET_CI_DATA"].add(t.id, t.co2_intensity);
    wb.tables["NET_COST_DATA"].add(t.id, t.op_cost);
    wb.tables["NET_COST_DATA"].add(t.id + ":availability", t.availability_cap);
    add_once("CAPEX_DATA_1", t.id, t.fixed_capex);
    add_once("CAPEX_DATA_2", t.id, t.capacity_capex);
  }
  for (const auto& [id, flags] : inst.availability.entries()) {
    wb.availability.emplace_back(id, flags);
  }
  return wb;
}

namespace {

std::string period_header(const std::string& first, int K) {
  std::string s = csv_field(first);
  for (int k = 1; k <= K; ++k) s += fmt::format(",{}", k);
  return s + "\n";
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error(
        fmt::format("cannot create directory {}", dir.string()));
  }
}

std::string run_config_csv(const RunConfig& cfg) {
  return fmt::format("key,value\nobjective,{}\nnum_periods,{}\naff,{}\n",
                     to_string(cfg.objective), cfg.num_periods, exact(cfg.aff));
}

const char* kPlantHeader =
    "Plant,Category,Fuel,Lower Bound,Upper Bound,CO2 Intensity,CM,DCM\n";

}  // namespace

void write_workbook(const fs::path& dir, const Workbook& wb) {
  ensure_dir(dir);
  const int K = wb.num_periods;
  std::string plants = kPlantHeader;
  for (const PlantRecord& p : wb.plants) {
    plants += fmt::format("{},{},{},{},{},{},{},{}\n", csv_field(p.id),
                          csv_field(p.category), csv_field(p.fuel),
                          exact(p.lower_bound), exact(p.upper_bound),
                          exact(p.co2_intensity), p.commission_period,
                          p.decommission_period);
  }
  write_file(dir / "PLANT_DATA.csv", plants);
  for (const std::string& name : period_tables()) {
    std::string text = period_header(name, K);
    const auto it = wb.tables.find(name);
    if (it != wb.tables.end()) {
      for (std::size_t r = 0; r < it->second.labels.size(); ++r) {
        text += csv_field(it->second.labels[r]);
        for (double v : it->second.rows[r]) text += "," + exact(v);
        text += "\n";
      }
    }
    write_file(dir / (name + ".csv"), text);
  }
  std::string tech = period_header("TECH_IMPLEMENTATION_TIME", K);
  for (const auto& [id, flags] : wb.availability) {
    tech += csv_field(id);
    for (bool f : flags) tech += f ? ",YES" : ",NO";
    tech += "\n";
  }
  write_file(dir / "TECH_IMPLEMENTATION_TIME.csv", tech);
  RunConfig cfg = wb.config;
  cfg.num_periods = K;
  write_file(dir / "RUN_CONFIG.csv", run_config_csv(cfg));
}

void write_template(const fs::path& dir, int num_periods) {
  if (num_periods < 1 || num_periods > kMaxPeriods) {
    throw std::invalid_argument(fmt::format(
        "number of periods must be in 1..{}, got {}", kMaxPeriods, num_periods));
  }
  Workbook wb;
  wb.num_periods = num_periods;
  wb.config.num_periods = num_periods;
  write_workbook(dir, wb);
}

// ---- results ---------------------------------------------------------------

namespace {

std::string fixed(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;
  return fmt::format("{:.6f}", v);
}

const char* yes_no(bool b) { return b ? "YES" : "NO"; }

}  // namespace

std::string period_report_csv(const PeriodReport& rep, const Instance& inst) {
  std::string s = "Type,Name,Fuel,Gross Energy";
  for (const CcsTech& t : inst.ccs_techs) s += "," + csv_field(t.id + " Ret");
  for (const AltFuel* f : inst.solid_fuels()) s += "," + csv_field(f->id + " Sub");
  for (const AltFuel* f : inst.gas_fuels()) s += "," + csv_field(f->id + " Sub");
  s += ",Net Energy,CO2 Load,Operating Cost,Fixed Cost,Capacity Cost,Cost\n";
  const std::size_t options = inst.ccs_techs.size() + inst.solid_fuels().size() +
                              inst.gas_fuels().size();
  for (const PlantReport& p : rep.plants) {
    s += fmt::format("plant,{},{},{}", csv_field(p.id), csv_field(p.fuel),
                     fixed(p.gross));
    for (double v : p.ccs_retrofit) s += "," + fixed(v);
    for (double v : p.solid) s += "," + fixed(v);
    for (double v : p.gas) s += "," + fixed(v);
    s += fmt::format(",{},{},{},{},{},{}\n", fixed(p.net), fixed(p.co2),
                     fixed(p.cost.operating), fixed(p.cost.fixed),
                     fixed(p.cost.capacity), fixed(p.cost.total()));
  }
  for (const TechReport& t : rep.techs) {
    const double net = t.kind == TechKind::kEcNet ? -t.energy : t.energy;
    s += fmt::format("{},{},,{}", to_string(t.kind), csv_field(t.id),
                     fixed(t.energy));
    for (std::size_t o = 0; o < options; ++o) s += ",";
    s += fmt::format(",{},{},{},{},{},{}\n", fixed(net), fixed(t.co2),
                     fixed(t.cost.operating), fixed(t.cost.fixed),
                     fixed(t.cost.capacity), fixed(t.cost.total()));
  }
  s += "\nMetric,Value\n";
  s += fmt::format("Period,{}\n", rep.period);
  s += fmt::format("Demand,{}\n", fixed(rep.demand));
  s += fmt::format("Net Supply,{}\n", fixed(rep.net_supply));
  s += fmt::format("Total Emissions,{}\n", fixed(rep.total_emissions));
  s += fmt::format("Emission Limit,{}\n", fixed(rep.emission_limit));
  s += fmt::format("Limit Satisfied,{}\n", yes_no(rep.limit_satisfied()));
  s += fmt::format("Total Cost,{}\n", fixed(rep.total_cost));
  s += fmt::format("Budget,{}\n", fixed(rep.budget));
  s += fmt::format("Within Budget,{}\n", yes_no(rep.within_budget()));
  s += fmt::format("Operating Cost,{}\n", fixed(rep.cost.operating));
  s += fmt::format("Fixed Cost,{}\n", fixed(rep.cost.fixed));
  s += fmt::format("Capacity Cost,{}\n", fixed(rep.cost.capacity));
  return s;
}

std::string summary_csv(const Summary& summary) {
  std::string s =
      "Period,Demand,Total Emissions,Emission Limit,Limit Satisfied,Total "
      "Cost,Budget,Within Budget,Cumulative Emissions\n";
  for (const SummaryRow& r : summary.rows) {
    s += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.period, fixed(r.demand),
                     fixed(r.total_emissions), fixed(r.emission_limit),
                     yes_no(r.limit_satisfied), fixed(r.total_cost),
                     fixed(r.budget), yes_no(r.within_budget),
                     fixed(r.cumulative_emissions));
  }
  return s;
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["input"] = m.input;
  j["objective"] = m.objective;
  j["aff"] = m.aff;
  j["node_cap"] = m.node_cap;
  j["time_cap_seconds"] = m.time_cap_seconds;
  j["status"] = m.status;
  j["objective_value"] = m.objective_value ? nlohmann::ordered_json(*m.objective_value)
                                           : nlohmann::ordered_json();
  j["bound"] = m.bound ? nlohmann::ordered_json(*m.bound) : nlohmann::ordered_json();
  j["gap"] = m.gap ? nlohmann::ordered_json(*m.gap) : nlohmann::ordered_json();
  j["nodes"] = m.nodes;
  j["lp_iterations"] = m.lp_iterations;
  j["threads"] = m.threads;
  j["wall_time_seconds"] = m.wall_time_seconds;
  return j.dump(2) + "\n";
}

void write_manifest(const fs::path& dir, const RunManifest& manifest) {
  ensure_dir(dir);
  write_file(dir / "manifest.json", manifest_json(manifest));
}

void write_results(const fs::path& dir, const Instance& instance,
                   const std::vector<PeriodReport>& reports,
                   const Summary& summary, const RunManifest& manifest) {
  if (reports.empty()) {
    throw std::invalid_argument("write_results needs at least one period");
  }
  ensure_dir(dir);
  for (const PeriodReport& rep : reports) {
    write_file(dir / fmt::format("RESULTS_PERIOD_{}.csv", rep.period),
               period_report_csv(rep, instance));
  }
  write_file(dir / "SUMMARY.csv", summary_csv(summary));
  write_manifest(dir, manifest);
}

}  // namespace decarb
