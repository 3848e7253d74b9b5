#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decarb/domain.hpp"
#include "decarb/model_builder.hpp"
#include "decarb/report.hpp"

namespace decarb {

// The fifteen required tables, in canonical order.
const std::vector<std::string>& canonical_tables();

// Raised for structural workbook problems. Each issue names the table, row
// label and column header involved.
class WorkbookError : public std::runtime_error {
 public:
  explicit WorkbookError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// A period-indexed table after blank-cell inheritance: one numeric series of
// length K per labelled row.
struct PeriodTable {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;

  // Row whose normalized label equals normalize_label(label), or nullptr.
  const std::vector<double>* find(std::string_view label) const;
  void add(std::string label, std::vector<double> values);
};

struct PlantRecord {
  std::string id;
  std::string category;
  std::string fuel;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double co2_intensity = 0.0;
  int commission_period = 1;
  int decommission_period = 2;
};

struct RunConfig {
  Objective objective = Objective::kMinBudget;
  int num_periods = 0;
  double aff = 1.0;
};

struct Workbook {
  int num_periods = 0;
  std::vector<PlantRecord> plants;                   // PLANT_DATA
  std::map<std::string, PeriodTable> tables;          // numeric period tables
  std::vector<std::pair<std::string, std::vector<bool>>> availability;
  RunConfig config;
};

// Reads <dir>/<TABLE>.csv for every canonical table plus the optional
// RUN_CONFIG.csv. Throws WorkbookError for missing tables, inconsistent
// period counts and malformed cells; std::filesystem::filesystem_error when
// `dir` is not a readable directory.
Workbook read_workbook(const std::filesystem::path& dir);

// Assembles the domain instance. Throws WorkbookError when a plant fuel or
// technology has no matching cost row.
Instance to_instance(const Workbook& workbook);

// Inverse of to_instance (all series written out in full).
Workbook from_instance(const Instance& instance, Objective objective);

void write_workbook(const std::filesystem::path& dir, const Workbook& workbook);

// Writes a workbook whose tables carry headers 1..K and no data rows, plus a
// RUN_CONFIG with num_periods = K. Throws
// std::invalid_argument when K is outside 1..kMaxPeriods.
void write_template(const std::filesystem::path& dir, int num_periods);

struct RunManifest {
  std::string input;
  std::string objective;
  double aff = 1.0;
  long node_cap = 0;
  double time_cap_seconds = 0.0;
  std::string status;
  std::optional<double> objective_value;
  std::optional<double> bound;
  std::optional<double> gap;
  long nodes = 0;
  long lp_iterations = 0;
  double wall_time_seconds = 0.0;
  int threads = 1;
};

std::string manifest_json(const RunManifest& manifest);

// Writes RESULTS_PERIOD_<k>.csv for every report, SUMMARY.csv and
// manifest.json. Throws std::runtime_error naming the path on write errors.
void write_results(const std::filesystem::path& dir, const Instance& instance,
                   const std::vector<PeriodReport>& reports,
                   const Summary& summary, const RunManifest& manifest);

// Manifest only (used when there is nothing to report).
void write_manifest(const std::filesystem::path& dir,
                    const RunManifest& manifest);

std::string period_report_csv(const PeriodReport& report,
                              const Instance& instance);
std::string summary_csv(const Summary& summary);

}  // namespace decarb
