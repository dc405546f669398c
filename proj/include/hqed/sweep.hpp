#pragma once

#include "hqed/exact.hpp"
#include "hqed/labels.hpp"
#include "hqed/params.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hqed {

enum class Solver { Exact, Grwa, Rwa };
const char* solver_name(Solver s);
Solver solver_from_name(const std::string& name);

// Scalar sector quantities reported in the energy column (units of omega_m), GRWA solver only.
enum class QuantityKind { T, GShift, GEff };

struct Axis {
  std::string variable;  // g_ac | g_om | omega_a | omega_c | detuning (omega_a - omega_c, omega_c fixed)
  double start = 0;
  double stop = 0;
  int count = 2;
  bool log_scale = false;
  std::vector<double> values() const;
};

struct FamilySpec {
  std::string family;             // a state family name, or T | g_shift | g_eff
  std::vector<int> n;             // empty: 0 .. n_max
  std::vector<int> m;             // empty: 0 .. m_max
  std::vector<Branch> branches;   // empty: both
};

struct SweepConfig {
  std::string name = "custom";
  std::string figure;
  std::vector<std::string> notes;
  SystemParams params;
  std::vector<Axis> axes;
  std::vector<Solver> solvers{Solver::Exact, Solver::Grwa, Solver::Rwa};
  std::vector<FamilySpec> families;
  bool want_energies = true;
  bool want_fidelities = true;
  bool want_xi = true;
  std::optional<Cutoffs> cutoffs;  // nullopt: converge at every grid corner, keep the element-wise max
  int levels = 60;
  double tolerance = 1e-8;
  int n_max = 8;
  int m_max = 12;

  // Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

SweepConfig config_from_json(const nlohmann::json& j, SweepConfig base = {});
nlohmann::json config_to_json(const SweepConfig& c);
std::string config_hash(const SweepConfig& c);

// One expanded output series: either a state label or a sector quantity.
struct SeriesKey {
  std::string family;
  std::optional<int> n, m;
  std::optional<char> sign;
  std::optional<AnalyticStateLabel> label;  // state families
  std::optional<QuantityKind> quantity;     // quantity families
};
// Deduplicated and sorted lexicographically by (family, N, M, sign).
std::vector<SeriesKey> expand_series(const SweepConfig& c);

struct SweepRow {
  double axis1 = 0;
  std::optional<double> axis2;
  Solver solver = Solver::Grwa;
  std::string family;
  std::optional<int> n, m;
  std::optional<char> sign;
  std::optional<double> energy;  // units of omega_m
  std::optional<double> fidelity;
  std::optional<double> xi;
};

struct PointDiagnostics {
  double max_residual = 0;        // eigenpair residual relative to ||H||_1
  double max_norm_deviation = 0;  // weight of embedded analytic kets beyond the cutoffs
  int unmatched = 0;              // labels left without a numerical partner
};

struct CornerConvergence {
  SystemParams params;
  Cutoffs cutoffs;
  double max_change = 0;
  int solves = 0;
  bool converged = true;
  int photon_limit = 0;  // photon_stability_limit at the corner's k-th level + omega_m
  std::string note;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;
  std::optional<Cutoffs> cutoffs;  // used by the exact solver
  std::vector<CornerConvergence> corners;
  std::vector<std::string> warnings;  // unconverged corners and clamped cutoffs
  PointDiagnostics diagnostics;    // worst over the grid
  int grid_points = 0;
  int series = 0;
  double wall_seconds = 0;
};

struct RunOptions {
  int workers = 1;
};

// Throws std::invalid_argument on an invalid config. An auto-cutoff search that cannot reach the tolerance
// (ceiling, or the optomechanical stability limit) does not throw: the corner is marked unconverged and a
// warning is recorded. The shared photon cutoff never exceeds the smallest corner stability limit.
SweepResult run_sweep(const SweepConfig& config, RunOptions options = {});

inline const char* csv_header() {
  return "axis1,axis2,solver,family,N,M,sign,energy_over_omega_m,fidelity,xi";
}
void write_csv(const SweepResult& result, std::ostream& os);
nlohmann::json build_manifest(const SweepResult& result);
// Writes <dir>/data.csv and <dir>/manifest.json, creating dir if needed.
void write_outputs(const SweepResult& result, const std::filesystem::path& dir);

const char* tool_version();

struct Preset {
  std::string name;
  std::string figure;
  std::string summary;
  SweepConfig config;
};
const std::vector<Preset>& list_presets();
// Throws std::invalid_argument for unknown names.
const Preset& find_preset(const std::string& name);

}  // namespace hqed
