#pragma once

#include "hyperpot/numerov.hpp"
#include "hyperpot/params.hpp"
#include "hyperpot/spectrum.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hyperpot::cli {

enum class Format { Csv, Json };

struct EnergyRange {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

struct RunConfig {
  std::string command;
  // full | confluent-first | confluent-second | raw
  std::string case_name = "full";
  std::optional<double> q, r, p, rho, omega, beta;
  std::optional<double> s, alpha;
  std::optional<EnergyRange> energy_range;
  std::optional<double> energy;
  std::optional<ZGrid> grid;
  std::string output_path;
  std::optional<Format> format;
  bool include_threshold = false;
  bool oracle = false;
  // phase-diagram rectangle over (q, r) or (q, p)
  double q_min = -3.0, q_max = 3.0, y_min = -3.0, y_max = 3.0, stride = 0.05;

  // Throws DomainError unless exactly one parametrization style is complete.
  Params params() const;
};

struct OracleComparison {
  std::vector<double> energies;
  std::vector<int> node_counts;
  double max_deviation = 0.0;
};

struct SpectrumReport {
  static constexpr int schema_version = 1;
  RunConfig config;
  RegionFlags region;
  std::vector<BoundState> states;
  std::optional<OracleComparison> oracle;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
};

struct PhasePoint {
  double q = 0.0;
  double y = 0.0;
  std::string region;
  bool zero_mode = false;
  int count = 0;
};

SpectrumReport spectrum_report(const RunConfig& config);
std::vector<CheckResult> verify(const RunConfig& config);
std::vector<PhasePoint> phase_diagram(const RunConfig& config);

// Region label: "red", "green", "blue", "red+green", ..., "white"; "boundary" where no rule applies.
std::string region_label(const RegionFlags& flags);

// 17 significant digits.
std::string format_number(double v);

// Exit codes: 0 success, 1 invalid input, 2 non-convergence or failed verification.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hyperpot::cli
