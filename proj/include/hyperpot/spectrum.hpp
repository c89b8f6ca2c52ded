#pragma once

#include "hyperpot/params.hpp"

#include <vector>

namespace hyperpot {

enum class Branch { GreenI, BlueII, None, Unclassified };
enum class StateBranch { Ground, GreenI, BlueII };

const char* to_string(Branch branch);
const char* to_string(StateBranch branch);

struct RegionFlags {
  bool has_zero_mode = false;
  Branch branch = Branch::None;
  bool middle_blue_rejection = false;
};

struct BoundState {
  StateBranch branch = StateBranch::Ground;
  int index = 0;
  double energy = 0.0;
  double residual = 0.0;
  bool threshold_flag = false;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double v) const { return v > lower && v < upper; }
};

RegionFlags classify(const Params& params);

// Open g-interval in which the level with index n exists (n counted from 0 in both branches).
Interval g_window(double q, double r, int n, Branch branch = Branch::GreenI);

// Left-hand side sqrt(q^2 - eps) + sqrt(r^2 - g eps) of the full-case conditions.
double level_function(double q, double r, double g, double energy);

// Bound energies sorted ascending; threshold states are appended only on request.
std::vector<BoundState> solve_bound_states(const Params& params, bool include_threshold = false);

} // namespace hyperpot
