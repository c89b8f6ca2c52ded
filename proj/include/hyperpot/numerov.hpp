#pragma once

#include "hyperpot/specfun.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace hyperpot {

struct ZGrid {
  double z_min = -30.0;
  double z_max = 30.0;
  double step = 1e-3;

  // Throws DomainError unless (z_max - z_min)/step is an integer >= 1000.
  void validate() const;
  std::size_t intervals() const;
  std::size_t size() const { return intervals() + 1; }
  double z(std::size_t i) const { return z_min + static_cast<double>(i) * step; }
  std::vector<double> points() const;

  static ZGrid from_intervals(double z_min, double z_max, std::size_t intervals);
};

enum class Direction { LeftToRight, RightToLeft };

template <class T>
struct NumerovResult {
  std::vector<T> psi;
  // true solution = psi * exp(log_scale)
  double log_scale = 0.0;
  int rescalings = 0;
  // sign changes of the real solution, counted before any rescaling
  int nodes = 0;
  // smallest distance in steps between consecutive sign changes, 0 with fewer than two
  std::size_t min_node_gap = 0;
};

// Solves psi'' = (U - energy) psi on a uniform grid. seed0 sits at the starting edge,
// seed1 one step inward.
template <class T>
NumerovResult<T> numerov_integrate(std::span<const double> U, double step, double energy, Direction direction, T seed0,
                                   T seed1);

// theta with exp(i theta j) an exact Numerov solution for constant U < energy.
double discrete_phase(double U, double energy, double step);
// exp(mu) per step of the decaying Numerov solution for constant U > energy.
double discrete_decay(double U, double energy, double step);

} // namespace hyperpot
