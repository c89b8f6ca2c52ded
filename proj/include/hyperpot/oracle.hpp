#pragma once

#include "hyperpot/numerov.hpp"
#include "hyperpot/params.hpp"

#include <functional>
#include <span>
#include <vector>

namespace hyperpot {

struct ShootingResult {
  double energy = 0.0;
  int node_count = 0;
  // normalized Wronskian of the left and right solutions at the matching point
  double log_derivative_mismatch = 0.0;
  // sign changes closer than 10 steps
  bool coarse_grid = false;
};

struct NumericReflection {
  double P = 0.0;
  // left incidence: psi ~ e^{ikz} + r_left e^{-ikz}
  Complex r_left;
};

std::vector<double> sample_potential(const Params& params, const ZGrid& grid);

// [-30, 30] with step 1e-3; the confluent-first right edge sits where U exceeds energy_max + 50.
ZGrid default_grid(const Params& params, double energy_max);
// Box whose potential tails are below 1e-8 of the kinetic term at the given energy.
ZGrid scattering_grid(const Params& params, double energy);

// Smallest energy below which the spectrum is discrete.
double continuum_threshold(const Params& params);

int count_nodes(std::span<const double> U, const ZGrid& grid, double energy);
double matching_mismatch(std::span<const double> U, const ZGrid& grid, double energy);

std::vector<ShootingResult> shoot_eigenvalues(std::span<const double> U, const ZGrid& grid, double e_lo, double e_hi);
std::vector<ShootingResult> shoot_eigenvalues(const Params& params, double e_lo, double e_hi, const ZGrid& grid);
// Window from the potential minimum up to the continuum threshold.
std::vector<ShootingResult> shoot_eigenvalues(const Params& params, const ZGrid& grid);

// Left incidence on a sampled potential; the right edge is open when U there is below the energy.
NumericReflection numeric_reflection(std::span<const double> U, const ZGrid& grid, double energy);
// Throws BoxTooSmallError when the tails at the box edges are not negligible.
NumericReflection numeric_reflection(const Params& params, double energy, const ZGrid& box);

// max |psi''/w - w' psi'/(2 w^2) + (energy - U) psi| / (1 + |energy psi|) with psi scaled to unit sup
double residual_norm(const Params& params, double energy, const std::function<Complex(double)>& psi,
                     std::span<const double> xs);

using BatchFunction = std::function<std::vector<Complex>(std::span<const double>)>;
// Same, with psi evaluated once over all stencil points.
double residual_norm_batch(const Params& params, double energy, const BatchFunction& psi,
                           std::span<const double> xs);

} // namespace hyperpot
