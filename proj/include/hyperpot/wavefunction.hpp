#pragma once

#include "hyperpot/params.hpp"
#include "hyperpot/potential.hpp"

#include <optional>
#include <span>
#include <vector>

namespace hyperpot {

struct WaveSample {
  double x = 0.0;
  double z = 0.0;
  Complex psi;
};

// Coefficients of the large-x powers x^{-kappa'} (right_out) and x^{kappa'} (right_in).
// With kappa' = -i sqrt(g) k' these are e^{+ik'z} and e^{-ik'z} up to a constant phase.
// left_amp multiplies x^kappa at x -> 0.
struct AsymptoticCoefficients {
  Complex left_amp;
  std::optional<Complex> right_out;
  std::optional<Complex> right_in;
  std::optional<Complex> decaying;
  std::optional<Complex> growing;
};

double ground_state_psi(const Params& params, double x);

// Where a = -n (n >= 1) the closed form vanishes identically; its energy derivative is returned there.
Complex psi(const Params& params, double energy, double x);
std::vector<Complex> psi_batch(const Params& params, double energy, std::span<const double> xs);

// Same function written with two hypergeometric functions and no derivative.
Complex psi_derivative_free(const Params& params, double energy, double x);

AsymptoticCoefficients asymptotic_coefficients(const Params& params, double energy);

std::vector<WaveSample> sample_wavefunction(const Params& params, double energy, const GridMapping& grid);

// integral of |psi|^2 dz over the grid (trapezoid rule)
double norm_squared(const Params& params, double energy, const GridMapping& grid);

} // namespace hyperpot
