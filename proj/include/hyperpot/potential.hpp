#pragma once

#include "hyperpot/params.hpp"

#include <vector>

namespace hyperpot {

// U(x) = (a4 x^4 + a3 x^3 + a2 x^2 + a1 x + a0) / ((x + rho)^3 (1 + omega x)) - lambda0_shift
struct PotentialCoefficients {
  double a4 = 0.0, a3 = 0.0, a2 = 0.0, a1 = 0.0, a0 = 0.0;
  double rho = 1.0;
  double omega = 0.0;
  double lambda0_shift = 0.0;
};

PotentialCoefficients coefficients(const Params& params);
// Raw five-parameter form; lambda0_shift carries lambda0 so evaluate_U gives V - lambda0.
PotentialCoefficients raw_coefficients(const RawParams& raw);

double evaluate_U(const PotentialCoefficients& c, double x);
double evaluate_U(const Params& params, double x);

// Limits of U at z -> -inf and z -> +inf (+inf for the confluent-first oscillator tail).
double U_left(const Params& params);
double U_right(const Params& params);

double weight_w(const Params& params, double x);
// dz/dx
double sqrt_w(const Params& params, double x);

// z(x) with z - ln x -> 0 as x -> 0.
double z_of_x(const Params& params, double x);
double x_of_z(const Params& params, double z);

// Large-x constant: z - ln(x)/sqrt(rho omega) (full) or z - 2 sqrt(x/rho) (confluent).
double right_offset(const Params& params);

// {z,x}/w as a rational function of x.
double schwartzian_term(const Params& params, double x);

// U(x) from the reduction-of-order pipeline, independent of the closed form.
double liouville_reconstruct(const RawParams& raw, double x);

struct GridMapping {
  std::vector<double> x_samples;
  std::vector<double> z_samples;
  double anchor = 0.0;
  CaseKind kind = CaseKind::FullHypergeometric;

  // Uniform z grid of `count` points on [z_min, z_max].
  static GridMapping build(const Params& params, double z_min, double z_max, std::size_t count);
};

} // namespace hyperpot
