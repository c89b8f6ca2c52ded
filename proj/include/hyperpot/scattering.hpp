#pragma once

#include "hyperpot/params.hpp"

#include <optional>

namespace hyperpot {

struct ReflectionData {
  double energy = 0.0;
  double k = 0.0;
  std::optional<double> k_prime;
  Complex r_left;
  std::optional<Complex> r_right;
  double P = 0.0;
};

// log of Gamma(-sigma - i(k + sqrt(g) k')) Gamma(sigma + 1 - i(k + sqrt(g) k')), shared by both amplitudes
Complex shared_gamma_log(double sigma, double k, double gk);

double reflection_probability(const InvariantParams& params, double energy);

ReflectionData reflect_full(const InvariantParams& params, double energy);
ReflectionData reflect_confluent_first(const ConfluentFirstParams& params, double energy);
ReflectionData reflect_confluent_second(double q, double rho, double energy);
ReflectionData reflect(const Params& params, double energy);

} // namespace hyperpot
