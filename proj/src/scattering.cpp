#include "hyperpot/scattering.hpp"

#include "hyperpot/errors.hpp"

#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace hyperpot {

namespace {

using specfun::is_nonpositive_integer;
using specfun::log_gamma;

constexpr double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

// sum of log Gamma over numerator minus denominator; nullopt when a denominator sits on a pole
std::optional<Complex> gamma_ratio_log(std::initializer_list<Complex> num, std::initializer_list<Complex> den) {
  Complex s = 0.0;
  for (Complex z : den) {
    if (is_nonpositive_integer(z)) return std::nullopt;
    s -= log_gamma(z);
  }
  for (Complex z : num) s += log_gamma(z);
  return s;
}

// log(sinh^2 x + s2)
double log_sinh2_plus(double x, double s2) {
  x = std::abs(x);
  if (x < 300.0) return std::log(std::sinh(x) * std::sinh(x) + s2);
  return 2.0 * (x - std::log(2.0));
}

void check_energy(double energy, double edge, const char* what) {
  if (!std::isfinite(energy)) throw DomainError("reflection: energy must be finite");
  if (!(energy > edge))
    throw ChannelClosedError(std::string("reflection: energy ") + std::to_string(energy) + " does not exceed the " + what +
                             " threshold " + std::to_string(edge));
}

} // namespace

Complex shared_gamma_log(double sigma, double k, double gk) {
  const Complex y = I * (k + gk);
  return log_gamma(-sigma - y) + log_gamma(sigma + 1.0 - y);
}

double reflection_probability(const InvariantParams& p, double energy) {
  validate(Params{p});
  const double edge = std::max(p.q * p.q, p.r * p.r / p.g());
  check_energy(energy, edge, "upper continuum");
  const double k = std::sqrt(energy - p.q * p.q);
  const double gk = std::sqrt(p.g()) * std::sqrt(energy - p.r * p.r / p.g());
  const double s = boost::math::sin_pi(p.sigma());
  // cosh^2 a - cos^2 b = sinh^2 a + sin^2 b
  return std::exp(log_sinh2_plus(pi * (k - gk), s * s) - log_sinh2_plus(pi * (k + gk), s * s));
}

ReflectionData reflect_full(const InvariantParams& p, double energy) {
  validate(Params{p});
  const double edge = std::max(p.q * p.q, p.r * p.r / p.g());
  check_energy(energy, edge, "upper continuum");
  const double sigma = p.sigma();
  const double k = std::sqrt(energy - p.q * p.q);
  const double kp = std::sqrt(energy - p.r * p.r / p.g());
  const double gk = std::sqrt(p.g()) * kp;
  const double lw = std::log(p.omega);

  ReflectionData out;
  out.energy = energy;
  out.k = k;
  out.k_prime = kp;
  out.P = reflection_probability(p, energy);

  const Complex shared = shared_gamma_log(sigma, k, gk);
  const Complex dm = I * (k - gk);
  const auto right = gamma_ratio_log({2.0 * I * gk}, {-2.0 * I * gk, -sigma - dm, sigma + 1.0 - dm});
  const auto left = gamma_ratio_log({1.0 + 2.0 * I * k}, {1.0 - 2.0 * I * k, -sigma + dm, sigma + 1.0 + dm});
  const Complex rf = (p.r + I * gk) / (p.r - I * gk);
  const Complex lf = (-p.q + I * k) / (p.q + I * k);
  out.r_right = right ? rf * std::exp(*right + shared + 2.0 * I * gk * lw) : Complex(0.0);
  out.r_left = left ? lf * std::exp(*left + shared - 2.0 * I * k * lw) : Complex(0.0);
  return out;
}

ReflectionData reflect_confluent_first(const ConfluentFirstParams& p, double energy) {
  validate(Params{p});
  check_energy(energy, p.q * p.q, "left continuum");
  const double k = std::sqrt(energy - p.q * p.q);
  const double pe = p.p() * energy;
  ReflectionData out;
  out.energy = energy;
  out.k = k;
  const Complex front = (-p.q + I * k) / (p.q + I * k);
  std::optional<Complex> g;
  double lb;
  if (p.beta < 0.0) {
    g = gamma_ratio_log({1.0 + 2.0 * I * k, 1.0 - p.q + pe - I * k}, {1.0 - 2.0 * I * k, 1.0 - p.q + pe + I * k});
    lb = std::log(-p.beta);
  } else {
    g = gamma_ratio_log({1.0 + 2.0 * I * k, p.q - pe - I * k}, {1.0 - 2.0 * I * k, p.q - pe + I * k});
    lb = std::log(p.beta);
  }
  out.r_left = g ? front * std::exp(*g - 2.0 * I * k * lb) : Complex(0.0);
  out.P = 1.0;
  return out;
}

ReflectionData reflect_confluent_second(double q, double rho, double energy) {
  validate(Params{ConfluentSecondParams{q, rho, 0.0}});
  check_energy(energy, q * q, "left continuum");
  const double k = std::sqrt(energy - q * q);
  ReflectionData out;
  out.energy = energy;
  out.k = k;
  out.k_prime = std::sqrt(energy);
  const auto g = gamma_ratio_log({1.0 + 2.0 * I * k}, {1.0 - 2.0 * I * k});
  const Complex front = (-q + I * k) / (q + I * k);
  out.r_left = front * std::exp(*g - 2.0 * I * k * std::log(energy / rho) - 2.0 * k * pi);
  out.r_right = I * std::exp(-2.0 * k * pi);
  out.P = std::exp(-4.0 * k * pi);
  return out;
}

ReflectionData reflect(const Params& params, double energy) {
  if (const auto* p = std::get_if<InvariantParams>(&params)) return reflect_full(*p, energy);
  if (const auto* p = std::get_if<ConfluentFirstParams>(&params)) return reflect_confluent_first(*p, energy);
  const auto& p = std::get<ConfluentSecondParams>(params);
  return reflect_confluent_second(p.q, p.rho, energy);
}

} // namespace hyperpot
