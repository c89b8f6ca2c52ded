#include "hyperpot/errors.hpp"
#include "hyperpot/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace hyperpot::specfun {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double wrap_phase(double phi) {
  constexpr double pi = std::numbers::pi;
  phi = std::remainder(phi, 2.0 * pi);
  if (phi <= -pi) phi += 2.0 * pi;
  return phi;
}

// log sin(pi z) up to a multiple of 2 pi i.
Complex log_sin_pi(Complex z) {
  constexpr double pi = std::numbers::pi;
  const double n = std::round(z.real());
  const Complex w = z - n;
  const Complex sign_log = std::fmod(std::abs(n), 2.0) == 1.0 ? Complex(0.0, pi) : Complex(0.0);
  if (std::abs(w.imag()) < 15.0) return std::log(std::sin(pi * w)) + sign_log;
  const bool flip = w.imag() < 0.0;
  const Complex u = flip ? std::conj(w) : w;
  const Complex i(0.0, 1.0);
  Complex res = -i * pi * u + std::log(Complex(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * i * pi * u));
  if (flip) res = std::conj(res);
  return res + sign_log;
}

// Stirling series, used for |z| >= 12 where the Lanczos sum loses digits off the real axis
Complex stirling_log_gamma(Complex z) {
  static constexpr std::array<double, 8> b2k = {1.0 / 6,   -1.0 / 30, 1.0 / 42,     -1.0 / 30,
                                                5.0 / 66,  -691.0 / 2730, 7.0 / 6, -3617.0 / 510};
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex pw = inv;
  Complex s = 0.0;
  for (std::size_t k = 1; k <= b2k.size(); ++k) {
    s += b2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + s;
}

Complex lanczos_log_gamma(Complex z) {
  if (std::abs(z) >= 12.0) return stirling_log_gamma(z);
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

} // namespace

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

Complex log_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("log_gamma: non-finite argument");
  if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at non-positive integer");
  Complex res;
  if (z.real() < 0.5)
    res = std::log(std::numbers::pi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
  else
    res = lanczos_log_gamma(z);
  return {res.real(), wrap_phase(res.imag())};
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex rgamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return std::exp(-log_gamma(z));
}

Complex pochhammer(Complex a, unsigned n) {
  Complex p = 1.0;
  for (unsigned k = 0; k < n; ++k) p *= a + static_cast<double>(k);
  return p;
}

} // namespace hyperpot::specfun
