#include <doctest.h>

#include "hyperpot/errors.hpp"
#include "hyperpot/wavefunction.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hyperpot;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// magnitude of the larger bracket term, the scale below which cancellation sets in
double term_scale(const InvariantParams& p, double energy, double x) {
  const HypData h = hyp_data(p, energy);
  const auto f = specfun::hyp_continued(h.spec(), -p.omega * x);
  const double pref = ground_state_psi(p, x) * std::pow(x, h.kappa.real() - p.q);
  return pref * std::abs(h.a * x + p.rho * (h.a + 1.0)) * std::abs(f.value) * std::exp(f.log_scale);
}

double reflection_probability(const InvariantParams& p, double energy) {
  const double k = std::sqrt(energy - p.q * p.q);
  const double gk = std::sqrt(p.g()) * std::sqrt(energy - p.r * p.r / p.g());
  const double pi = std::numbers::pi;
  const double c2 = std::pow(std::cos(pi * p.sigma()), 2);
  return (std::pow(std::cosh(pi * (k - gk)), 2) - c2) / (std::pow(std::cosh(pi * (k + gk)), 2) - c2);
}

} // namespace

TEST_CASE("ground states") {
  CHECK(ground_state_psi(InvariantParams{2.0, -2.0, 1.0, 1.0, 0.0}, 1.0) == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(ground_state_psi(ConfluentFirstParams{1.0, 1.0, -2.0, 0.0}, 1.0) ==
        doctest::Approx(std::exp(-1.0) * std::pow(2.0, -0.25)).epsilon(1e-14));
  CHECK(ground_state_psi(ConfluentFirstParams{1.0, 1.0, -2.0, 0.0}, 1.0) == doctest::Approx(0.3093).epsilon(1e-4));
  CHECK(ground_state_psi(ConfluentSecondParams{0.125, 1.0, 0.0}, 1.0) == doctest::Approx(0.8409).epsilon(1e-4));
  CHECK_THROWS_AS(ground_state_psi(ConfluentSecondParams{0.125, 1.0, 0.0}, 0.0), DomainError);
}

TEST_CASE("zero energy collapses onto the ground state") {
  const std::vector<Params> cases = {InvariantParams{2.0, -2.0, 1.3, 0.7, 0.0}, InvariantParams{0.6, -1.5, 0.5, 2.0, 0.0},
                                     ConfluentFirstParams{1.0, 0.8, -2.0, 0.0}, ConfluentFirstParams{0.7, 1.2, 0.5, 0.0},
                                     ConfluentSecondParams{0.125, 1.7, 0.0}};
  for (const auto& p : cases)
    for (double x : {1e-4, 0.03, 0.5, 1.0, 7.0, 120.0}) {
      const Complex v = psi(p, 0.0, x);
      CHECK(rel(v, rho_of(p) * ground_state_psi(p, x)) < 1e-12);
    }
}

TEST_CASE("first excited state of q=2, r=-2, g=1 is algebraic") {
  const InvariantParams p{2.0, -2.0, 1.0, 1.0, 0.0};
  for (double x : {1e-3, 0.2, 0.9, 1.5, 4.0, 33.0, 1e3}) {
    const double expected = 0.5 * std::pow(x, 1.5) * (1.0 - x) * std::pow(1.0 + x, -4.0);
    const Complex v = psi(p, 1.75, x);
    CHECK(std::abs(v.imag()) < 1e-14);
    CHECK(v.real() == doctest::Approx(expected).epsilon(1e-11));
  }
  CHECK(std::abs(psi(p, 1.75, 1.0)) < 1e-14);
}

TEST_CASE("derivative-free form agrees") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> uq(-2.5, 2.5), ur(-2.5, 2.5), uw(0.3, 3.0), ue(0.0, 1.0), ul(-5.0, 5.0);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const InvariantParams p{uq(gen), ur(gen), uw(gen), uw(gen), 0.0};
    if (std::abs(p.q) < 0.05 || std::abs(p.r) < 0.05) continue;
    const double top = std::max(p.q * p.q, p.r * p.r / p.g());
    const double energy = 1.4 * top * ue(gen);
    for (double lx : {-3.0, -0.7, 0.4, 1.8}) {
      const double x = std::exp(lx);
      try {
        const Complex ref = psi(p, energy, x);
        const double scale = std::max(std::abs(ref), term_scale(p, energy, x));
        CHECK(std::abs(psi_derivative_free(p, energy, x) - ref) < 1e-10 * scale);
        ++checked;
      } catch (const PoleError&) {
      }
    }
  }
  CHECK(checked > 100);
  for (double x : {0.05, 1.0, 9.0}) {
    const ConfluentFirstParams cf{1.3, 0.9, -1.7, 0.0};
    CHECK(rel(psi_derivative_free(cf, 0.8, x), psi(cf, 0.8, x)) < 1e-10);
    CHECK(rel(psi_derivative_free(cf, 2.9, x), psi(cf, 2.9, x)) < 1e-10);
    const ConfluentFirstParams cf2{0.8, 1.1, 0.6, 0.0};
    CHECK(rel(psi_derivative_free(cf2, 0.3, x), psi(cf2, 0.3, x)) < 1e-10);
    const ConfluentSecondParams cs{0.9, 1.4, 0.0};
    CHECK(rel(psi_derivative_free(cs, 0.5, x), psi(cs, 0.5, x)) < 1e-10);
    CHECK(rel(psi_derivative_free(cs, 1.6, x), psi(cs, 1.6, x)) < 1e-10);
  }
}

TEST_CASE("small-x power law") {
  const InvariantParams p{1.6, -0.8, 1.2, 0.9, 0.0};
  for (double energy : {0.0, 0.5, 1.7}) {
    const double x1 = 1e-8, x2 = 1e-6;
    const double slope = std::log(std::abs(psi(p, energy, x2)) / std::abs(psi(p, energy, x1))) / std::log(x2 / x1);
    CHECK(slope == doctest::Approx(std::sqrt(p.q * p.q - energy)).epsilon(1e-5));
  }
}

TEST_CASE("batch evaluation matches pointwise") {
  const InvariantParams p{1.1, -0.9, 0.8, 1.3, 0.0};
  const std::vector<double> xs = {0.01, 0.3, 2.0, 50.0, 4e3};
  const auto batch = psi_batch(p, 2.2, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(rel(batch[i], psi(p, 2.2, xs[i])) < 1e-11);
}

TEST_CASE("asymptotic coefficients") {
  const InvariantParams p{2.0, -2.0, 1.0, 1.0, 0.0};
  const auto bound = asymptotic_coefficients(p, 1.75);
  REQUIRE(bound.growing.has_value());
  CHECK(std::abs(*bound.growing) < 1e-10);
  CHECK(std::abs(*bound.decaying) > 1e-3);

  const auto cont = asymptotic_coefficients(p, 5.0);
  CHECK(rel(cont.left_amp, Complex(-1.0, -1.0)) < 1e-14);
  REQUIRE(cont.right_in.has_value());
  CHECK(std::abs(*cont.right_out) < 1e-12);

  for (const InvariantParams& q : {InvariantParams{1.3, -0.6, 0.8, 1.4, 0.0}, InvariantParams{-0.7, 1.9, 1.5, 0.6, 0.0},
                                   InvariantParams{2.4, 0.9, 0.5, 0.5, 0.0}}) {
    const double top = std::max(q.q * q.q, q.r * q.r / q.g());
    for (double factor : {1.05, 1.6, 3.0}) {
      const double energy = factor * top;
      const auto c = asymptotic_coefficients(q, energy);
      const double ratio = std::norm(*c.right_out / *c.right_in);
      CHECK(ratio == doctest::Approx(reflection_probability(q, energy)).epsilon(1e-10));
      CHECK(rel(c.left_amp, std::pow(q.rho, 0.75) * (-q.q + kappa(q.q, energy) + 1.0)) < 1e-14);
    }
  }
}

TEST_CASE("asymptotic coefficients reproduce large-x behaviour") {
  const InvariantParams p{1.3, -0.6, 0.8, 1.4, 0.0};
  const double energy = 2.5;
  const auto c = asymptotic_coefficients(p, energy);
  const Complex kp = kappa_prime(p.r, p.g(), energy);
  const double x = 1e6;
  const Complex approx = *c.right_out * std::pow(x, -kp) + *c.right_in * std::pow(x, kp);
  CHECK(rel(psi(p, energy, x), approx) < 1e-4);
}

TEST_CASE("confluent growing coefficient vanishes on eigenvalues") {
  const auto cf = ConfluentFirstParams::from_p(2.0, -1.0, 1.0);
  CHECK(std::abs(*asymptotic_coefficients(cf, (-3.0 + std::sqrt(21.0)) / 2.0).growing) < 1e-9);
  CHECK(std::abs(*asymptotic_coefficients(cf, 3.0).growing) < 1e-9);
  CHECK(std::abs(*asymptotic_coefficients(cf, 1.1).growing) > 1e-4);
}

TEST_CASE("grid sampling and norm") {
  const InvariantParams p{2.0, -2.0, 1.0, 1.0, 0.0};
  const auto grid = GridMapping::build(p, -20.0, 20.0, 4001);
  const auto s = sample_wavefunction(p, 1.75, grid);
  REQUIRE(s.size() == 4001);
  CHECK(s[2000].z == doctest::Approx(grid.z_samples[2000]));
  const double n1 = norm_squared(p, 1.75, grid);
  const auto fine = GridMapping::build(p, -20.0, 20.0, 8001);
  CHECK(n1 == doctest::Approx(norm_squared(p, 1.75, fine)).epsilon(1e-6));
}
