#include <doctest.h>

#include "hyperpot/errors.hpp"
#include "hyperpot/scattering.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hyperpot;

namespace {

constexpr double pi = std::numbers::pi;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

InvariantParams full(double q, double r, double g) { return {q, r, 1.0, 1.0 / g, 0.0}; }

} // namespace

TEST_CASE("full case probabilities") {
  auto d = reflect_full(full(2.0, -2.0, 1.0), 5.0);
  CHECK(d.k == doctest::Approx(1.0));
  CHECK(*d.k_prime == doctest::Approx(1.0));
  CHECK(d.P < 1e-28);
  CHECK(std::abs(d.r_left) < 1e-14);
  CHECK(std::abs(*d.r_right) < 1e-14);

  d = reflect_full(full(2.0, -2.0, 4.0), 5.0);
  const double expected = std::pow(std::sinh(3.0 * pi) / std::sinh(5.0 * pi), 2);
  CHECK(d.P == doctest::Approx(expected).epsilon(1e-12));
  CHECK(d.P == doctest::Approx(3.49e-6).epsilon(1e-2));
  CHECK(std::norm(d.r_left) == doctest::Approx(d.P).epsilon(1e-10));
  CHECK(std::norm(*d.r_right) == doctest::Approx(d.P).epsilon(1e-10));

  const auto p = full(1.1, -0.4, 0.7);
  const double edge = std::max(1.21, 0.16 / 0.7);
  CHECK(reflection_probability(p, edge + 1e-12) > 0.9999);
  CHECK(reflection_probability(p, edge * (1.0 + 1e-9)) > reflection_probability(p, edge * 1.01));
  CHECK_THROWS_AS(reflect_full(p, edge), ChannelClosedError);
  CHECK_THROWS_AS(reflect_full(p, 0.5), DomainError);
}

TEST_CASE("full case amplitudes") {
  const InvariantParams p{1.3, -0.6, 0.8, 1.4, 0.0};
  const auto d = reflect_full(p, 2.5);
  CHECK(rel(*d.r_right, Complex(-0.00293658086218809825710300358366, 0.00161797706084342799220887605429)) < 1e-12);
  CHECK(rel(d.r_left, Complex(0.0015557011385287885422234131193, -0.00297004223827964498814518131309)) < 1e-12);
}

TEST_CASE("modulus consistency over random parameters") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> uq(-3.0, 3.0), ug(0.1, 5.0), ue(1.0001, 6.0), ur(0.3, 3.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double rho = ur(gen), g = ug(gen);
    const InvariantParams p{uq(gen), uq(gen), rho, 1.0 / (g * rho), 0.0};
    const double energy = ue(gen) * std::max(p.q * p.q, p.r * p.r / g) + 0.01;
    const auto d = reflect_full(p, energy);
    CHECK(d.P >= 0.0);
    CHECK(d.P <= 1.0);
    if (d.P < 1e-250) continue;
    CHECK(std::norm(d.r_left) == doctest::Approx(d.P).epsilon(1e-10));
    CHECK(std::norm(*d.r_right) == doctest::Approx(d.P).epsilon(1e-10));
  }
}

TEST_CASE("large wavenumbers stay finite") {
  const auto d = reflect_full(full(0.7, -1.2, 1.5), 4e4);
  CHECK(std::isfinite(d.P));
  CHECK(std::isfinite(d.r_left.real()));
  CHECK(d.P < 1e-100);
}

TEST_CASE("confluent first") {
  const auto d = reflect_confluent_first(ConfluentFirstParams::from_p(2.0, -1.0, 1.0), 5.0);
  CHECK(rel(d.r_left, Complex(-0.28693770565048238502605602399, 0.957949243475893731639909058056)) < 1e-12);
  CHECK(d.P == 1.0);
  CHECK(!d.r_right);
  const auto e = reflect_confluent_first(ConfluentFirstParams{0.7, 1.3, 0.4, 0.0}, 2.2);
  CHECK(rel(e.r_left, Complex(0.379780191237367159849213572557, 0.925076757001119787800663471826)) < 1e-12);

  std::mt19937 gen(9);
  std::uniform_real_distribution<double> uq(-3.0, 3.0), ub(-4.0, 4.0), ue(0.01, 30.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double beta = ub(gen);
    if (beta == 0.0) continue;
    const ConfluentFirstParams p{uq(gen), 0.7, beta, 0.0};
    const auto r = reflect_confluent_first(p, p.q * p.q + ue(gen));
    CHECK(std::abs(std::abs(r.r_left) - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(reflect_confluent_first(ConfluentFirstParams::from_p(2.0, -1.0, 1.0), 3.0), ChannelClosedError);
}

TEST_CASE("confluent second") {
  const double q = 0.3;
  const auto d = reflect_confluent_second(q, 1.0, q * q + 0.25);
  CHECK(d.k == doctest::Approx(0.5));
  CHECK(d.r_right->real() == 0.0);
  CHECK(d.r_right->imag() == doctest::Approx(0.0432139).epsilon(1e-6));
  for (double k : {0.01, 0.4, 2.0, 7.5}) {
    const auto e = reflect_confluent_second(0.125, 1.3, 0.015625 + k * k);
    CHECK((*e.r_right / Complex(0.0, 1.0)).real() > 0.0);
    CHECK((*e.r_right / Complex(0.0, 1.0)).imag() == 0.0);
    CHECK(std::abs(e.r_left) == doctest::Approx(std::exp(-2.0 * pi * k)).epsilon(1e-12));
  }
  const auto f = reflect_confluent_second(0.125, 1.0, 2.0);
  CHECK(rel(f.r_left, Complex(0.000142958380735869474704499008101, -0.00000898047789645397185190890292224)) < 1e-11);
  CHECK_THROWS_AS(reflect_confluent_second(0.125, 1.0, 0.01), ChannelClosedError);
}
