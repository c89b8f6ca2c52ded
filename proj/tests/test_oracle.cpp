#include <doctest.h>

#include "hyperpot/errors.hpp"
#include "hyperpot/oracle.hpp"
#include "hyperpot/potential.hpp"
#include "hyperpot/scattering.hpp"
#include "hyperpot/spectrum.hpp"
#include "hyperpot/wavefunction.hpp"

#include <cmath>
#include <numbers>

using namespace hyperpot;

namespace {

double phase_gap(Complex a, Complex b) { return std::abs(std::arg(a / b)); }

std::vector<double> residual_grid(const Params& p, double z_min, double z_max) {
  return GridMapping::build(p, z_min, z_max, 1000).x_samples;
}

} // namespace

TEST_CASE("grid validation") {
  CHECK_NOTHROW(ZGrid{-30.0, 30.0, 1e-3}.validate());
  CHECK(ZGrid{-30.0, 30.0, 1e-3}.size() == 60001);
  CHECK_THROWS_AS(ZGrid({0.0, 1.0, 0.3}).validate(), DomainError);
  CHECK_THROWS_AS(ZGrid({0.0, 1.0, 1e-2}).validate(), DomainError);
  CHECK_THROWS_AS(ZGrid({1.0, 0.0, 1e-3}).validate(), DomainError);
  CHECK(ZGrid::from_intervals(-1.0, 2.0, 3000).step == doctest::Approx(1e-3));
}

TEST_CASE("free propagation") {
  const ZGrid g = ZGrid::from_intervals(0.0, 1.0, 1000);
  const std::vector<double> U(g.size(), 0.0);
  const auto s = numerov_integrate<double>(U, g.step, 1.0, Direction::LeftToRight, 0.0, std::sin(g.step));
  const auto c = numerov_integrate<double>(U, g.step, 1.0, Direction::LeftToRight, 1.0, std::cos(g.step));
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max({worst, std::abs(s.psi[i] - std::sin(g.z(i))), std::abs(c.psi[i] - std::cos(g.z(i)))});
  CHECK(worst < 1e-8);
  const auto back = numerov_integrate<double>(U, g.step, 1.0, Direction::RightToLeft, std::sin(1.0), std::sin(1.0 - g.step));
  CHECK(std::abs(back.psi[0]) < 1e-8);
}

TEST_CASE("fourth order convergence") {
  const double k = 5.0;
  auto error = [&](std::size_t n) {
    const ZGrid g = ZGrid::from_intervals(0.0, 20.0, n);
    const std::vector<double> U(g.size(), 0.0);
    const auto s = numerov_integrate<double>(U, g.step, k * k, Direction::LeftToRight, 0.0, std::sin(k * g.step));
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(s.psi[i] - std::sin(k * g.z(i))));
    return worst;
  };
  const double ratio = error(2000) / error(4000);
  CHECK(ratio > 14.0);
  CHECK(ratio < 18.0);
}

TEST_CASE("overflow rescaling") {
  const ZGrid g = ZGrid::from_intervals(0.0, 100.0, 10000);
  const std::vector<double> U(g.size(), 100.0);
  const auto r = numerov_integrate<double>(U, g.step, 0.0, Direction::LeftToRight, 1.0, std::exp(10.0 * g.step));
  CHECK(r.rescalings > 0);
  CHECK(std::log(r.psi.back()) + r.log_scale == doctest::Approx(1000.0).epsilon(1e-6));
  CHECK(r.nodes == 0);
}

TEST_CASE("harmonic oscillator") {
  const ZGrid g = ZGrid::from_intervals(-10.0, 10.0, 20000);
  std::vector<double> U(g.size());
  for (std::size_t i = 0; i < U.size(); ++i) U[i] = g.z(i) * g.z(i);
  const auto levels = shoot_eigenvalues(U, g, 0.0, 8.0);
  REQUIRE(levels.size() == 4);
  for (int n = 0; n < 4; ++n) {
    CHECK(levels[n].energy == doctest::Approx(2.0 * n + 1.0).epsilon(1e-8));
    CHECK(levels[n].node_count == n);
    CHECK(!levels[n].coarse_grid);
  }
}

TEST_CASE("coarse grid warning") {
  const ZGrid g = ZGrid::from_intervals(-10.0, 10.0, 1000);
  std::vector<double> U(g.size());
  for (std::size_t i = 0; i < U.size(); ++i) U[i] = 40.0 * g.z(i) * g.z(i);
  const auto levels = shoot_eigenvalues(U, g, 0.0, 1500.0);
  REQUIRE(!levels.empty());
  CHECK(levels.back().coarse_grid);
  CHECK(!levels.front().coarse_grid);
}

TEST_CASE("shooting on the closed-form potentials") {
  const Params p = InvariantParams{2.0, -2.0, 1.0, 1.0, 0.0};
  const ZGrid grid = default_grid(p, 4.0);
  const auto U = sample_potential(p, grid);
  CHECK(std::abs(matching_mismatch(U, grid, 1.75)) < 1e-6);
  CHECK(std::abs(matching_mismatch(U, grid, 1.85)) > 1e-3);

  const auto levels = shoot_eigenvalues(p, grid);
  const std::vector<double> expected = {0.0, 1.75, 3.0, 3.75};
  REQUIRE(levels.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(std::abs(levels[i].energy - expected[i]) < 1e-6 * std::max(1.0, expected[i]));
    CHECK(levels[i].node_count == static_cast<int>(i));
  }

  const Params cf = ConfluentFirstParams::from_p(2.0, -1.0, 1.0);
  const auto cl = shoot_eigenvalues(cf, default_grid(cf, 4.0));
  REQUIRE(cl.size() >= 2);
  CHECK(cl[1].energy == doctest::Approx((-3.0 + std::sqrt(21.0)) / 2.0).epsilon(1e-6));
  CHECK(cl[1].energy == doctest::Approx(0.79129).epsilon(1e-5));

  const Params white = InvariantParams{0.5, 0.2, 1.0, 1.0, 0.0};
  CHECK(shoot_eigenvalues(white, default_grid(white, 1.0)).empty());
  CHECK_THROWS_AS(shoot_eigenvalues(p, 0.0, 4.5, grid), DomainError);
}

TEST_CASE("closed-form spectra agree with shooting") {
  const std::vector<Params> cases = {
      InvariantParams{2.0, -1.0, 1.0, 1.0, 0.0},      InvariantParams{1.7, -1.3, 1.0, 1.0 / 0.6, 0.0},
      InvariantParams{-1.7, 1.3, 1.0, 1.0 / 0.6, 0.0}, InvariantParams{-1.1, 2.7, 0.5, 1.0 / 3.0, 0.0},
      InvariantParams{1.2, 3.6, 2.0, 1.0 / 16.0, 0.0}, InvariantParams{3.1, 0.4, 0.7, 1.5, 0.0},
      ConfluentFirstParams::from_p(1.5, -0.7, 2.0),    ConfluentFirstParams::from_p(1.3, 1.6, 0.5),
      ConfluentFirstParams::from_p(-0.9, 2.5, 1.0)};
  for (const auto& p : cases) {
    const auto closed = solve_bound_states(p);
    const auto numeric = shoot_eigenvalues(p, default_grid(p, continuum_threshold(p)));
    REQUIRE(closed.size() == numeric.size());
    for (std::size_t i = 0; i < closed.size(); ++i) {
      CHECK(std::abs(numeric[i].energy - closed[i].energy) < 1e-6 * std::max(1.0, closed[i].energy));
      CHECK(numeric[i].node_count == static_cast<int>(i));
    }
  }
}

TEST_CASE("numeric reflection fixtures") {
  const ZGrid g = ZGrid::from_intervals(-10.0, 10.0, 20000);
  const std::vector<double> flat(g.size(), 0.3);
  CHECK(numeric_reflection(flat, g, 2.0).P < 1e-10);

  std::vector<double> step(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) step[i] = g.z(i) < -1e-12 ? 0.0 : (g.z(i) > 1e-12 ? 1.5 : 0.75);
  const double k = std::sqrt(3.0), kp = std::sqrt(1.5);
  CHECK(numeric_reflection(step, g, 3.0).P == doctest::Approx(std::pow((k - kp) / (k + kp), 2)).epsilon(1e-6));
  CHECK_THROWS_AS(numeric_reflection(std::vector<double>(g.size(), 5.0), g, 2.0), ChannelClosedError);
}

TEST_CASE("numeric reflection reproduces the amplitudes") {
  const InvariantParams g4{2.0, -2.0, 1.0, 0.25, 0.0};
  const auto n4 = numeric_reflection(g4, 5.0, scattering_grid(g4, 5.0));
  const double expected = std::pow(std::sinh(3.0 * std::numbers::pi) / std::sinh(5.0 * std::numbers::pi), 2);
  CHECK(n4.P == doctest::Approx(expected).epsilon(1e-3));

  for (const InvariantParams& p : {InvariantParams{1.3, -0.6, 0.8, 1.4, 0.0}, InvariantParams{-0.7, 0.9, 1.5, 0.6, 0.0},
                                   InvariantParams{0.4, 0.3, 1.0, 0.5, 0.0}}) {
    for (double factor : {1.1, 2.0}) {
      const double e = factor * std::max(p.q * p.q, p.r * p.r / p.g()) + 0.05;
      const auto n = numeric_reflection(p, e, scattering_grid(p, e));
      const auto a = reflect_full(p, e);
      CHECK(std::abs(n.P - a.P) < 1e-3 * std::max(a.P, 1e-3));
      if (a.P > 1e-6) CHECK(phase_gap(n.r_left, a.r_left) < 1e-3);
    }
  }

  const ConfluentFirstParams cf = ConfluentFirstParams::from_p(2.0, -1.0, 1.0);
  const auto nc = numeric_reflection(cf, 5.0, scattering_grid(cf, 5.0));
  CHECK(nc.P == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(phase_gap(nc.r_left, reflect_confluent_first(cf, 5.0).r_left) < 1e-3);
  const ConfluentFirstParams cfp{0.7, 1.3, 0.4, 0.0};
  const auto np = numeric_reflection(cfp, 2.2, scattering_grid(cfp, 2.2));
  CHECK(phase_gap(np.r_left, reflect_confluent_first(cfp, 2.2).r_left) < 1e-3);

  const ConfluentSecondParams cs{0.125, 1.0, 0.0};
  const auto ns = numeric_reflection(cs, 2.0, scattering_grid(cs, 2.0));
  const auto as = reflect_confluent_second(0.125, 1.0, 2.0);
  CHECK(std::abs(std::abs(ns.r_left) - std::abs(as.r_left)) < 1e-3 * std::abs(as.r_left));
  CHECK(phase_gap(ns.r_left, as.r_left) < 1e-3);

  CHECK_THROWS_AS(numeric_reflection(g4, 5.0, ZGrid{-5.0, 5.0, 1e-3}), BoxTooSmallError);
}

TEST_CASE("residual of the closed forms") {
  const InvariantParams p{2.0, -2.0, 1.0, 1.0, 0.0};
  const auto xs = residual_grid(p, -15.0, 15.0);
  auto ground = [&](double x) { return Complex(ground_state_psi(p, x)); };
  CHECK(residual_norm(p, 0.0, ground, xs) < 1e-8);
  auto excited = [](double x) { return Complex(0.5 * std::pow(x, 1.5) * (1.0 - x) * std::pow(1.0 + x, -4.0)); };
  CHECK(residual_norm(p, 1.75, excited, xs) < 1e-8);
  CHECK(residual_norm(p, 1.85, excited, xs) > 1e-2);
  auto continuum = [&](double x) { return psi(p, 5.0, x); };
  CHECK(residual_norm(p, 5.0, continuum, xs) < 1e-6);
}

TEST_CASE("residual of the general solution") {
  const std::vector<std::pair<Params, std::vector<double>>> cases = {
      {InvariantParams{1.3, -0.6, 0.8, 1.4, 0.0}, {0.0, 0.7, 1.9, 2.5, 6.0}},
      {InvariantParams{-0.7, 1.9, 1.5, 0.6, 0.0}, {0.3, 3.0, 4.5}},
      {InvariantParams{2.4, 0.9, 0.5, 0.5, 0.0}, {1.0, 5.7, 9.0}},
      {ConfluentFirstParams{1.3, 0.9, -1.7, 0.0}, {0.8, 2.9, 4.0}},
      {ConfluentFirstParams{0.8, 1.1, 0.6, 0.0}, {0.3, 1.5}},
      {ConfluentSecondParams{0.9, 1.4, 0.0}, {0.5, 1.6, 3.0}},
      {ConfluentSecondParams{0.125, 1.0, 0.0}, {0.0, 2.0}}};
  for (const auto& [p, energies] : cases) {
    const auto xs = residual_grid(p, -12.0, 12.0);
    for (double e : energies) {
      auto f = [&](std::span<const double> pts) { return psi_batch(p, e, pts); };
      CHECK(residual_norm_batch(p, e, f, xs) < 1e-6);
      auto pointwise = [&](double x) { return psi(p, e, x); };
      if (e == energies.front()) CHECK(residual_norm(p, e, pointwise, xs) < 1e-6);
    }
  }
}
