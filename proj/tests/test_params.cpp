#include <doctest.h>

#include "hyperpot/errors.hpp"
#include "hyperpot/params.hpp"
#include "hyperpot/potential.hpp"

#include <cmath>
#include <random>

using namespace hyperpot;

TEST_CASE("dependent coefficients") {
  const auto z = derive_dependent({0.0, 1.7, -0.3, 2.0, 1.5});
  CHECK(z.delta == 0.0);
  CHECK(z.eps_coeff == 0.0);
  CHECK(z.zeta_coeff == 0.0);
  for (double w : {0.0, 0.3, 4.0}) CHECK(std::abs(derive_dependent({1.0, 1.0, 0.0, w, 2.0}).delta - 1.0) < 1e-15);
  for (double al : {-2.0, 0.5, 3.0}) CHECK(derive_dependent({1.0, al, 0.7, 1.1, 0.9}).eps_coeff == 0.0);
}

TEST_CASE("invariant parameters from raw") {
  CHECK(invariant_from_raw({0.0, 1.0, 0.3, 1.0, 1.0}).q == 0.0);
  const auto p = invariant_from_raw({1.0, 2.0, 1.5, 1.5, 1.0});
  CHECK(p.q == 2.0);
  CHECK(p.r == 1.0);
  CHECK(invariant_from_raw({1.0, 0.0, 1.0, 1.0, 1.0}).lambda0 == 0.0);
  CHECK_THROWS_AS(invariant_from_raw({1.0, 0.0, 1.0, 0.0, 1.0}), DomainError);
  CHECK(p.sigma() == p.q - p.r - 1.0);
  CHECK(p.g() == 1.0 / (p.rho * p.omega));
}

TEST_CASE("case classification") {
  CHECK(classify_case(1.0, 5.0) == CaseKind::FullHypergeometric);
  CHECK(classify_case(0.0, 2.0) == CaseKind::ConfluentFirst);
  CHECK(classify_case(0.0, 0.0) == CaseKind::ConfluentSecond);
  CHECK(kind_of(params_from_raw({0.5, 1.0, 2.0, 0.0, 1.0})) == CaseKind::ConfluentFirst);
  CHECK(kind_of(params_from_raw({0.5, 1.0, 0.0, 0.0, 1.0})) == CaseKind::ConfluentSecond);
  CHECK_THROWS_AS(validate(Params{InvariantParams{1.0, 1.0, -1.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(validate(Params{ConfluentFirstParams{1.0, 1.0, 0.0}}), DomainError);
}

TEST_CASE("confluent p parameter") {
  const auto c = ConfluentFirstParams::from_p(2.0, -1.0, 0.5);
  CHECK(std::abs(c.p() * c.rho * c.beta - 1.0) < 1e-15);
  CHECK(c.beta == -2.0);
}

TEST_CASE("hypergeometric parameters") {
  const Params full = InvariantParams{2.0, -2.0, 1.0, 1.0};
  const auto h0 = hyp_data(full, 0.0);
  CHECK(h0.a == Complex(0.0));
  CHECK(h0.d == Complex(2.0));
  CHECK(h0.e == Complex(5.0));
  CHECK(std::abs(hyp_data(full, 1.75).b) < 1e-15);
  const auto h5 = hyp_data(full, 5.0);
  CHECK(std::abs(h5.a - Complex(-2.0, -1.0)) < 1e-15);
  const Params cf = ConfluentFirstParams::from_p(2.0, -1.0, 1.0);
  const Params cs = ConfluentSecondParams{0.2, 1.0};
  for (const Params& p : {full, cf, cs})
    for (double eps : {-1.0, 0.0, 0.3, 3.0, 7.0}) {
      const auto h = hyp_data(p, eps);
      CHECK(h.d - h.a == Complex(2.0));
    }
  CHECK(hyp_data(cf, 1.0).upper_count == 2);
  CHECK(hyp_data(cs, 1.0).upper_count == 1);
  CHECK(std::abs(hyp_data(cf, 0.5).b - (hyp_data(cf, 0.5).a + (-1.0) * 0.5 + 1.0)) < 1e-15);
}

TEST_CASE("branch continuity at q^2") {
  const Params full = InvariantParams{1.3, -0.4, 0.8, 1.7};
  const double q2 = 1.3 * 1.3;
  const auto below = hyp_data(full, q2 - 1e-12);
  const auto above = hyp_data(full, q2 + 1e-12);
  CHECK(std::abs(below.a - Complex(-1.3)) < 1e-5);
  CHECK(std::abs(above.a - Complex(-1.3)) < 1e-5);
  CHECK(above.kappa.imag() < 0.0);
}

TEST_CASE("exponents follow the raw characteristic roots") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.2, 5.0);
  for (int i = 0; i < 50; ++i) {
    const RawParams raw{u(rng), 1.5 * u(rng), 1.5 * u(rng), pos(rng), pos(rng)};
    const auto inv = invariant_from_raw(raw);
    const double eps = 3.0 * u(rng) + 2.0;
    const auto h = hyp_data(inv, eps, raw.s);
    const double V0 = inv.q * inv.q + inv.lambda0;
    const double Vinf = inv.rho * inv.omega * inv.r * inv.r + inv.lambda0;
    const double lambda = eps + inv.lambda0;
    const Complex root0 = kappa(0.0, lambda - V0);
    const Complex rootinf = kappa(0.0, lambda - Vinf) / std::sqrt(raw.rho * raw.omega);
    CHECK(std::abs(h.mu - ((3.0 - raw.alpha - raw.s) / 2.0 + root0)) < 1e-12);
    CHECK(std::abs(h.mu_bar - ((3.0 - raw.alpha - raw.s) / 2.0 - root0)) < 1e-12);
    CHECK(std::abs(*h.nu - ((2.0 - raw.beta / raw.omega - raw.s) / 2.0 - rootinf)) < 1e-10);
    CHECK(std::abs(*h.nu_bar - ((2.0 - raw.beta / raw.omega - raw.s) / 2.0 + rootinf)) < 1e-10);
  }
}

TEST_CASE("lambda0 shift sets the asymptotic levels") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.2, 5.0);
  for (int i = 0; i < 50; ++i) {
    const RawParams raw{u(rng), 1.5 * u(rng), 1.5 * u(rng), pos(rng), pos(rng)};
    const auto inv = invariant_from_raw(raw);
    const auto c = raw_coefficients(raw);
    const double U0 = evaluate_U(c, 1e-12);
    const double Uinf = evaluate_U(c, 1e12);
    CHECK(std::abs(U0 - inv.q * inv.q) < 1e-8 * (1.0 + inv.q * inv.q));
    const double target = inv.rho * inv.omega * inv.r * inv.r;
    CHECK(std::abs(Uinf - target) < 1e-6 * (1.0 + target));
  }
}
