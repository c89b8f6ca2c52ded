#pragma once

#include "hyperpot/specfun.hpp"

#include <optional>
#include <string>
#include <variant>

namespace hyperpot {

enum class CaseKind { FullHypergeometric, ConfluentFirst, ConfluentSecond };

std::string to_string(CaseKind kind);

// Raw operator parameters; gamma is fixed to zero.
struct RawParams {
  double s = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double omega = 0.0;
  double rho = 1.0;
};

// Operator coefficients delta, epsilon, zeta of L (not the energy).
struct DependentCoefficients {
  double delta = 0.0;
  double eps_coeff = 0.0;
  double zeta_coeff = 0.0;
};

struct InvariantParams {
  double q = 0.0;
  double r = 0.0;
  double rho = 1.0;
  double omega = 1.0;
  double lambda0 = 0.0;

  double g() const { return 1.0 / (rho * omega); }
  double sigma() const { return q - r - 1.0; }
};

struct ConfluentFirstParams {
  double q = 0.0;
  double rho = 1.0;
  double beta = 1.0;
  double lambda0 = 0.0;

  double p() const { return 1.0 / (rho * beta); }
  static ConfluentFirstParams from_p(double q, double p, double rho);
};

struct ConfluentSecondParams {
  double q = 0.0;
  double rho = 1.0;
  double lambda0 = 0.0;
};

using Params = std::variant<InvariantParams, ConfluentFirstParams, ConfluentSecondParams>;

CaseKind kind_of(const Params& params);
double q_of(const Params& params);
double rho_of(const Params& params);
// omega (0 for confluent kinds) and beta (0 for the full and second kinds)
double omega_of(const Params& params);
double beta_of(const Params& params);

// Throws DomainError naming the violated invariant.
void validate(const Params& params);
void validate(const RawParams& raw);

DependentCoefficients derive_dependent(const RawParams& raw);
double lambda0_of(const RawParams& raw);
InvariantParams invariant_from_raw(const RawParams& raw);
// Dispatches on classify_case(raw.omega, raw.beta).
Params params_from_raw(const RawParams& raw);
CaseKind classify_case(double omega, double beta);

// sqrt(q^2 - eps), continued as -i sqrt(eps - q^2) above q^2.
Complex kappa(double q, double energy);
// sqrt(r^2 - g eps), continued as -i sqrt(g eps - r^2).
Complex kappa_prime(double r, double g, double energy);

// F = pFq(upper; d, e; arg) with upper = (a, b, c) truncated to upper_count.
// Slots follow the full case; in the confluent kinds d = a + 2 and e = 1 + 2 kappa are
// the lower parameters (named c, d resp. b, c in their own formulas).
struct HypData {
  CaseKind kind = CaseKind::FullHypergeometric;
  int upper_count = 3;
  Complex a, b, c, d, e;
  Complex kappa;
  std::optional<Complex> kappa_prime;
  // exponents of y at x -> 0 and x -> infinity for exponent offset s
  Complex mu, mu_bar;
  std::optional<Complex> nu, nu_bar;

  specfun::HypSpec spec(Complex argument = 0.0) const;
};

HypData hyp_data(const Params& params, double energy, double s = 0.0);

// Argument of F at x: -omega x, -beta x or -eps x / rho.
double hyp_argument(const Params& params, double energy, double x);

} // namespace hyperpot
