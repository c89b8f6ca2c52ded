#include "hyperpot/params.hpp"

#include "hyperpot/errors.hpp"

#include <cmath>

namespace hyperpot {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

bool finite(double v) { return std::isfinite(v); }

} // namespace

std::string to_string(CaseKind kind) {
  switch (kind) {
  case CaseKind::FullHypergeometric: return "full";
  case CaseKind::ConfluentFirst: return "confluent-first";
  case CaseKind::ConfluentSecond: return "confluent-second";
  }
  return "unknown";
}

ConfluentFirstParams ConfluentFirstParams::from_p(double q, double p, double rho) {
  require(p != 0.0 && finite(p), "p must be finite and nonzero");
  require(rho > 0.0, "rho must be positive");
  return {q, rho, 1.0 / (rho * p), 0.0};
}

CaseKind kind_of(const Params& params) {
  return std::visit(overloaded{[](const InvariantParams&) { return CaseKind::FullHypergeometric; },
                               [](const ConfluentFirstParams&) { return CaseKind::ConfluentFirst; },
                               [](const ConfluentSecondParams&) { return CaseKind::ConfluentSecond; }},
                    params);
}

double q_of(const Params& params) {
  return std::visit([](const auto& p) { return p.q; }, params);
}

double rho_of(const Params& params) {
  return std::visit([](const auto& p) { return p.rho; }, params);
}

double omega_of(const Params& params) {
  if (const auto* p = std::get_if<InvariantParams>(&params)) return p->omega;
  return 0.0;
}

double beta_of(const Params& params) {
  if (const auto* p = std::get_if<ConfluentFirstParams>(&params)) return p->beta;
  return 0.0;
}

void validate(const Params& params) {
  std::visit(overloaded{[](const InvariantParams& p) {
                          require(finite(p.q) && finite(p.r), "q and r must be finite");
                          require(p.rho > 0.0 && finite(p.rho), "rho must be positive");
                          require(p.omega > 0.0 && finite(p.omega), "omega must be positive in the full case");
                        },
                        [](const ConfluentFirstParams& p) {
                          require(finite(p.q), "q must be finite");
                          require(p.rho > 0.0 && finite(p.rho), "rho must be positive");
                          require(p.beta != 0.0 && finite(p.beta), "beta must be finite and nonzero");
                        },
                        [](const ConfluentSecondParams& p) {
                          require(finite(p.q), "q must be finite");
                          require(p.rho > 0.0 && finite(p.rho), "rho must be positive");
                        }},
             params);
}

void validate(const RawParams& raw) {
  require(finite(raw.s) && finite(raw.alpha) && finite(raw.beta), "raw parameters must be finite");
  require(raw.rho > 0.0 && finite(raw.rho), "rho must be positive");
  require(raw.omega >= 0.0 && finite(raw.omega), "omega must be non-negative");
}

DependentCoefficients derive_dependent(const RawParams& raw) {
  require(raw.rho > 0.0, "rho must be positive");
  const double s = raw.s, al = raw.alpha, be = raw.beta, om = raw.omega, rho = raw.rho;
  DependentCoefficients d;
  d.delta = (3.0 * (1.0 - om * rho) * s * s + (2.0 * al - 2.0 * be * rho + 3.0 * om * rho - 3.0) * s) / rho;
  d.eps_coeff = -(s * s * s + (al - 3.0) * s * s + (2.0 - al) * s);
  d.zeta_coeff = -((3.0 - 2.0 * om * rho) * s * s * s + (2.0 * al - be * rho) * s * s +
                   (2.0 * al - be * rho + 2.0 * om * rho - 3.0) * s) /
                 rho;
  return d;
}

double lambda0_of(const RawParams& raw) { return -(3.0 * raw.s * raw.s + (2.0 * raw.alpha - 3.0) * raw.s); }

InvariantParams invariant_from_raw(const RawParams& raw) {
  validate(raw);
  if (raw.omega == 0.0) throw DomainError("invariant_from_raw: omega = 0, use the confluent parametrization");
  InvariantParams p;
  p.q = (3.0 * raw.s + raw.alpha - 1.0) / 2.0;
  p.r = (3.0 * raw.s + raw.beta / raw.omega - 2.0) / 2.0;
  p.rho = raw.rho;
  p.omega = raw.omega;
  p.lambda0 = lambda0_of(raw);
  return p;
}

Params params_from_raw(const RawParams& raw) {
  validate(raw);
  const double q = (3.0 * raw.s + raw.alpha - 1.0) / 2.0;
  switch (classify_case(raw.omega, raw.beta)) {
  case CaseKind::FullHypergeometric: return invariant_from_raw(raw);
  case CaseKind::ConfluentFirst: return ConfluentFirstParams{q, raw.rho, raw.beta, lambda0_of(raw)};
  case CaseKind::ConfluentSecond: break;
  }
  return ConfluentSecondParams{q, raw.rho, lambda0_of(raw)};
}

CaseKind classify_case(double omega, double beta) {
  if (omega < 0.0) throw DomainError("classify_case: omega must be non-negative");
  if (omega > 0.0) return CaseKind::FullHypergeometric;
  return beta != 0.0 ? CaseKind::ConfluentFirst : CaseKind::ConfluentSecond;
}

Complex kappa(double q, double energy) {
  const double d = q * q - energy;
  return d >= 0.0 ? Complex(std::sqrt(d), 0.0) : Complex(0.0, -std::sqrt(-d));
}

Complex kappa_prime(double r, double g, double energy) {
  const double d = r * r - g * energy;
  return d >= 0.0 ? Complex(std::sqrt(d), 0.0) : Complex(0.0, -std::sqrt(-d));
}

specfun::HypSpec HypData::spec(Complex argument) const {
  specfun::HypSpec s;
  s.upper = {a};
  if (upper_count >= 2) s.upper.push_back(b);
  if (upper_count >= 3) s.upper.push_back(c);
  s.lower = {d, e};
  s.argument = argument;
  return s;
}

HypData hyp_data(const Params& params, double energy, double s) {
  validate(params);
  require(finite(energy), "energy must be finite");
  HypData h;
  h.kind = kind_of(params);
  const double q = q_of(params);
  h.kappa = kappa(q, energy);
  h.a = -q + h.kappa;
  h.d = h.a + 2.0;
  h.e = 1.0 + 2.0 * h.kappa;
  h.mu = s + 1.0 - q + h.kappa;
  h.mu_bar = s + 1.0 - q - h.kappa;
  if (const auto* p = std::get_if<InvariantParams>(&params)) {
    const Complex kp = kappa_prime(p->r, p->g(), energy);
    h.kappa_prime = kp;
    h.upper_count = 3;
    h.b = h.kappa + kp - p->sigma();
    h.c = h.kappa - kp - p->sigma();
    h.nu = s - p->r - kp;
    h.nu_bar = s - p->r + kp;
  } else if (const auto* p = std::get_if<ConfluentFirstParams>(&params)) {
    h.upper_count = 2;
    h.b = h.a + p->p() * energy + 1.0;
  } else {
    h.upper_count = 1;
  }
  return h;
}

double hyp_argument(const Params& params, double energy, double x) {
  switch (kind_of(params)) {
  case CaseKind::FullHypergeometric: return -omega_of(params) * x;
  case CaseKind::ConfluentFirst: return -beta_of(params) * x;
  case CaseKind::ConfluentSecond: break;
  }
  return -energy * x / rho_of(params);
}

} // namespace hyperpot
