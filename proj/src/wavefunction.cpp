#include "hyperpot/wavefunction.hpp"

#include "hyperpot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hyperpot {

namespace {

using specfun::HypSpec;

// log of the real prefactor multiplying x^kappa
double log_prefactor(const Params& params, double x) {
  const double rho = rho_of(params);
  double v = -0.25 * std::log(x + rho);
  if (const auto* p = std::get_if<InvariantParams>(&params))
    v += (p->r - p->q + 0.25) * std::log1p(p->omega * x);
  else if (const auto* p = std::get_if<ConfluentFirstParams>(&params))
    v += 0.5 * p->beta * x;
  return v;
}

// dZ/dx for the hypergeometric argument Z = c x
double argument_slope(const Params& params, double energy) { return hyp_argument(params, energy, 1.0); }

constexpr double far_argument = 1.5;
constexpr double subtract_argument = 0.5;

// Bracket of the full case from the large-argument expansion. The x^{-a} term is dropped:
// the bracket operator annihilates it exactly.
struct FarBracket {
  std::vector<specfun::AsymptoticTerm> terms;

  static std::optional<FarBracket> build(const HypData& h, const std::optional<specfun::AsymptoticExpansion>& ex) {
    if (!ex) return std::nullopt;
    FarBracket fb;
    for (const auto& t : ex->terms)
      if (std::abs(t.exponent + h.a) > 1e-12) fb.terms.push_back(t);
    return fb;
  }

  // psi for u = omega x, given the log of the prefactor times x^kappa
  Complex psi(const HypData& h, double rho, double x, double u, Complex log_front) const {
    Complex total = 0.0;
    const double lu = std::log(u);
    for (const auto& t : terms) {
      if (t.coefficient == 0.0) continue;
      Complex sum = 0.0, pw = 1.0;
      int small = 0;
      for (std::size_t k = 0; k < t.corrections.size(); ++k) {
        const Complex s = -t.exponent + static_cast<double>(k);
        const Complex term = t.corrections[k] * pw * ((h.a - s) * x + rho * (h.a + 1.0 - s));
        const double at = std::abs(term);
        sum += term;
        small = at < 1e-17 * std::abs(sum) ? small + 1 : 0;
        if (small == 2) break;
        pw /= u;
      }
      total += t.coefficient * std::exp(log_front + t.exponent * lu) * sum;
    }
    return total;
  }
};

std::optional<specfun::AsymptoticExpansion> full_expansion(const HypData& h) {
  if (specfun::terminating_degree(h.spec()) >= 0) return std::nullopt;
  try {
    return specfun::connection_3f2(h.a, h.b, h.c, h.d, h.e, far_argument);
  } catch (const DegenerateError&) {
    return std::nullopt;
  }
}

// The x^{-a} power term as an exact two-term solution, when it dominates at large negative argument.
std::optional<specfun::AsymptoticTerm> annihilated_term(const Params& params, const HypData& h, double slope,
                                                        const std::optional<specfun::AsymptoticExpansion>& full) {
  if (slope >= 0.0 || specfun::terminating_degree(h.spec()) >= 0) return std::nullopt;
  std::optional<specfun::AsymptoticExpansion> ex;
  double others = 0.0;
  const HypSpec spec = h.spec();
  if (kind_of(params) == CaseKind::FullHypergeometric) {
    ex = full;
    others = std::min(h.b.real(), h.c.real());
  } else if (kind_of(params) == CaseKind::ConfluentFirst) {
    try {
      ex = specfun::connection_2f2(spec.upper[0], spec.upper[1], spec.lower[0], spec.lower[1], -far_argument);
    } catch (const DegenerateError&) {
    }
    others = spec.upper[1].real();
  }
  if (!ex || !(h.a.real() < others)) return std::nullopt;
  for (const auto& t : ex->terms) {
    if (t.kind == specfun::TermKind::Power && std::abs(t.exponent + h.a) <= 1e-12 && t.corrections.size() >= 2) {
      auto out = t;
      out.corrections.resize(2);
      return out;
    }
  }
  return std::nullopt;
}

// d psi / d energy by a Richardson-extrapolated central difference. Where psi vanishes
// identically in x this derivative solves the same equation.
std::vector<Complex> energy_derivative(const Params& params, double energy, std::span<const double> xs) {
  double edge = std::abs(energy - U_left(params));
  if (std::isfinite(U_right(params))) edge = std::min(edge, std::abs(energy - U_right(params)));
  const double d = std::min(3e-3 * std::max(1.0, std::abs(energy)), 0.05 * edge);
  if (!(d > 1e-8)) throw DegenerateError("psi: a = -n at a continuum edge leaves no closed form");
  auto central = [&](double step) {
    const auto up = psi_batch(params, energy + step, xs);
    const auto down = psi_batch(params, energy - step, xs);
    std::vector<Complex> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (up[i] - down[i]) / (2.0 * step);
    return out;
  };
  const auto d1 = central(d);
  const auto d2 = central(2.0 * d);
  const auto d3 = central(3.0 * d);
  std::vector<Complex> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (15.0 * d1[i] - 6.0 * d2[i] + d3[i]) / 10.0;
  return out;
}

void check_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("psi: x must be positive and finite");
}

} // namespace

double ground_state_psi(const Params& params, double x) {
  validate(params);
  check_x(x);
  return std::exp(q_of(params) * std::log(x) + log_prefactor(params, x));
}

std::vector<Complex> psi_batch(const Params& params, double energy, std::span<const double> xs) {
  const HypData h = hyp_data(params, energy);
  const double ar = h.a.real();
  if (h.a.imag() == 0.0 && ar < -0.5 && std::abs(ar - std::round(ar)) < 1e-12 * std::max(1.0, std::abs(ar)))
    return energy_derivative(params, energy, xs);
  const double slope = argument_slope(params, energy);
  const double rho = rho_of(params);
  std::vector<double> targets(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    check_x(xs[i]);
    targets[i] = slope * xs[i];
  }
  const double omega = omega_of(params);
  std::vector<double> near_targets;
  std::vector<std::size_t> near_index;
  std::optional<specfun::AsymptoticExpansion> full;
  if (kind_of(params) == CaseKind::FullHypergeometric && !xs.empty()) full = full_expansion(h);
  const auto far = FarBracket::build(h, full);
  std::vector<Complex> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (far && omega * xs[i] >= far_argument) {
      out[i] = far->psi(h, rho, xs[i], omega * xs[i], h.kappa * std::log(xs[i]) + log_prefactor(params, xs[i]));
    } else {
      near_targets.push_back(targets[i]);
      near_index.push_back(i);
    }
  }
  // removing the annihilated term avoids cancellation in the bracket
  const auto removed = near_targets.empty() ? std::nullopt : annihilated_term(params, h, slope, full);
  auto reduce = [&](double t) { return removed && std::abs(t) >= subtract_argument; };
  std::vector<double> plain_targets, reduced_targets;
  for (double t : near_targets) (reduce(t) ? reduced_targets : plain_targets).push_back(t);
  const auto plain = specfun::hyp_continued(h.spec(), plain_targets);
  const auto reduced = removed ? specfun::hyp_continued(h.spec(), reduced_targets, *removed)
                               : std::vector<specfun::ContinuedValue>{};
  std::vector<specfun::ContinuedValue> values;
  values.reserve(near_targets.size());
  std::size_t ip = 0, ir = 0;
  for (double t : near_targets) values.push_back(reduce(t) ? reduced[ir++] : plain[ip++]);
  for (std::size_t n = 0; n < near_index.size(); ++n) {
    const std::size_t i = near_index[n];
    const double x = xs[i];
    const Complex F = values[n].value;
    const Complex dF = values[n].derivative * slope;
    const Complex bracket = x * (x + rho) * dF + (h.a * x + rho * (h.a + 1.0)) * F;
    const Complex lg = h.kappa * std::log(x) + log_prefactor(params, x) + values[n].log_scale;
    out[i] = std::exp(lg) * bracket;
  }
  return out;
}

Complex psi(const Params& params, double energy, double x) {
  const double xs[1] = {x};
  return psi_batch(params, energy, std::span<const double>(xs, 1))[0];
}

Complex psi_derivative_free(const Params& params, double energy, double x) {
  check_x(x);
  const HypData h = hyp_data(params, energy);
  const double z = hyp_argument(params, energy, x);
  const double rho = rho_of(params);
  HypSpec first = h.spec();
  first.lower[0] = h.a + 1.0;
  HypSpec second = h.spec();
  second.upper[0] = h.a + 1.0;
  second.lower[0] = h.a + 2.0;
  const auto f1 = specfun::hyp_continued(first, z);
  const auto f2 = specfun::hyp_continued(second, z);
  const double base = std::max(f1.log_scale, f2.log_scale);
  const Complex bracket = rho * (h.a + 1.0) * f1.value * std::exp(f1.log_scale - base) +
                          h.a * x * f2.value * std::exp(f2.log_scale - base);
  return std::exp(h.kappa * std::log(x) + log_prefactor(params, x) + base) * bracket;
}

AsymptoticCoefficients asymptotic_coefficients(const Params& params, double energy) {
  const HypData h = hyp_data(params, energy);
  const double rho = rho_of(params);
  AsymptoticCoefficients out;
  out.left_amp = std::pow(rho, 0.75) * (h.a + 1.0);

  if (const auto* p = std::get_if<InvariantParams>(&params)) {
    const auto ex = specfun::connection_3f2(h.a, h.b, h.c, h.d, h.e, 1.0);
    auto coefficient_for = [&](Complex param) -> Complex {
      for (const auto& t : ex.terms)
        if (std::abs(t.exponent + param) < 1e-12) return t.coefficient;
      return 0.0;
    };
    const double lw = std::log(p->omega);
    const Complex front = std::exp(-(p->sigma() + 0.75) * lw);
    const Complex bbar = front * (h.a - h.b) * coefficient_for(h.b) * std::exp(-h.b * lw);
    const Complex cbar = front * (h.a - h.c) * coefficient_for(h.c) * std::exp(-h.c * lw);
    if (h.kappa_prime->imag() != 0.0) {
      out.right_out = bbar;
      out.right_in = cbar;
    } else {
      out.decaying = bbar;
      out.growing = cbar;
    }
  } else if (const auto* p = std::get_if<ConfluentFirstParams>(&params)) {
    const double z = hyp_argument(params, energy, 1.0);
    const auto ex = specfun::connection_2f2(h.a, h.b, h.d, h.e, z);
    if (p->beta > 0.0) {
      Complex bcoef = 0.0;
      for (const auto& t : ex.terms)
        if (t.kind == specfun::TermKind::Power && std::abs(t.exponent + h.b) < 1e-12) bcoef = t.coefficient;
      out.growing = (h.a - h.b) * bcoef * std::exp(-h.b * std::log(p->beta));
    } else {
      Complex ecoef = 0.0;
      for (const auto& t : ex.terms)
        if (t.kind == specfun::TermKind::Exponential) ecoef = t.coefficient;
      out.growing = -p->beta * ecoef;
    }
  }
  return out;
}

std::vector<WaveSample> sample_wavefunction(const Params& params, double energy, const GridMapping& grid) {
  const auto values = psi_batch(params, energy, grid.x_samples);
  std::vector<WaveSample> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = {grid.x_samples[i], grid.z_samples[i], values[i]};
  return out;
}

double norm_squared(const Params& params, double energy, const GridMapping& grid) {
  const auto values = psi_batch(params, energy, grid.x_samples);
  double s = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i)
    s += 0.5 * (std::norm(values[i]) + std::norm(values[i - 1])) * (grid.z_samples[i] - grid.z_samples[i - 1]);
  return s;
}

} // namespace hyperpot
