#include "hyperpot/errors.hpp"
#include "hyperpot/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hyperpot::specfun {

namespace {

constexpr int kMaxTerms = 200000;

void check_shape(const HypSpec& spec) {
  if (spec.upper.size() > 3 || spec.lower.size() > 2)
    throw DomainError("hypergeometric: supported orders are p <= 3, q <= 2");
  if (spec.upper.size() > spec.lower.size() + 1)
    throw DomainError("hypergeometric: p > q + 1 has zero radius of convergence");
  for (const Complex& v : spec.upper)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("hypergeometric: non-finite parameter");
  for (const Complex& v : spec.lower)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("hypergeometric: non-finite parameter");
  const int n = terminating_degree(spec);
  for (const Complex& b : spec.lower) {
    if (!is_nonpositive_integer(b)) continue;
    const int m = static_cast<int>(-b.real());
    if (n < 0 || n > m)
      throw PoleError("hypergeometric: lower parameter " + std::to_string(b.real()) +
                      " is a non-positive integer and the series does not terminate before it");
  }
}

Complex ratio(const HypSpec& spec, int n) {
  Complex num = 1.0, den = static_cast<double>(n + 1);
  for (const Complex& a : spec.upper) num *= a + static_cast<double>(n);
  for (const Complex& b : spec.lower) den *= b + static_cast<double>(n);
  return num / den;
}

// Sums t_n * n^k for k = 0..order.
std::vector<Complex> sum_series(const HypSpec& spec, std::size_t order, double tol) {
  check_shape(spec);
  const Complex z = spec.argument;
  std::vector<Complex> sums(order + 1, 0.0);
  const int degree = terminating_degree(spec);
  auto add = [&](int n, Complex t) {
    double w = 1.0;
    for (std::size_t k = 0; k <= order; ++k) {
      sums[k] += w * t;
      w *= n;
    }
  };

  Complex t = 1.0;
  if (degree >= 0) {
    for (int n = 0; n <= degree; ++n) {
      add(n, t);
      t *= ratio(spec, n) * z;
    }
    return sums;
  }
  if (spec.upper.size() == spec.lower.size() + 1 && std::abs(z) >= 1.0)
    throw DomainError("hyp_series: argument outside the disk of convergence");

  std::vector<double> max_term(order + 1, 0.0);
  int small = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    add(n, t);
    const Complex next = t * ratio(spec, n) * z;
    const double at = std::abs(t);
    const double an = std::abs(next);
    bool all_small = true;
    bool tail_ok = true;
    for (std::size_t k = 0; k <= order; ++k) {
      const double wk = std::pow(static_cast<double>(n), static_cast<double>(k));
      max_term[k] = std::max(max_term[k], at * wk);
      const double scale = tol * std::max(std::abs(sums[k]), 1e-3 * max_term[k]);
      if (at * wk >= scale && !(n == 0 && k > 0)) all_small = false;
      const double wn = std::pow(n + 1.0, static_cast<double>(k));
      const double wnn = std::pow(n + 2.0, static_cast<double>(k));
      const double r = at > 0.0 ? (an / at) * (wn > 0.0 ? wnn / wn : 1.0) : 0.0;
      if (r >= 1.0 || an * wn / (1.0 - r) > scale) tail_ok = false;
    }
    small = all_small ? small + 1 : 0;
    if (next == 0.0) return sums;
    if (small >= 3 && tail_ok) return sums;
    t = next;
  }
  throw ConvergenceError("hyp_series: tail bound not reached within the term cap");
}

} // namespace

int terminating_degree(const HypSpec& spec) {
  int best = -1;
  for (const Complex& a : spec.upper) {
    if (!is_nonpositive_integer(a)) continue;
    const int n = static_cast<int>(-a.real());
    if (best < 0 || n < best) best = n;
  }
  return best;
}

Complex hyp_series(const HypSpec& spec, double tol) { return sum_series(spec, 0, tol)[0]; }

std::vector<Complex> hyp_series_theta(const HypSpec& spec, std::size_t order, double tol) {
  return sum_series(spec, order, tol);
}

} // namespace hyperpot::specfun
