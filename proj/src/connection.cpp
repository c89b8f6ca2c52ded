#include "hyperpot/errors.hpp"
#include "hyperpot/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hyperpot::specfun {

namespace {

constexpr int kMaxCorrections = 400;
const Complex kI(0.0, 1.0);

using Poly = std::vector<Complex>;

Poly expand(const std::vector<Complex>& roots) {
  Poly poly{1.0};
  for (const Complex& c : roots) {
    Poly next(poly.size() + 1, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += c * poly[k];
      next[k + 1] += poly[k];
    }
    poly = std::move(next);
  }
  return poly;
}

Poly scaled(Poly p, Complex s) {
  Complex f = 1.0;
  for (auto& c : p) {
    c *= f;
    f *= s;
  }
  return p;
}

// sum_m v^m A_m(theta_v) F = 0 with the formal solution e^{lambda v} v^mu sum c_k v^-k
struct FormalProblem {
  std::vector<Poly> A;
  Complex lambda;

  // e^{-lambda v} v^{-mu} L[e^{lambda v} v^mu] = sum_j R_j(mu) v^j
  std::vector<Complex> R(Complex mu) const {
    std::size_t nmax = 0;
    for (const auto& a : A) nmax = std::max(nmax, a.size());
    std::vector<std::vector<Complex>> T(nmax, std::vector<Complex>(nmax, 0.0));
    T[0][0] = 1.0;
    for (std::size_t n = 0; n + 1 < nmax; ++n)
      for (std::size_t i = 0; i <= n + 1; ++i) {
        Complex v = 0.0;
        if (i >= 1) v += lambda * T[n][i - 1];
        if (i <= n) v += (mu + static_cast<double>(i)) * T[n][i];
        T[n + 1][i] = v;
      }
    std::vector<Complex> out(A.size() + nmax, 0.0);
    for (std::size_t m = 0; m < A.size(); ++m)
      for (std::size_t n = 0; n < A[m].size(); ++n)
        for (std::size_t i = 0; i <= n; ++i) out[m + i] += A[m][n] * T[n][i];
    return out;
  }

  int top_index() const {
    const Complex probes[2] = {Complex(0.37, 0.21), Complex(-1.3, 0.55)};
    int J = -1;
    for (const Complex& mu : probes) {
      const auto r = R(mu);
      double big = 0.0;
      for (const auto& v : r) big = std::max(big, std::abs(v));
      for (int j = static_cast<int>(r.size()) - 1; j >= 0; --j)
        if (std::abs(r[j]) > 1e-9 * big) {
          J = std::max(J, j);
          break;
        }
    }
    return J;
  }

  std::vector<Complex> corrections(Complex mu0, int max_k) const {
    const int J = top_index();
    std::vector<Complex> c{1.0};
    std::vector<std::vector<Complex>> Rcache;
    Rcache.push_back(R(mu0));
    for (int k = 1; k <= max_k; ++k) {
      Rcache.push_back(R(mu0 - static_cast<double>(k)));
      const Complex den = Rcache[k][J];
      if (std::abs(den) == 0.0) break;
      Complex num = 0.0;
      for (int i = 0; i < k; ++i) {
        const int j = J - k + i;
        if (j < 0) continue;
        num += c[i] * Rcache[i][j];
      }
      const Complex ck = -num / den;
      if (!std::isfinite(std::abs(ck)) || std::abs(ck) > 1e250) break;
      c.push_back(ck);
    }
    return c;
  }

  double indicial(Complex mu0) const {
    const int J = top_index();
    const double scale = std::abs(R(mu0 - 1.0)[J]) + std::abs(R(mu0 + 1.0)[J]);
    return std::abs(R(mu0)[J]) / std::max(scale, 1e-300);
  }
};

struct Operators {
  Poly P, Q;
};

Operators operators(const HypSpec& spec) {
  std::vector<Complex> lower_roots{0.0};
  for (const Complex& b : spec.lower) lower_roots.push_back(b - 1.0);
  return {expand(lower_roots), expand(spec.upper)};
}

FormalProblem problem_for(const HypSpec& spec, TermKind kind, Complex rate) {
  const Operators ops = operators(spec);
  switch (kind) {
  case TermKind::Power: {
    return {{ops.P, ops.Q}, 0.0};
  }
  case TermKind::Exponential: {
    Poly mq = ops.Q;
    for (auto& c : mq) c = -c;
    return {{ops.P, mq}, 1.0};
  }
  case TermKind::Oscillatory:
  default:
    return {{scaled(ops.P, 0.5), Poly{0.0}, scaled(ops.Q, 0.5)}, rate};
  }
}

Complex start_exponent(const AsymptoticTerm& t) {
  return t.kind == TermKind::Oscillatory ? 2.0 * t.exponent : t.exponent;
}

void check_generic(const std::vector<Complex>& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const Complex d = a[i] - a[j];
      if (std::abs(d.imag()) < 1e-9 && std::abs(d.real() - std::round(d.real())) < 1e-9)
        throw DegenerateError("connection formula: upper parameters differ by an integer (logarithmic case)");
    }
}

Complex log_gamma_product(const std::vector<Complex>& num, const std::vector<Complex>& den, bool& zero) {
  Complex s = 0.0;
  zero = false;
  for (const Complex& v : num) s += log_gamma(v);
  for (const Complex& v : den) {
    if (is_nonpositive_integer(v)) {
      zero = true;
      return 0.0;
    }
    s -= log_gamma(v);
  }
  return s;
}

double radius_from(const std::vector<Complex>& c) {
  double r = 1.0;
  for (std::size_t k = 1; k < std::min<std::size_t>(c.size(), 4); ++k)
    r = std::max(r, std::pow(std::abs(c[k]), 1.0 / static_cast<double>(k)));
  return 10.0 * r;
}

void finish_term(const HypSpec& spec, AsymptoticTerm& t, int max_k) {
  const FormalProblem fp = problem_for(spec, t.kind, t.rate);
  t.corrections = fp.corrections(start_exponent(t), max_k);
}

// Power terms (-z)^{-a_j}; plus the terminating shortcut.
AsymptoticExpansion power_part(const HypSpec& spec, bool& terminated) {
  AsymptoticExpansion ex;
  const auto& a = spec.upper;
  const auto& b = spec.lower;
  const int n = terminating_degree(spec);
  terminated = n >= 0;
  if (terminated) {
    std::size_t jn = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (is_nonpositive_integer(a[j]) && static_cast<int>(-a[j].real()) == n) jn = j;
    Complex coef = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (i != jn) coef *= pochhammer(a[i], static_cast<unsigned>(n));
    for (const Complex& bl : b) coef /= pochhammer(bl, static_cast<unsigned>(n));
    AsymptoticTerm t;
    t.coefficient = coef;
    t.exponent = static_cast<double>(n);
    t.kind = TermKind::Power;
    t.polynomial = true;
    finish_term(spec, t, n);
    t.corrections.resize(static_cast<std::size_t>(n) + 1, 0.0);
    ex.terms.push_back(t);
    ex.validity_radius = 0.0;
    return ex;
  }
  check_generic(a);
  for (std::size_t j = 0; j < a.size(); ++j) {
    std::vector<Complex> num, den;
    for (const Complex& bl : b) num.push_back(bl);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (i != j) {
        num.push_back(a[i] - a[j]);
        den.push_back(a[i]);
      }
    for (const Complex& bl : b) den.push_back(bl - a[j]);
    bool zero = false;
    const Complex lg = log_gamma_product(num, den, zero);
    AsymptoticTerm t;
    t.coefficient = zero ? Complex(0.0) : std::exp(lg);
    t.exponent = -a[j];
    t.kind = TermKind::Power;
    finish_term(spec, t, kMaxCorrections);
    ex.terms.push_back(t);
    if (!zero) ex.validity_radius = std::max(ex.validity_radius, radius_from(t.corrections));
  }
  return ex;
}

Complex sum_corrections(const AsymptoticTerm& t, Complex v) {
  Complex sum = 0.0;
  Complex pw = 1.0;
  const Complex inv = 1.0 / v;
  double prev = INFINITY;
  for (std::size_t k = 0; k < t.corrections.size(); ++k) {
    const Complex term = t.corrections[k] * pw;
    const double at = std::abs(term);
    if (!t.polynomial) {
      if (at > prev) break;
      if (k > 0 && at < 1e-17 * std::abs(sum)) {
        sum += term;
        break;
      }
    }
    sum += term;
    prev = at;
    pw *= inv;
  }
  return sum;
}

} // namespace

Complex AsymptoticTerm::evaluate(double z, double log_scale) const {
  if (coefficient == 0.0) return 0.0;
  Complex log_part = std::log(coefficient) - log_scale;
  Complex v;
  switch (kind) {
  case TermKind::Power:
    v = Complex(-z, 0.0);
    log_part += exponent * std::log(v);
    break;
  case TermKind::Exponential:
    v = Complex(z, 0.0);
    log_part += exponent * std::log(v) + z;
    break;
  case TermKind::Oscillatory:
    v = std::sqrt(Complex(-z, 0.0));
    log_part += 2.0 * exponent * std::log(v) + rate * v;
    break;
  }
  return std::exp(log_part) * sum_corrections(*this, v);
}

Complex AsymptoticTerm::leading(double z, double log_scale) const {
  AsymptoticTerm t = *this;
  t.corrections = {1.0};
  t.polynomial = true;
  return t.evaluate(z, log_scale);
}

Complex AsymptoticExpansion::evaluate(double z, double log_scale) const {
  Complex s = 0.0;
  for (const auto& t : terms) s += t.evaluate(z, log_scale);
  return s;
}

Complex AsymptoticExpansion::leading(double z, double log_scale) const {
  Complex s = 0.0;
  for (const auto& t : terms) s += t.leading(z, log_scale);
  return s;
}

std::size_t AsymptoticExpansion::power_terms() const {
  return static_cast<std::size_t>(
      std::count_if(terms.begin(), terms.end(), [](const auto& t) { return t.kind == TermKind::Power; }));
}

AsymptoticExpansion connection_3f2(Complex a, Complex b, Complex c, Complex d, Complex e, double x) {
  if (!(x > 0.0)) throw DomainError("connection_3f2: requires x > 0");
  const HypSpec spec{{a, b, c}, {d, e}, -x};
  bool terminated = false;
  return power_part(spec, terminated);
}

AsymptoticExpansion connection_2f2(Complex a, Complex b, Complex c, Complex d, double z) {
  if (z == 0.0 || !std::isfinite(z)) throw DomainError("connection_2f2: requires a nonzero finite argument");
  const HypSpec spec{{a, b}, {c, d}, z};
  bool terminated = false;
  AsymptoticExpansion ex = power_part(spec, terminated);
  if (terminated) return ex;
  bool zero = false;
  const Complex lg = log_gamma_product({c, d}, {a, b}, zero);
  AsymptoticTerm t;
  t.coefficient = zero ? Complex(0.0) : std::exp(lg);
  t.exponent = a + b - c - d;
  t.kind = TermKind::Exponential;
  t.rate = 1.0;
  finish_term(spec, t, kMaxCorrections);
  ex.terms.push_back(t);
  if (!zero) ex.validity_radius = std::max(ex.validity_radius, radius_from(t.corrections));
  return ex;
}

AsymptoticExpansion connection_1f2(Complex a, Complex b, Complex c, double zeta) {
  if (!(zeta < 0.0)) throw DomainError("connection_1f2: requires zeta < 0");
  const HypSpec spec{{a}, {b, c}, zeta};
  bool terminated = false;
  AsymptoticExpansion ex = power_part(spec, terminated);
  if (terminated) return ex;
  const Complex eta = 0.5 * (a - b - c + 0.5);
  bool zero = false;
  const Complex lg = log_gamma_product({b, c}, {a}, zero);
  for (double sgn : {1.0, -1.0}) {
    AsymptoticTerm t;
    t.coefficient = zero ? Complex(0.0)
                         : std::exp(lg) / (2.0 * std::sqrt(std::numbers::pi)) *
                               std::exp(sgn * kI * std::numbers::pi * eta);
    t.exponent = eta;
    t.kind = TermKind::Oscillatory;
    t.rate = sgn * 2.0 * kI;
    finish_term(spec, t, kMaxCorrections);
    ex.terms.push_back(t);
    if (!zero) {
      const double r = radius_from(t.corrections);
      ex.validity_radius = std::max(ex.validity_radius, r * r);
    }
  }
  return ex;
}

double indicial_residual(const HypSpec& spec, const AsymptoticTerm& term) {
  return problem_for(spec, term.kind, term.rate).indicial(start_exponent(term));
}

} // namespace hyperpot::specfun
