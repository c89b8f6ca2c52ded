#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hyperpot {

using Complex = std::complex<double>;

namespace specfun {

// Principal branch of log Gamma(z), imaginary part in (-pi, pi].
Complex log_gamma(Complex z);
Complex gamma(Complex z);
// 1/Gamma(z); exactly zero at the poles.
Complex rgamma(Complex z);
Complex pochhammer(Complex a, unsigned n);

bool is_nonpositive_integer(Complex z);

struct HypSpec {
  std::vector<Complex> upper; // p <= 3
  std::vector<Complex> lower; // q <= 2
  Complex argument{};
};

// Number of terms if some upper parameter is -n, else -1.
int terminating_degree(const HypSpec& spec);

Complex hyp_series(const HypSpec& spec, double tol = 1e-16);

// theta^k F for k = 0..order at spec.argument, theta = z d/dz.
std::vector<Complex> hyp_series_theta(const HypSpec& spec, std::size_t order, double tol = 1e-16);

// F = value * exp(log_scale), F' = derivative * exp(log_scale).
struct ContinuedValue {
  Complex value;
  Complex derivative;
  double log_scale = 0.0;
};

// F and F' at a real target, continued from 0 along the real axis.
// spec.argument is not used.
ContinuedValue hyp_continued(const HypSpec& spec, double target);

// Same as above for several targets sharing one continuation sweep.
std::vector<ContinuedValue> hyp_continued(const HypSpec& spec, std::span<const double> targets);

enum class TermKind { Power, Exponential, Oscillatory };

// Power:       coefficient * (-z)^exponent * sum_k c_k (-z)^-k
// Exponential: coefficient * z^exponent * e^z * sum_k c_k z^-k
// Oscillatory: coefficient * w^(2 exponent) * e^(rate w) * sum_k c_k w^-k, w = sqrt(-z)
struct AsymptoticTerm {
  Complex coefficient;
  Complex exponent;
  TermKind kind = TermKind::Power;
  Complex rate{};
  std::vector<Complex> corrections; // c_0 = 1, c_1, ...
  bool polynomial = false;          // corrections are exact and finite

  // value * exp(-log_scale); corrections summed to their smallest term
  Complex evaluate(double z, double log_scale = 0.0) const;
  Complex leading(double z, double log_scale = 0.0) const;
};

// F minus an exact power-term solution with finitely many corrections; targets must be negative.
std::vector<ContinuedValue> hyp_continued(const HypSpec& spec, std::span<const double> targets,
                                          const AsymptoticTerm& subtract);

struct AsymptoticExpansion {
  std::vector<AsymptoticTerm> terms;
  double validity_radius = 0.0;

  Complex evaluate(double z, double log_scale = 0.0) const;
  Complex leading(double z, double log_scale = 0.0) const;
  std::size_t power_terms() const;
};

// 3F2(a,b,c;d,e;-x) for large x > 0.
AsymptoticExpansion connection_3f2(Complex a, Complex b, Complex c, Complex d, Complex e, double x);
// 2F2(a,b;c,d;z) for large |z|, z real.
AsymptoticExpansion connection_2f2(Complex a, Complex b, Complex c, Complex d, double z);
// 1F2(a;b,c;zeta) for zeta -> -inf.
AsymptoticExpansion connection_1f2(Complex a, Complex b, Complex c, double zeta);

// Residual of the indicial equation for each term; small when the exponents are right.
double indicial_residual(const HypSpec& spec, const AsymptoticTerm& term);

} // namespace specfun
} // namespace hyperpot
