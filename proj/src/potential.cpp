#include "hyperpot/potential.hpp"

#include "hyperpot/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace hyperpot {

namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

constexpr double kQuadTol = 1e-14;
constexpr unsigned kQuadDepth = 15;

struct MapData {
  double rho;
  double omega;
  bool full;
};

MapData map_data(const Params& params) {
  validate(params);
  return {rho_of(params), omega_of(params), kind_of(params) == CaseKind::FullHypergeometric};
}

double ratio_root(const MapData& m, double t) { return std::sqrt((1.0 + t / m.rho) / (1.0 + m.omega * t)); }

// (sqrt(w) - 1/x) written without cancellation
double remainder_integrand(const MapData& m, double t) {
  const double R = ratio_root(m, t);
  return (1.0 / m.rho - m.omega) / ((1.0 + m.omega * t) * (R + 1.0));
}

double inner_integral(const MapData& m) {
  return gauss_kronrod<double, 31>::integrate([&](double t) { return remainder_integrand(m, t); }, 0.0, 1.0,
                                              kQuadDepth, kQuadTol);
}

double z_from_map(const MapData& m, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("z_of_x: x must be positive and finite");
  if (m.omega * m.rho == 1.0) return std::log(x);
  if (x <= 1.0) {
    return std::log(x) + x * gauss_kronrod<double, 31>::integrate(
                                 [&](double s) { return remainder_integrand(m, x * s); }, 0.0, 1.0, kQuadDepth, kQuadTol);
  }
  const double L = std::log(x);
  const double outer = L * gauss_kronrod<double, 31>::integrate(
                               [&](double s) {
                                 const double t = std::exp(L * s);
                                 return t * remainder_integrand(m, t);
                               },
                               0.0, 1.0, kQuadDepth, kQuadTol);
  return L + inner_integral(m) + outer;
}

} // namespace

PotentialCoefficients coefficients(const Params& params) {
  validate(params);
  PotentialCoefficients c;
  c.rho = rho_of(params);
  const double rho = c.rho;
  const double q = q_of(params);
  if (const auto* p = std::get_if<InvariantParams>(&params)) {
    const double w = p->omega, r = p->r, wr = w * rho;
    c.omega = w;
    c.a4 = w * w * rho * r * r;
    c.a3 = 2.0 * w * w * rho * rho * r * r + 2.0 * wr * q * r - wr * q + w * w * rho * rho * r + 0.25 * wr * (1.0 - wr);
    c.a2 = rho * (q * q + wr * wr * r * r + 4.0 * wr * q * r - (1.0 + wr) * q + wr * (1.0 + wr) * r +
                  3.0 / 16.0 * (1.0 - wr) * (1.0 - wr));
    c.a1 = rho * rho * (2.0 * q * q + 2.0 * wr * q * r - q + wr * r + 0.25 * (wr - 1.0));
    c.a0 = rho * rho * rho * q * q;
  } else if (const auto* p = std::get_if<ConfluentFirstParams>(&params)) {
    const double b = p->beta;
    c.a4 = 0.25 * rho * b * b;
    c.a3 = 0.5 * rho * rho * b * b + rho * q * b;
    c.a2 = rho * (q * q + 0.25 * rho * rho * b * b + 2.0 * rho * q * b - q + 0.5 * rho * b + 3.0 / 16.0);
    c.a1 = rho * rho * (2.0 * q * q + rho * q * b - q + 0.5 * rho * b - 0.25);
    c.a0 = rho * rho * rho * q * q;
  } else {
    c.a2 = (q * q - q + 3.0 / 16.0) * rho;
    c.a1 = (2.0 * q * q - q - 0.25) * rho * rho;
    c.a0 = q * q * rho * rho * rho;
  }
  return c;
}

PotentialCoefficients raw_coefficients(const RawParams& raw) {
  validate(raw);
  const double s = raw.s, al = raw.alpha, be = raw.beta, w = raw.omega, rho = raw.rho;
  const double wr = w * rho;
  PotentialCoefficients c;
  c.rho = rho;
  c.omega = w;
  // the beta^2 rho / (4 omega) piece of A is multiplied by omega; written expanded so omega = 0 is allowed
  c.a4 = (2.25 * wr - 3.0) * w * s * s + (1.5 * be * rho - 2.0 * al - 3.0 * wr + 3.0) * w * s +
         0.25 * be * be * rho + wr * w - be * rho * w;
  c.a3 = (4.5 * wr * wr - 4.5 * wr - 3.0) * s * s +
         (-4.5 * wr * wr + 3.0 * wr + 3.0 * wr * rho * be + 1.5 * rho * be - 4.5 * al * wr - 2.0 * al + 3.0) * s +
         0.5 * (rho * rho * be * be - 3.0 * wr * rho * be + rho * al * be - 3.0 * al * wr + 3.0 * wr - rho * be) +
         0.25 * wr * (3.0 * wr + 1.0);
  c.a2 = rho / 4.0 *
         (9.0 * (wr * wr - 3.0) * s * s +
          6.0 * (4.0 - 3.0 * al - 2.0 * al * wr + 2.0 * be * rho + wr * rho * be - wr * wr) * s + rho * rho * be * be -
          2.0 * wr * rho * be + 4.0 * al * be * rho - 2.0 * be * rho - 10.0 * al * wr + al * al - 4.0 * al +
          0.75 * wr * wr + 4.5 * wr + 3.75);
  c.a1 = rho * rho / 4.0 *
         (6.0 * (wr - 3.0) * s * s + (6.0 * be * rho - 2.0 * al * wr - 12.0 * al + 18.0) * s +
          (2.0 * al * be * rho - 4.0 * al * wr + 2.0 * al * al - 6.0 * al + wr + 3.0));
  c.a0 = (-0.75 * s * s - 0.5 * (al - 3.0) * s + 0.25 * (al - 1.0) * (al - 1.0)) * rho * rho * rho;
  c.lambda0_shift = lambda0_of(raw);
  return c;
}

double evaluate_U(const PotentialCoefficients& c, double x) {
  const double num = (((c.a4 * x + c.a3) * x + c.a2) * x + c.a1) * x + c.a0;
  const double xr = x + c.rho;
  return num / (xr * xr * xr * (1.0 + c.omega * x)) - c.lambda0_shift;
}

double evaluate_U(const Params& params, double x) { return evaluate_U(coefficients(params), x); }

double U_left(const Params& params) {
  const double q = q_of(params);
  return q * q;
}

double U_right(const Params& params) {
  switch (kind_of(params)) {
  case CaseKind::FullHypergeometric: {
    const auto& p = std::get<InvariantParams>(params);
    return p.rho * p.omega * p.r * p.r;
  }
  case CaseKind::ConfluentFirst: return std::numeric_limits<double>::infinity();
  case CaseKind::ConfluentSecond: break;
  }
  return 0.0;
}

double weight_w(const Params& params, double x) {
  const MapData m = map_data(params);
  return (1.0 + x / m.rho) / (x * x * (1.0 + m.omega * x));
}

double sqrt_w(const Params& params, double x) {
  const MapData m = map_data(params);
  return ratio_root(m, x) / x;
}

double z_of_x(const Params& params, double x) { return z_from_map(map_data(params), x); }

double right_offset(const Params& params) {
  const MapData m = map_data(params);
  const double inner = inner_integral(m);
  if (m.full) {
    const double cinf = 1.0 / std::sqrt(m.rho * m.omega);
    const double outer = gauss_kronrod<double, 31>::integrate(
        [&](double u) {
          const double s = std::exp(-u);
          const double R = std::sqrt((s + 1.0 / m.rho) / (s + m.omega));
          return (m.rho * m.omega - 1.0) * s / (m.rho * m.omega * (s + m.omega) * (R + cinf));
        },
        0.0, std::numeric_limits<double>::infinity(), kQuadDepth, kQuadTol);
    return inner + outer;
  }
  const double outer = gauss_kronrod<double, 31>::integrate(
      [&](double u) {
        const double t = std::exp(u);
        return 1.0 / (std::sqrt(1.0 + t / m.rho) + std::sqrt(t / m.rho));
      },
      0.0, std::numeric_limits<double>::infinity(), kQuadDepth, kQuadTol);
  return inner + outer - 2.0 / std::sqrt(m.rho);
}

double x_of_z(const Params& params, double z) {
  if (!std::isfinite(z)) throw DomainError("x_of_z: z must be finite");
  const MapData m = map_data(params);
  if (m.omega * m.rho == 1.0) return std::exp(z);

  double u0 = z;
  if (z > 1.0) {
    const double c = right_offset(params);
    if (m.full) {
      const double cinf = 1.0 / std::sqrt(m.rho * m.omega);
      u0 = std::max(0.0, (z - c) / cinf);
    } else {
      const double h = std::max(0.5 * (z - c), 1.0);
      u0 = std::log(m.rho * h * h);
    }
  }
  auto f = [&](double u) { return z_from_map(m, std::exp(u)) - z; };
  double lo = u0, hi = u0;
  double flo = f(lo), fhi = flo;
  double step = 1.0;
  int guard = 0;
  while (flo > 0.0) {
    hi = lo;
    fhi = flo;
    lo -= step;
    step *= 2.0;
    flo = f(lo);
    if (++guard > 200) throw ConvergenceError("x_of_z: could not bracket the root");
  }
  step = 1.0;
  while (fhi < 0.0) {
    lo = hi;
    flo = fhi;
    hi += step;
    step *= 2.0;
    fhi = f(hi);
    if (++guard > 400) throw ConvergenceError("x_of_z: could not bracket the root");
  }
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fu = f(u);
    if (fu == 0.0) return std::exp(u);
    if (fu < 0.0) lo = u; else hi = u;
    const double slope = ratio_root(m, std::exp(u));
    double next = u - fu / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-15 * std::max(1.0, std::abs(u)) || hi - lo < 1e-15 * std::max(1.0, std::abs(u)))
      return std::exp(next);
    u = next;
  }
  throw ConvergenceError("x_of_z: Newton iteration did not converge");
}

double schwartzian_term(const Params& params, double x) {
  const MapData m = map_data(params);
  const double w = m.omega, rho = m.rho;
  const double num = 4.0 * w * w * x * x * x * x + (4.0 * w + 12.0 * w * w * rho) * x * x * x +
                     (3.0 + 18.0 * w * rho + 3.0 * w * w * rho * rho) * x * x + (12.0 * rho + 4.0 * w * rho * rho) * x +
                     4.0 * rho * rho;
  const double xr = x + rho;
  return rho / 16.0 * num / (xr * xr * xr * (1.0 + w * x));
}

double liouville_reconstruct(const RawParams& raw, double x) {
  validate(raw);
  if (!(x > 0.0)) throw DomainError("liouville_reconstruct: x must be positive");
  const double s = raw.s, al = raw.alpha, be = raw.beta, w = raw.omega, rho = raw.rho;
  const DependentCoefficients dep = derive_dependent(raw);

  const double a = x * x * (1.0 + w * x);
  const double da = 2.0 * x + 3.0 * w * x * x;
  const double b = x * (al + be * x);
  const double db = al + 2.0 * be * x;
  const double c0 = dep.delta * x;
  const double ba = b / a;
  const double dba = (db * a - b * da) / (a * a);
  const double yl = s / x + 1.0 / (x + rho);
  const double dyl = -s / (x * x) - 1.0 / ((x + rho) * (x + rho));
  const double v = -c0 / a + 0.5 * dba + 0.25 * ba * ba - 0.5 * ba * yl - 1.5 * dyl - 0.75 * yl * yl;

  const double weight = (1.0 + x / rho) / a;
  const double lw = 1.0 / (x + rho) - 2.0 / x - w / (1.0 + w * x);
  const double dlw = -1.0 / ((x + rho) * (x + rho)) + 2.0 / (x * x) + w * w / ((1.0 + w * x) * (1.0 + w * x));
  const double schwarz = 0.25 * dlw - lw * lw / 16.0;

  return (v + schwarz) / weight - lambda0_of(raw);
}

GridMapping GridMapping::build(const Params& params, double z_min, double z_max, std::size_t count) {
  if (!(z_max > z_min) || count < 2) throw DomainError("GridMapping: need z_max > z_min and at least two points");
  const MapData m = map_data(params);
  GridMapping g;
  g.kind = kind_of(params);
  g.anchor = right_offset(params);
  g.z_samples.resize(count);
  g.x_samples.resize(count);
  const double h = (z_max - z_min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) g.z_samples[i] = z_min + h * static_cast<double>(i);
  g.z_samples.back() = z_max;

  auto R = [&](double u) { return ratio_root(m, std::exp(u)); };
  double u = std::log(x_of_z(params, z_min));
  g.x_samples[0] = std::exp(u);
  for (std::size_t i = 1; i < count; ++i) {
    const double dz = g.z_samples[i] - g.z_samples[i - 1];
    if (i % 4096 == 0) {
      u = std::log(x_of_z(params, g.z_samples[i]));
    } else {
      const double u_prev = u;
      double v = u_prev + dz / R(u_prev);
      for (int it = 0; it < 30; ++it) {
        const double integral = gauss<double, 10>::integrate(R, u_prev, v);
        const double step = (integral - dz) / R(v);
        v -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(v))) break;
      }
      u = v;
    }
    g.x_samples[i] = std::exp(u);
    if (!(g.x_samples[i] > g.x_samples[i - 1])) throw ConvergenceError("GridMapping: x samples lost monotonicity");
  }
  return g;
}

} // namespace hyperpot
