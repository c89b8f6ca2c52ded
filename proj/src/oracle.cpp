#include "hyperpot/oracle.hpp"

#include "hyperpot/errors.hpp"
#include "hyperpot/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperpot {

namespace {

const Complex I(0.0, 1.0);

std::size_t matching_index(std::span<const double> U) {
  const auto it = std::min_element(U.begin(), U.end());
  const auto m = static_cast<std::size_t>(it - U.begin());
  return std::clamp<std::size_t>(m, 2, U.size() - 3);
}

NumerovResult<double> integrate_from_left(std::span<const double> U, const ZGrid& grid, double energy) {
  const double mu = U.front() > energy ? discrete_decay(U.front(), energy, grid.step) : 0.0;
  return numerov_integrate<double>(U, grid.step, energy, Direction::LeftToRight, 1.0, std::exp(mu));
}

NumerovResult<double> integrate_from_right(std::span<const double> U, const ZGrid& grid, double energy) {
  const double mu = U.back() > energy ? discrete_decay(U.back(), energy, grid.step) : 0.0;
  return numerov_integrate<double>(U, grid.step, energy, Direction::RightToLeft, 1.0, std::exp(mu));
}

void check_samples(std::span<const double> U, const ZGrid& grid) {
  grid.validate();
  if (U.size() != grid.size()) throw DomainError("oracle: potential samples do not match the grid");
}

double tail_gap(double sampled, double limit, double energy) { return std::abs(sampled - limit) / std::abs(energy - limit); }

} // namespace

std::vector<double> sample_potential(const Params& params, const ZGrid& grid) {
  grid.validate();
  const auto map = GridMapping::build(params, grid.z_min, grid.z_max, grid.size());
  std::vector<double> U(map.x_samples.size());
  for (std::size_t i = 0; i < U.size(); ++i) U[i] = evaluate_U(params, map.x_samples[i]);
  return U;
}

double continuum_threshold(const Params& params) { return std::min(U_left(params), U_right(params)); }

ZGrid default_grid(const Params& params, double energy_max) {
  if (kind_of(params) != CaseKind::ConfluentFirst) return ZGrid{-30.0, 30.0, 1e-3};
  double z = 1.0;
  while (evaluate_U(params, x_of_z(params, z)) <= energy_max + 50.0) z += 1.0;
  return ZGrid{-30.0, z, 1e-3};
}

ZGrid scattering_grid(const Params& params, double energy) {
  const double step = 1e-3 * std::clamp(3.0 / std::sqrt(std::max(energy, 1e-12)), 1.0, 5.0);
  auto edge = [&](double z, double dir, double limit) {
    while (tail_gap(evaluate_U(params, x_of_z(params, z)), limit, energy) > 5e-9) z += dir * std::max(1.0, 0.25 * std::abs(z));
    return z;
  };
  const double lo = edge(-20.0, -1.0, U_left(params));
  double hi;
  if (std::isfinite(U_right(params)) && energy > U_right(params))
    hi = edge(20.0, 1.0, U_right(params));
  else {
    hi = 1.0;
    while (evaluate_U(params, x_of_z(params, hi)) <= energy + 50.0) hi += 1.0;
  }
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  return ZGrid{lo, lo + static_cast<double>(n) * step, step};
}

int count_nodes(std::span<const double> U, const ZGrid& grid, double energy) {
  check_samples(U, grid);
  return integrate_from_left(U, grid, energy).nodes;
}

double matching_mismatch(std::span<const double> U, const ZGrid& grid, double energy) {
  check_samples(U, grid);
  const std::size_t m = matching_index(U);
  const auto L = integrate_from_left(U, grid, energy).psi;
  const auto R = integrate_from_right(U, grid, energy).psi;
  const double h2 = 2.0 * grid.step;
  const double dL = (L[m + 1] - L[m - 1]) / h2, dR = (R[m + 1] - R[m - 1]) / h2;
  const double norm = std::hypot(L[m], dL) * std::hypot(R[m], dR);
  if (norm == 0.0 || !std::isfinite(norm)) throw ConvergenceError("matching: degenerate solutions at the matching point");
  return (dL * R[m] - L[m] * dR) / norm;
}

std::vector<ShootingResult> shoot_eigenvalues(std::span<const double> U, const ZGrid& grid, double e_lo, double e_hi) {
  check_samples(U, grid);
  if (!(e_hi > e_lo)) throw DomainError("shooting: empty energy window");
  auto N = [&](double e) { return integrate_from_left(U, grid, e).nodes; };
  const int n_lo = N(e_lo), n_hi = N(e_hi);
  std::vector<ShootingResult> out;
  for (int n = n_lo; n < n_hi; ++n) {
    double a = e_lo, b = e_hi;
    int na = n_lo, nb = n_hi;
    for (int it = 0; it < 200 && !(na == n && nb == n + 1); ++it) {
      const double m = 0.5 * (a + b);
      const int nm = N(m);
      if (nm <= n) {
        a = m;
        na = nm;
      } else {
        b = m;
        nb = nm;
      }
    }
    const double tol = 1e-14 * std::max(1.0, std::abs(a));
    double wa = matching_mismatch(U, grid, a), wb = matching_mismatch(U, grid, b);
    const bool by_mismatch = (wa < 0.0) != (wb < 0.0);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      if (by_mismatch) {
        const double wm = matching_mismatch(U, grid, m);
        ((wm < 0.0) == (wa < 0.0) ? a : b) = m;
        if ((wm < 0.0) == (wa < 0.0)) wa = wm;
      } else {
        (N(m) <= n ? a : b) = m;
      }
    }
    ShootingResult r;
    r.energy = 0.5 * (a + b);
    r.node_count = n;
    r.log_derivative_mismatch = matching_mismatch(U, grid, r.energy);
    const auto left = integrate_from_left(U, grid, a);
    r.coarse_grid = left.nodes >= 2 && left.min_node_gap < 10;
    out.push_back(r);
  }
  return out;
}

std::vector<ShootingResult> shoot_eigenvalues(const Params& params, double e_lo, double e_hi, const ZGrid& grid) {
  const double edge = continuum_threshold(params);
  if (e_hi > edge) throw DomainError("shooting: window extends into the continuum");
  const auto U = sample_potential(params, grid);
  return shoot_eigenvalues(U, grid, e_lo, e_hi);
}

std::vector<ShootingResult> shoot_eigenvalues(const Params& params, const ZGrid& grid) {
  const auto U = sample_potential(params, grid);
  const double lo = *std::min_element(U.begin(), U.end()) - 1e-6;
  const double edge = continuum_threshold(params);
  const double hi = edge - 1e-9 * std::max(1.0, std::abs(edge));
  if (!(hi > lo)) return {};
  return shoot_eigenvalues(U, grid, lo, hi);
}

NumericReflection numeric_reflection(std::span<const double> U, const ZGrid& grid, double energy) {
  check_samples(U, grid);
  if (!(U.front() < energy)) throw ChannelClosedError("reflection: left channel closed");
  const double h = grid.step;
  Complex s0 = 1.0, s1;
  if (U.back() < energy)
    s1 = std::exp(-I * discrete_phase(U.back(), energy, h));
  else
    s1 = std::exp(discrete_decay(U.back(), energy, h));
  const auto sol = numerov_integrate<Complex>(U, h, energy, Direction::RightToLeft, s0, s1);
  const double theta = discrete_phase(U.front(), energy, h);
  const Complex e = std::exp(I * theta);
  const Complex A = (sol.psi[1] - sol.psi[0] / e) / (e - 1.0 / e);
  const Complex B = sol.psi[0] - A;
  NumericReflection out;
  out.r_left = B / A * std::exp(2.0 * I * (theta / h) * grid.z_min);
  out.P = std::norm(B / A);
  return out;
}

NumericReflection numeric_reflection(const Params& params, double energy, const ZGrid& box) {
  const auto U = sample_potential(params, box);
  if (tail_gap(U.front(), U_left(params), energy) > 1e-8)
    throw BoxTooSmallError("reflection: potential tail at the left edge is not negligible");
  const double right = U_right(params);
  if (std::isfinite(right) && energy > right) {
    if (tail_gap(U.back(), right, energy) > 1e-8)
      throw BoxTooSmallError("reflection: potential tail at the right edge is not negligible");
  } else if (U.back() < energy + 50.0) {
    throw BoxTooSmallError("reflection: right edge is not deep enough in the forbidden region");
  }
  return numeric_reflection(U, box, energy);
}

double residual_norm_batch(const Params& params, double energy, const BatchFunction& psi,
                           std::span<const double> xs) {
  // stencil per point: x, then x + s and x - s for s = h, h/2, h/4
  constexpr std::size_t width = 7;
  std::vector<double> steps(xs.size()), points;
  points.reserve(width * xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    // step of 0.05 in z, shortened by the local wavenumber
    const double k = std::max(1.0, std::sqrt(std::abs(energy - evaluate_U(params, x))));
    steps[i] = std::min(0.25 * x, 0.05 / (sqrt_w(params, x) * k));
    points.push_back(x);
    for (int l = 0; l < 3; ++l) {
      const double s = steps[i] / static_cast<double>(1 << l);
      points.push_back(x + s);
      points.push_back(x - s);
    }
  }
  const std::vector<Complex> values = psi(points);
  if (values.size() != points.size()) throw DomainError("residual: batch returned the wrong number of values");
  double sup = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) sup = std::max(sup, std::abs(values[width * i]));
  if (!(sup > 0.0) || !std::isfinite(sup)) throw DomainError("residual: psi vanishes or is not finite on the grid");

  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const Complex* v = values.data() + width * i;
    const Complex f0 = v[0] / sup;
    // centered differences at h, h/2, h/4 combined by two Richardson steps
    Complex d1[3], d2[3];
    double dw[3];
    for (int l = 0; l < 3; ++l) {
      const double s = steps[i] / static_cast<double>(1 << l);
      const Complex fp = v[1 + 2 * l] / sup, fm = v[2 + 2 * l] / sup;
      d1[l] = (fp - fm) / (2.0 * s);
      d2[l] = (fp - 2.0 * f0 + fm) / (s * s);
      dw[l] = (weight_w(params, x + s) - weight_w(params, x - s)) / (2.0 * s);
    }
    auto extrapolate = [](auto a) {
      const auto r0 = (4.0 * a[1] - a[0]) / 3.0, r1 = (4.0 * a[2] - a[1]) / 3.0;
      return (16.0 * r1 - r0) / 15.0;
    };
    const Complex p1 = extrapolate(d1), p2 = extrapolate(d2);
    const double wp = extrapolate(dw);
    const double w = weight_w(params, x);
    const Complex res = p2 / w - wp * p1 / (2.0 * w * w) + (energy - evaluate_U(params, x)) * f0;
    worst = std::max(worst, std::abs(res) / (1.0 + std::abs(energy * f0)));
  }
  return worst;
}

double residual_norm(const Params& params, double energy, const std::function<Complex(double)>& psi,
                     std::span<const double> xs) {
  return residual_norm_batch(
      params, energy,
      [&](std::span<const double> pts) {
        std::vector<Complex> out(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) out[i] = psi(pts[i]);
        return out;
      },
      xs);
}

} // namespace hyperpot
