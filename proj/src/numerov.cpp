#include "hyperpot/numerov.hpp"

#include "hyperpot/errors.hpp"

#include <cmath>
#include <limits>

namespace hyperpot {

namespace {

constexpr double rescale_at = 1e150;

double magnitude(double v) { return std::abs(v); }
double magnitude(Complex v) { return std::max(std::abs(v.real()), std::abs(v.imag())); }

} // namespace

void ZGrid::validate() const {
  if (!(std::isfinite(z_min) && std::isfinite(z_max) && z_max > z_min)) throw DomainError("grid: need finite z_min < z_max");
  if (!(step > 0.0)) throw DomainError("grid: step must be positive");
  const double n = (z_max - z_min) / step;
  if (std::abs(n - std::round(n)) > 1e-6 * std::max(1.0, n))
    throw DomainError("grid: (z_max - z_min)/step must be an integer");
  if (std::round(n) < 1000.0) throw DomainError("grid: need at least 1000 steps");
}

std::size_t ZGrid::intervals() const { return static_cast<std::size_t>(std::llround((z_max - z_min) / step)); }

std::vector<double> ZGrid::points() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = z(i);
  return out;
}

ZGrid ZGrid::from_intervals(double z_min, double z_max, std::size_t intervals) {
  ZGrid g{z_min, z_max, (z_max - z_min) / static_cast<double>(intervals)};
  g.validate();
  return g;
}

template <class T>
NumerovResult<T> numerov_integrate(std::span<const double> U, double step, double energy, Direction direction, T seed0,
                                   T seed1) {
  const std::size_t n = U.size();
  if (n < 3) throw DomainError("numerov: need at least three samples");
  if (!(step > 0.0)) throw DomainError("numerov: step must be positive");
  NumerovResult<T> out;
  out.psi.assign(n, T{});
  const bool forward = direction == Direction::LeftToRight;
  auto at = [&](std::size_t j) { return forward ? j : n - 1 - j; };
  const double h12 = step * step / 12.0;
  auto weight = [&](std::size_t j) { return 1.0 - h12 * (U[at(j)] - energy); };

  out.psi[at(0)] = seed0;
  out.psi[at(1)] = seed1;
  std::size_t last_node = 0;
  bool have_node = false;
  out.min_node_gap = std::numeric_limits<std::size_t>::max();
  auto count = [&](std::size_t j) {
    if constexpr (std::is_same_v<T, double>) {
      const double a = out.psi[at(j - 1)], b = out.psi[at(j)];
      if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
        if (have_node) out.min_node_gap = std::min(out.min_node_gap, j - last_node);
        last_node = j;
        have_node = true;
        ++out.nodes;
      }
    }
  };
  count(1);
  double w_prev = weight(0), w_cur = weight(1);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double w_next = weight(j + 1);
    out.psi[at(j + 1)] = ((12.0 - 10.0 * w_cur) * out.psi[at(j)] - w_prev * out.psi[at(j - 1)]) / w_next;
    count(j + 1);
    if (magnitude(out.psi[at(j + 1)]) > rescale_at) {
      for (std::size_t i = 0; i <= j + 1; ++i) out.psi[at(i)] /= rescale_at;
      out.log_scale += std::log(rescale_at);
      ++out.rescalings;
    }
    w_prev = w_cur;
    w_cur = w_next;
  }
  if (out.min_node_gap == std::numeric_limits<std::size_t>::max()) out.min_node_gap = 0;
  return out;
}

template NumerovResult<double> numerov_integrate<double>(std::span<const double>, double, double, Direction, double, double);
template NumerovResult<Complex> numerov_integrate<Complex>(std::span<const double>, double, double, Direction, Complex,
                                                           Complex);

double discrete_phase(double U, double energy, double step) {
  const double h12 = step * step / 12.0;
  const double g = U - energy;
  return std::acos((1.0 + 5.0 * h12 * g) / (1.0 - h12 * g));
}

double discrete_decay(double U, double energy, double step) {
  const double h12 = step * step / 12.0;
  const double g = U - energy;
  return std::acosh((1.0 + 5.0 * h12 * g) / (1.0 - h12 * g));
}

} // namespace hyperpot
