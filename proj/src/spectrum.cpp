#include "hyperpot/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace hyperpot {

namespace {

constexpr double threshold_tol = 1e-12;

struct Condition {
  double lo = 0.0;
  double hi = 0.0;
  // unsquared condition: lhs(eps) - level, decreasing in eps
  double (*eval)(const void*, double) = nullptr;
  double (*slope)(const void*, double) = nullptr;
  const void* data = nullptr;
  double operator()(double e) const { return eval(data, e); }
  double d(double e) const { return slope(data, e); }
};

double polish(const Condition& c, double root, double lo, double hi) {
  for (int it = 0; it < 2; ++it) {
    const double f = c(root), df = c.d(root);
    if (!(std::isfinite(df) && df != 0.0)) break;
    const double next = root - f / df;
    if (!(next > lo && next < hi) || std::abs(c(next)) >= std::abs(f)) break;
    root = next;
  }
  return root;
}

// c is strictly decreasing on [lo, hi] with c(lo) > 0 > c(hi)
double bisect(const Condition& c, double lo, double hi) {
  double a = lo, b = hi;
  while (b - a > 1e-14 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(b)) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    (c(m) > 0.0 ? a : b) = m;
  }
  return polish(c, 0.5 * (a + b), lo, hi);
}

struct FullLevel {
  double q, r, g, level;
};

double full_eval(const void* p, double e) {
  const auto* s = static_cast<const FullLevel*>(p);
  return level_function(s->q, s->r, s->g, e) - s->level;
}

double full_slope(const void* p, double e) {
  const auto* s = static_cast<const FullLevel*>(p);
  return -0.5 / std::sqrt(std::max(s->q * s->q - e, 0.0)) - 0.5 * s->g / std::sqrt(std::max(s->r * s->r - s->g * e, 0.0));
}

struct ConfluentLevel {
  double q, p, shift; // sqrt(q^2 - eps) - (sign p eps + shift)
  double sign;
};

double confluent_eval(const void* p, double e) {
  const auto* s = static_cast<const ConfluentLevel*>(p);
  return std::sqrt(std::max(s->q * s->q - e, 0.0)) - (s->sign * s->p * e + s->shift);
}

double confluent_slope(const void* p, double e) {
  const auto* s = static_cast<const ConfluentLevel*>(p);
  return -0.5 / std::sqrt(std::max(s->q * s->q - e, 0.0)) - s->sign * s->p;
}

void sort_states(std::vector<BoundState>& states) {
  std::sort(states.begin(), states.end(), [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
}

std::vector<BoundState> solve_full(const InvariantParams& p, bool include_threshold) {
  const RegionFlags flags = classify(p);
  std::vector<BoundState> out;
  if (flags.has_zero_mode) out.push_back({StateBranch::Ground, 0, 0.0, 0.0, false});
  if (flags.branch != Branch::GreenI && flags.branch != Branch::BlueII) return out;

  const double g = p.g();
  const double top = std::min(p.q * p.q, p.r * p.r / g);
  const double f0 = std::abs(p.q) + std::abs(p.r);
  const double fmin = level_function(p.q, p.r, g, top);
  const bool equal_edges = std::abs(p.q * p.q - p.r * p.r / g) <= 1e-14 * p.q * p.q;
  const bool green = flags.branch == Branch::GreenI;
  const double first = green ? p.sigma() : p.r - p.q;
  const StateBranch sb = green ? StateBranch::GreenI : StateBranch::BlueII;

  for (int n = 0;; ++n) {
    const double level = first - n;
    if (level < -threshold_tol) break;
    const int index = green ? n + 1 : n;
    if (!green && n == 0 && flags.middle_blue_rejection) continue;
    if (level >= f0) continue; // root at eps = 0 or none
    const FullLevel data{p.q, p.r, g, level};
    const Condition c{0.0, top, full_eval, full_slope, &data};
    if (std::abs(level - fmin) <= threshold_tol * std::max(1.0, f0)) {
      if (include_threshold) out.push_back({sb, index, top, std::abs(c(top)), true});
      continue;
    }
    if (level < fmin) break;
    double e;
    if (equal_edges) {
      e = p.q * p.q - level * level / std::pow(1.0 + std::sqrt(g), 2);
      e = polish(c, e, 0.0, top);
    } else {
      e = bisect(c, 0.0, top);
    }
    if (e <= 0.0) continue;
    out.push_back({sb, index, e, std::abs(c(e)), false});
  }
  sort_states(out);
  return out;
}

// Roots of a e^2 + b e + c = 0
std::vector<double> quadratic_roots(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  const double s = std::sqrt(disc);
  const double t = -0.5 * (b + std::copysign(s, b));
  std::vector<double> out;
  if (t != 0.0) {
    out.push_back(t / a);
    out.push_back(c / t);
  } else {
    out.push_back(0.0);
  }
  return out;
}

std::vector<BoundState> solve_confluent_first(const ConfluentFirstParams& cf, bool include_threshold) {
  const RegionFlags flags = classify(cf);
  std::vector<BoundState> out;
  if (flags.has_zero_mode) out.push_back({StateBranch::Ground, 0, 0.0, 0.0, false});
  if (flags.branch != Branch::GreenI && flags.branch != Branch::BlueII) return out;

  const double q = cf.q, p = cf.p();
  const double top = q * q;
  const bool green = flags.branch == Branch::GreenI;
  const double bound = green ? (1.0 - p * q) * q : (p * q - 1.0) * q;
  const StateBranch sb = green ? StateBranch::GreenI : StateBranch::BlueII;

  for (int n = green ? 1 : 0; n <= bound + threshold_tol; ++n) {
    if (!green && n == 0 && flags.middle_blue_rejection) continue;
    // green: sqrt(q^2 - e) = -p e + q - N ; blue: sqrt(q^2 - e) = p e - q - n
    const ConfluentLevel data = green ? ConfluentLevel{q, p, q - n, -1.0} : ConfluentLevel{q, p, -q - n, 1.0};
    const Condition c{0.0, top, confluent_eval, confluent_slope, &data};
    const double m = green ? q - n : q + n;
    std::optional<double> root;
    for (double e : quadratic_roots(p * p, 1.0 - 2.0 * p * m, m * m - q * q)) {
      if (!(e >= -threshold_tol && e <= top * (1.0 + threshold_tol) + threshold_tol)) continue;
      e = std::clamp(e, 0.0, top);
      if (data.sign * p * e + data.shift < -1e-9) continue;
      root = e;
    }
    if (!root) continue;
    double e = *root;
    if (top - e <= threshold_tol * std::max(1.0, top)) {
      if (include_threshold) out.push_back({sb, n, top, std::abs(c(top)), true});
      continue;
    }
    if (e <= 0.0) continue;
    e = polish(c, e, 0.0, top);
    out.push_back({sb, n, e, std::abs(c(e)), false});
  }
  sort_states(out);
  return out;
}

} // namespace

const char* to_string(Branch branch) {
  switch (branch) {
  case Branch::GreenI: return "green";
  case Branch::BlueII: return "blue";
  case Branch::None: return "none";
  case Branch::Unclassified: return "unclassified";
  }
  return "?";
}

const char* to_string(StateBranch branch) {
  switch (branch) {
  case StateBranch::Ground: return "ground";
  case StateBranch::GreenI: return "green";
  case StateBranch::BlueII: return "blue";
  }
  return "?";
}

double level_function(double q, double r, double g, double energy) {
  return std::sqrt(std::max(q * q - energy, 0.0)) + std::sqrt(std::max(r * r - g * energy, 0.0));
}

RegionFlags classify(const Params& params) {
  validate(params);
  RegionFlags f;
  if (const auto* p = std::get_if<InvariantParams>(&params)) {
    const double q = p->q, r = p->r, qr = q * r;
    f.has_zero_mode = q > 0.0 && r < 0.0;
    if (q - r > 1.0)
      f.branch = Branch::GreenI;
    else if (qr > 0.0 && q - r < 0.0)
      f.branch = Branch::BlueII;
    else if (qr < 0.0 && q - r < -1.0) {
      f.branch = Branch::BlueII;
      f.middle_blue_rejection = true;
    } else if (qr == 0.0)
      f.branch = Branch::Unclassified;
  } else if (const auto* c = std::get_if<ConfluentFirstParams>(&params)) {
    const double q = c->q, p = c->p(), pq = p * q;
    f.has_zero_mode = q > 0.0 && p < 0.0;
    if (q == 0.0)
      f.branch = Branch::Unclassified;
    else if (p < 0.0 && p <= (q - 1.0) / (q * q))
      f.branch = Branch::GreenI;
    else if (p > 0.0 && pq > 0.0 && p >= 1.0 / q)
      f.branch = Branch::BlueII;
    else if (p > 0.0 && pq < 0.0 && p >= (q + 1.0) / (q * q)) {
      f.branch = Branch::BlueII;
      f.middle_blue_rejection = true;
    }
  } else {
    const double q = q_of(params);
    f.has_zero_mode = q > 0.0 && q < 0.25;
  }
  return f;
}

Interval g_window(double q, double r, int n, Branch branch) {
  const double level = (branch == Branch::BlueII ? r - q : q - r - 1.0) - n;
  if (!(level > 0.0)) return {0.0, 0.0};
  const double inf = std::numeric_limits<double>::infinity();
  const double lower_factor = r * r - level * level;
  const double upper_factor = q * q - level * level;
  return {lower_factor > 0.0 ? lower_factor / (q * q) : 0.0, upper_factor > 0.0 ? r * r / upper_factor : inf};
}

std::vector<BoundState> solve_bound_states(const Params& params, bool include_threshold) {
  validate(params);
  if (const auto* p = std::get_if<InvariantParams>(&params)) return solve_full(*p, include_threshold);
  if (const auto* p = std::get_if<ConfluentFirstParams>(&params)) return solve_confluent_first(*p, include_threshold);
  if (classify(params).has_zero_mode) return {{StateBranch::Ground, 0, 0.0, 0.0, false}};
  return {};
}

} // namespace hyperpot
