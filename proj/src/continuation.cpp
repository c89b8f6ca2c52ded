#include "hyperpot/errors.hpp"
#include "hyperpot/specfun.hpp"

#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace hyperpot::specfun {

namespace {

using State = std::array<Complex, 3>;
using Stepper = boost::numeric::odeint::runge_kutta_fehlberg78<State, double, State, double>;

constexpr double kRtol = 1e-14;
constexpr double kRescale = 1e150;
constexpr int kMaxSteps = 2000000;

// coefficients of prod (theta + c_i), lowest power first
std::vector<Complex> expand(const std::vector<Complex>& roots) {
  std::vector<Complex> poly{1.0};
  for (const Complex& c : roots) {
    std::vector<Complex> next(poly.size() + 1, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += c * poly[k];
      next[k + 1] += poly[k];
    }
    poly = std::move(next);
  }
  return poly;
}

// theta prod(theta + b_j - 1) F = z prod(theta + a_i) F written as a first-order
// system in t = ln|z| for Y_k = theta^k F.
struct ThetaSystem {
  std::vector<Complex> P;
  std::vector<Complex> Q;
  std::size_t m = 1;
  double sign = 1.0;

  ThetaSystem(const HypSpec& spec, double sgn) : sign(sgn) {
    std::vector<Complex> lower_roots{0.0};
    for (const Complex& b : spec.lower) lower_roots.push_back(b - 1.0);
    P = expand(lower_roots);
    Q = expand(spec.upper);
    m = spec.lower.size() + 1;
  }

  void operator()(const State& y, State& dy, double t) const {
    const double z = sign * std::exp(t);
    for (std::size_t k = 0; k < 3; ++k) dy[k] = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) dy[k] = y[k + 1];
    Complex rhs = 0.0;
    for (std::size_t k = 0; k < m; ++k) rhs -= P[k] * y[k];
    const std::size_t top = std::min(Q.size(), m);
    for (std::size_t k = 0; k < top; ++k) rhs += z * Q[k] * y[k];
    if (Q.size() > m) rhs /= 1.0 - z;
    dy[m - 1] = rhs;
  }
};

double max_abs(const State& y, std::size_t m) {
  double v = 0.0;
  for (std::size_t k = 0; k < m; ++k) v = std::max(v, std::abs(y[k]));
  return v;
}

ContinuedValue from_theta(const std::vector<Complex>& th, double z, const HypSpec& spec) {
  ContinuedValue out{th[0], 0.0, 0.0};
  if (z != 0.0) {
    out.derivative = th[1] / z;
  } else {
    Complex d = 1.0;
    for (const Complex& a : spec.upper) d *= a;
    for (const Complex& b : spec.lower) d /= b;
    out.derivative = d;
  }
  return out;
}

// theta^k T for k < m, T a power term at z < 0
State term_theta(const AsymptoticTerm& t, double z, std::size_t m) {
  State out{};
  const double lw = std::log(-z);
  for (std::size_t j = 0; j < t.corrections.size(); ++j) {
    const Complex s = t.exponent - static_cast<double>(j);
    const Complex v = t.coefficient * t.corrections[j] * std::exp(s * lw);
    Complex pw = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      out[k] += v * pw;
      pw *= s;
    }
  }
  return out;
}

std::vector<ContinuedValue> continue_impl(const HypSpec& spec, std::span<const double> targets,
                                          const AsymptoticTerm* subtract) {
  const std::size_t p = spec.upper.size();
  const std::size_t q = spec.lower.size();
  const bool full_type = p == q + 1;
  std::vector<ContinuedValue> out(targets.size());
  for (double t : targets) {
    if (!std::isfinite(t)) throw DomainError("hyp_continued: non-finite target");
    if (full_type && t >= 1.0 && terminating_degree(spec) < 0)
      throw DomainError("hyp_continued: path from 0 to the target crosses the singular point z = 1");
  }

  const std::size_t order = std::max<std::size_t>(q, 1);
  if (subtract) {
    if (subtract->kind != TermKind::Power) throw DomainError("hyp_continued: subtracted term must be a power term");
    for (double t : targets)
      if (!(t < 0.0)) throw DomainError("hyp_continued: subtraction needs negative targets");
  }
  auto direct = [&](double z) {
    HypSpec s = spec;
    s.argument = z;
    std::vector<Complex> th = hyp_series_theta(s, order);
    if (subtract) {
      const State tt = term_theta(*subtract, z, th.size());
      for (std::size_t k = 0; k < th.size(); ++k) th[k] -= tt[k];
    }
    return from_theta(th, z, spec);
  };

  if (terminating_degree(spec) >= 0) {
    for (std::size_t i = 0; i < targets.size(); ++i) out[i] = direct(targets[i]);
    return out;
  }

  const double radius = full_type ? 0.5 : 1.0;
  for (double sgn : {-1.0, 1.0}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const double t = targets[i];
      if (std::abs(t) <= radius) {
        if (sgn > 0.0) out[i] = direct(t);
      } else if ((t < 0.0) == (sgn < 0.0)) {
        idx.push_back(i);
      }
    }
    if (idx.empty()) continue;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(targets[a]) < std::abs(targets[b]); });

    const ThetaSystem sys(spec, sgn);
    const std::size_t m = sys.m;
    HypSpec s0 = spec;
    s0.argument = sgn * radius;
    const std::vector<Complex> th0 = hyp_series_theta(s0, q);
    State y{};
    for (std::size_t k = 0; k < m; ++k) y[k] = th0[k];
    if (subtract) {
      const State tt = term_theta(*subtract, sgn * radius, m);
      for (std::size_t k = 0; k < m; ++k) y[k] -= tt[k];
    }
    double t = std::log(radius);
    double log_scale = 0.0;
    double h = 0.05;
    Stepper stepper;
    int steps = 0;
    // the step sequence depends only on the farthest target; each target is reached by a
    // side step from the last accepted point before it
    const double t_max = std::log(std::abs(targets[idx.back()]));
    double t_prev = t, scale_prev = 0.0;
    State y_prev = y;

    for (std::size_t i : idx) {
      const double t_end = std::log(std::abs(targets[i]));
      while (t < t_end) {
        if (++steps > kMaxSteps) throw ConvergenceError("hyp_continued: step budget exhausted");
        const bool last = t + h >= t_max;
        const double dt = last ? t_max - t : h;
        State trial = y;
        State err{};
        stepper.do_step(sys, trial, t, dt, err);
        const double scale = kRtol * std::max(max_abs(y, m), max_abs(trial, m)) + 1e-300;
        double e = 0.0;
        for (std::size_t k = 0; k < m; ++k) e = std::max(e, std::abs(err[k]));
        e /= scale;
        if (!std::isfinite(e)) e = 1e10;
        const double factor = e > 0.0 ? 0.9 * std::pow(e, -1.0 / 8.0) : 5.0;
        if (e <= 1.0) {
          t_prev = t;
          y_prev = y;
          scale_prev = log_scale;
          t = last ? t_max : t + dt;
          y = trial;
          h = dt * std::clamp(factor, 0.2, 5.0);
          const double big = max_abs(y, m);
          if (big > kRescale) {
            for (auto& v : y) v /= big;
            log_scale += std::log(big);
          }
        } else {
          h = dt * std::clamp(factor, 0.1, 0.9);
          if (h < 1e-14) throw ConvergenceError("hyp_continued: step size underflow");
        }
      }
      State at = y;
      double at_scale = log_scale;
      if (t_end < t) {
        at = y_prev;
        at_scale = scale_prev;
        if (t_end > t_prev) {
          State err{};
          stepper.do_step(sys, at, t_prev, t_end - t_prev, err);
        }
      }
      const double z = targets[i];
      State dy{};
      sys(at, dy, t_end);
      const Complex theta_f = m > 1 ? at[1] : dy[0];
      out[i] = ContinuedValue{at[0], theta_f / z, at_scale};
    }
  }
  return out;
}

} // namespace

std::vector<ContinuedValue> hyp_continued(const HypSpec& spec, std::span<const double> targets) {
  return continue_impl(spec, targets, nullptr);
}

std::vector<ContinuedValue> hyp_continued(const HypSpec& spec, std::span<const double> targets,
                                          const AsymptoticTerm& subtract) {
  return continue_impl(spec, targets, &subtract);
}

ContinuedValue hyp_continued(const HypSpec& spec, double target) {
  const double t[1] = {target};
  return hyp_continued(spec, std::span<const double>(t, 1))[0];
}

} // namespace hyperpot::specfun
