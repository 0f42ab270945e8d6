#pragma once

// Adaptive Dormand-Prince 5(4) integrator with terminal event location.
// The state is a fixed-size array; the right-hand side is any callable
// `OdeState<N> f(double t, const OdeState<N>& y)`.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "polybound/error.hpp"

namespace polybound::ode {

template <std::size_t N>
using OdeState = std::array<double, N>;

template <std::size_t N>
constexpr OdeState<N> filled(double value) {
  OdeState<N> out{};
  out.fill(value);
  return out;
}

template <std::size_t N>
struct AdaptiveOptions {
  double rel_tol = 1e-10;
  OdeState<N> abs_tol{};  // per component; zero means pure relative control
  /// Per-component weight on the relative term; 0 gives pure absolute control.
  OdeState<N> rel_weight = filled<N>(1.0);
  double initial_step = 1e-3;
  double min_step = 0.0;  // 0 => derived from t
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 1'000'000;
};

template <std::size_t N>
struct Trajectory {
  std::vector<double> t;
  std::vector<OdeState<N>> y;
  bool event_found = false;
};

template <std::size_t N>
struct StepResult {
  OdeState<N> y;
  OdeState<N> error;
};

namespace detail {

template <std::size_t N>
OdeState<N> axpy(const OdeState<N>& y, double h, std::initializer_list<std::pair<double, const OdeState<N>*>> terms) {
  OdeState<N> out = y;
  for (const auto& [c, k] : terms) {
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
  }
  return out;
}

}  // namespace detail

/// One Dormand-Prince step of size h from (t, y); dydt = f(t, y).
template <std::size_t N, class Rhs>
StepResult<N> dormand_prince_step(const Rhs& f, double t, const OdeState<N>& y,
                                  const OdeState<N>& dydt, double h) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  // Difference between the 5th- and embedded 4th-order weights.
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const auto& k1 = dydt;
  const auto k2 = f(t + c2 * h, detail::axpy<N>(y, h, {{a21, &k1}}));
  const auto k3 = f(t + c3 * h, detail::axpy<N>(y, h, {{a31, &k1}, {a32, &k2}}));
  const auto k4 = f(t + c4 * h, detail::axpy<N>(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
  const auto k5 =
      f(t + c5 * h, detail::axpy<N>(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
  const auto k6 = f(t + h, detail::axpy<N>(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3},
                                                  {a64, &k4}, {a65, &k5}}));
  StepResult<N> out;
  out.y = detail::axpy<N>(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
  const auto k7 = f(t + h, out.y);
  for (std::size_t i = 0; i < N; ++i) {
    out.error[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
  }
  return out;
}

template <std::size_t N>
double error_norm(const StepResult<N>& step, const OdeState<N>& y_old,
                  const AdaptiveOptions<N>& opts) {
  double worst = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    if (!std::isfinite(step.y[i]) || !std::isfinite(step.error[i])) {
      return std::numeric_limits<double>::infinity();
    }
    const double scale =
        opts.abs_tol[i] + opts.rel_weight[i] * opts.rel_tol * std::max(std::abs(y_old[i]), std::abs(step.y[i]));
    if (scale <= 0.0) {
      if (step.error[i] != 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, std::abs(step.error[i]) / scale);
  }
  return worst;
}

/// Integrates from t0 towards t_max and stops at the first accepted step where
/// event(t, y) <= 0; that crossing is then located by root finding on the step
/// length and appended as the final sample. `on_accept(t, y)` runs on every
/// accepted sample and may throw to abort.
template <std::size_t N, class Rhs, class Event, class OnAccept>
Trajectory<N> integrate_to_event(const Rhs& f, double t0, const OdeState<N>& y0, double t_max,
                                 const AdaptiveOptions<N>& opts, const Event& event,
                                 const OnAccept& on_accept) {
  Trajectory<N> traj;
  traj.t.push_back(t0);
  traj.y.push_back(y0);

  double t = t0;
  OdeState<N> y = y0;
  OdeState<N> dydt = f(t, y);
  double h = std::min(opts.initial_step, opts.max_step);
  double g_prev = event(t, y);
  if (g_prev <= 0.0) {
    traj.event_found = true;
    return traj;
  }

  std::size_t steps = 0;
  while (t < t_max) {
    if (++steps > opts.max_steps) {
      throw NonConvergenceError("integrator exceeded " + std::to_string(opts.max_steps) +
                                " steps");
    }
    h = std::min(h, t_max - t);
    // Use the step that makes t + h exactly representable so that the
    // sampled abscissae carry no accumulated rounding.
    h = (t + h) - t;
    const double h_floor =
        opts.min_step > 0.0 ? opts.min_step : 16.0 * std::numeric_limits<double>::epsilon() * std::abs(t);
    if (h <= h_floor) throw NonConvergenceError("step size underflow");

    const auto trial = dormand_prince_step<N>(f, t, y, dydt, h);
    const double err = error_norm<N>(trial, y, opts);
    if (!(err <= 1.0)) {
      const double shrink = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25;
      h *= shrink;
      continue;
    }

    const double g_new = event(t + h, trial.y);
    if (g_new <= 0.0) {
      // Locate the crossing inside (0, h] with fresh single steps from (t, y).
      auto g_of = [&](double hs) {
        return event(t + hs, dormand_prince_step<N>(f, t, y, dydt, hs).y);
      };
      std::uintmax_t max_iter = 200;
      const auto [lo, hi] = boost::math::tools::toms748_solve(
          g_of, 0.0, h, g_prev, g_new, boost::math::tools::eps_tolerance<double>(52), max_iter);
      double h_star = std::abs(g_of(lo)) <= std::abs(g_of(hi)) ? lo : hi;
      h_star = (t + h_star) - t;
      const auto y_star = dormand_prince_step<N>(f, t, y, dydt, h_star).y;
      on_accept(t + h_star, y_star);
      traj.t.push_back(t + h_star);
      traj.y.push_back(y_star);
      traj.event_found = true;
      return traj;
    }

    t += h;
    y = trial.y;
    on_accept(t, y);
    traj.t.push_back(t);
    traj.y.push_back(y);
    dydt = f(t, y);
    g_prev = g_new;

    const double grow = err > 0.0 ? std::min(5.0, 0.9 * std::pow(err, -0.2)) : 5.0;
    h = std::min(h * std::max(grow, 0.2), opts.max_step);
  }
  return traj;
}

}  // namespace polybound::ode
