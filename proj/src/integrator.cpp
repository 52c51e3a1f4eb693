#include "lvsim/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lvsim {

namespace {

using Vec = std::array<double, 2>;

constexpr std::size_t kMaxSteps = 10'000'000;
constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

// Dormand-Prince 5(4) tableau. The systems are autonomous, so the stage
// abscissae are not needed.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Difference between the 5th and embedded 4th order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct TrialStep {
  Vec y;
  Vec f_end;
  double error_norm;
};

template <class Rhs>
TrialStep dopri_step(const Rhs &rhs, const Vec &y, const Vec &k1, double h,
                     double rel_tol, double abs_tol) {
  Vec tmp;
  auto stage = [&](auto &&combine) {
    for (std::size_t i = 0; i < 2; ++i) tmp[i] = combine(i);
    return rhs(tmp);
  };
  const Vec k2 = stage([&](std::size_t i) { return y[i] + h * a21 * k1[i]; });
  const Vec k3 = stage(
      [&](std::size_t i) { return y[i] + h * (a31 * k1[i] + a32 * k2[i]); });
  const Vec k4 = stage([&](std::size_t i) {
    return y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  });
  const Vec k5 = stage([&](std::size_t i) {
    return y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  });
  const Vec k6 = stage([&](std::size_t i) {
    return y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                       a65 * k5[i]);
  });
  Vec y1;
  for (std::size_t i = 0; i < 2; ++i) {
    y1[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                        b6 * k6[i]);
  }
  const Vec k7 = rhs(y1);

  double norm = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
    const double scale =
        abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
    norm = std::max(norm, std::abs(err) / scale);
  }
  return {y1, k7, norm};
}

double step_factor(double error_norm) {
  if (error_norm == 0.0) return kMaxFactor;
  return std::clamp(kSafety * std::pow(error_norm, -0.2), kMinFactor, kMaxFactor);
}

bool finite(const Vec &y) { return std::isfinite(y[0]) && std::isfinite(y[1]); }

// Cubic Hermite interpolant of one accepted step.
struct Hermite {
  double t0;
  double h;
  Vec y0, y1, f0, f1;

  double component(std::size_t i, double t) const {
    const double s = (t - t0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0[i] + (s3 - 2 * s2 + s) * h * f0[i] +
           (-2 * s3 + 3 * s2) * y1[i] + (s3 - s2) * h * f1[i];
  }

  Vec operator()(double t) const { return {component(0, t), component(1, t)}; }
};

// Smallest located time in [lo, hi] at which the interpolated component has
// dropped to `level`, given it starts above and ends at or below it.
double locate_crossing(const Hermite &hermite, std::size_t i, double level,
                       double lo, double hi) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hermite.component(i, mid) > level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

State clamp_state(const Vec &y) {
  return {std::clamp(y[0], 0.0, 1.0), std::clamp(y[1], 0.0, 1.0)};
}

TerminationKind extinction_kind(std::size_t i) {
  return i == 0 ? TerminationKind::ExtinctionU : TerminationKind::ExtinctionV;
}

} // namespace

void IntegrationOptions::validate() const {
  auto fail = [](const std::string &what) { throw std::invalid_argument(what); };
  if (!(t_end > 0.0) || !std::isfinite(t_end)) fail("t_end must be positive");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) fail("tolerances must be positive");
  if (max_step < 0.0 || !std::isfinite(max_step)) {
    fail("max_step must be positive (or zero for the default)");
  }
  if (!(extinction_eps > 0.0 && extinction_eps < 0.1)) {
    fail("extinction_eps must lie in (0, 0.1)");
  }
  if (!(record_interval > 0.0) || !std::isfinite(record_interval)) {
    fail("record_interval must be positive");
  }
}

std::string to_string(TerminationKind kind) {
  switch (kind) {
  case TerminationKind::HorizonReached:
    return "HorizonReached";
  case TerminationKind::ExtinctionU:
    return "ExtinctionU";
  case TerminationKind::ExtinctionV:
    return "ExtinctionV";
  case TerminationKind::NumericalFailure:
    return "NumericalFailure";
  }
  return "Unknown";
}

Trajectory integrate(const State &initial, const ModelParams &m,
                     const IntegrationOptions &opts) {
  opts.validate();
  if (!initial.in_unit_square(kDomainTolerance)) {
    std::ostringstream msg;
    msg << "initial state (" << initial.u << ", " << initial.v
        << ") lies outside [0,1]^2";
    throw std::domain_error(msg.str());
  }

  Trajectory traj;
  const double eps = opts.extinction_eps;
  const double overshoot = opts.abs_tol;
  std::array<bool, 2> absorbed{false, false};
  Vec y{std::clamp(initial.u, 0.0, 1.0), std::clamp(initial.v, 0.0, 1.0)};

  // Populations already at or below the threshold go extinct at t = 0.
  for (std::size_t i = 0; i < 2; ++i) {
    if (y[i] > eps) continue;
    traj.extinctions.push_back({extinction_kind(i), 0.0});
    if (!opts.continue_after_extinction) {
      traj.samples.push_back({0.0, clamp_state(y)});
      traj.termination = traj.extinctions.front();
      return traj;
    }
    absorbed[i] = true;
    y[i] = 0.0;
  }
  traj.samples.push_back({0.0, clamp_state(y)});

  auto rhs = [&](const Vec &x) -> Vec {
    const Derivative d = detail::strategic_rhs(x[0], x[1], m);
    return {absorbed[0] ? 0.0 : d.du_dt, absorbed[1] ? 0.0 : d.dv_dt};
  };
  auto push_sample = [&](double t, const State &s) {
    if (t > traj.samples.back().t) traj.samples.push_back({t, s});
  };

  const double t_end = opts.t_end;
  const double max_step = opts.effective_max_step();
  double t = 0.0;
  double h = std::min(max_step, 1e-2);
  std::size_t next_record = 1;
  Vec f0 = rhs(y);

  auto fail = [&](double when) {
    traj.termination = {TerminationKind::NumericalFailure, when};
    return traj;
  };

  while (t < t_end) {
    if (traj.accepted_steps + traj.rejected_steps > kMaxSteps) return fail(t);
    const bool last_step = h >= t_end - t;
    if (last_step) h = t_end - t;
    if (h <= 1e-14 * std::max(1.0, t)) return fail(t);

    const TrialStep trial = dopri_step(rhs, y, f0, h, opts.rel_tol, opts.abs_tol);
    const bool outside =
        !finite(trial.y) ||
        std::any_of(trial.y.begin(), trial.y.end(), [&](double c) {
          return c < -overshoot || c > 1.0 + overshoot;
        });
    if (outside || !std::isfinite(trial.error_norm) || trial.error_norm > 1.0) {
      ++traj.rejected_steps;
      h *= outside ? 0.5 : std::min(1.0, step_factor(trial.error_norm));
      continue;
    }
    ++traj.accepted_steps;

    const double t1 = last_step ? t_end : t + h;
    Vec y1 = trial.y;
    Vec f1 = trial.f_end;
    const Vec clamped{std::clamp(y1[0], 0.0, 1.0), std::clamp(y1[1], 0.0, 1.0)};
    if (clamped != y1) {
      y1 = clamped;
      f1 = rhs(y1);
    }
    const Hermite hermite{t, t1 - t, y, y1, f0, f1};

    // Earliest threshold crossing inside the step, if any.
    double event_t = std::numeric_limits<double>::infinity();
    std::size_t event_i = 0;
    for (std::size_t i = 0; i < 2; ++i) {
      if (absorbed[i] || y1[i] > eps) continue;
      const double te = locate_crossing(hermite, i, eps, t, t1);
      if (te < event_t) {
        event_t = te;
        event_i = i;
      }
    }
    const double record_limit = std::isfinite(event_t) ? event_t : t1;
    while (true) {
      const double tr = static_cast<double>(next_record) * opts.record_interval;
      if (tr > t_end || tr > record_limit ||
          (std::isfinite(event_t) && tr >= event_t)) {
        break;
      }
      push_sample(tr, clamp_state(hermite(tr)));
      ++next_record;
    }

    if (std::isfinite(event_t)) {
      Vec ye = hermite(event_t);
      ye = {std::clamp(ye[0], 0.0, 1.0), std::clamp(ye[1], 0.0, 1.0)};
      ye[event_i] = std::min(ye[event_i], eps);
      const Termination event{extinction_kind(event_i), event_t};
      traj.extinctions.push_back(event);
      if (!opts.continue_after_extinction) {
        push_sample(event_t, clamp_state(ye));
        traj.termination = event;
        return traj;
      }
      absorbed[event_i] = true;
      ye[event_i] = 0.0;
      push_sample(event_t, clamp_state(ye));
      t = event_t;
      y = ye;
      f0 = rhs(y);
      continue;
    }

    t = t1;
    y = y1;
    f0 = f1;
    h = std::min(max_step, h * step_factor(trial.error_norm));
  }

  push_sample(t_end, clamp_state(y));
  traj.termination = {TerminationKind::HorizonReached, t_end};
  return traj;
}

std::optional<double> extinction_time(const Trajectory &traj, Population which) {
  const TerminationKind wanted = which == Population::U
                                     ? TerminationKind::ExtinctionU
                                     : TerminationKind::ExtinctionV;
  for (const Termination &event : traj.extinctions) {
    if (event.kind == wanted) return event.time;
  }
  return std::nullopt;
}

double classic_conserved(double prey, double predator, const ClassicParams &cp) {
  cp.validate();
  if (!(prey > 0.0) || !(predator > 0.0)) {
    throw std::domain_error("conserved quantity needs positive populations");
  }
  return cp.delta * prey - cp.n * std::log(prey) + cp.b * predator -
         cp.a_birth * std::log(predator);
}

std::vector<ClassicSample> integrate_classic(double prey, double predator,
                                             const ClassicParams &cp,
                                             const IntegrationOptions &opts) {
  opts.validate();
  cp.validate();
  if (prey < 0.0 || predator < 0.0) {
    throw std::domain_error("populations must be nonnegative");
  }
  auto rhs = [&](const Vec &x) -> Vec {
    return {x[0] * (cp.a_birth - cp.b * x[1]), x[1] * (-cp.n + cp.delta * x[0])};
  };

  std::vector<ClassicSample> out{{0.0, prey, predator}};
  const double t_end = opts.t_end;
  const double max_step = opts.effective_max_step();
  Vec y{prey, predator};
  Vec f0 = rhs(y);
  double t = 0.0;
  double h = std::min(max_step, 1e-2);
  std::size_t next_record = 1;
  std::size_t steps = 0;

  while (t < t_end) {
    if (++steps > kMaxSteps) throw std::runtime_error("step budget exhausted");
    const bool last_step = h >= t_end - t;
    if (last_step) h = t_end - t;
    if (h <= 1e-14 * std::max(1.0, t)) {
      throw std::runtime_error("step size underflow");
    }
    const TrialStep trial = dopri_step(rhs, y, f0, h, opts.rel_tol, opts.abs_tol);
    if (!finite(trial.y) || !std::isfinite(trial.error_norm) ||
        trial.error_norm > 1.0) {
      h *= finite(trial.y) ? std::min(1.0, step_factor(trial.error_norm)) : 0.5;
      continue;
    }
    const double t1 = last_step ? t_end : t + h;
    const Hermite hermite{t, t1 - t, y, trial.y, f0, trial.f_end};
    while (true) {
      const double tr = static_cast<double>(next_record) * opts.record_interval;
      if (tr > t1 || tr > t_end) break;
      const Vec s = hermite(tr);
      out.push_back({tr, s[0], s[1]});
      ++next_record;
    }
    t = t1;
    y = trial.y;
    f0 = trial.f_end;
    h = std::min(max_step, h * step_factor(trial.error_norm));
  }
  if (out.back().t < t_end) out.push_back({t_end, y[0], y[1]});
  return out;
}

} // namespace lvsim
