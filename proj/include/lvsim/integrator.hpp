#ifndef LVSIM_INTEGRATOR_HPP_
#define LVSIM_INTEGRATOR_HPP_

#include <optional>
#include <string>
#include <vector>

#include "lvsim/model.hpp"

namespace lvsim {

struct IntegrationOptions {
  double t_end = 100.0;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  // Zero selects 0.01 * t_end.
  double max_step = 0.0;
  double extinction_eps = 1e-3;
  double record_interval = 0.05;
  // When set, a population that falls below extinction_eps is pinned to zero
  // and integration carries on to t_end in the surviving component.
  bool continue_after_extinction = false;

  double effective_max_step() const {
    return max_step > 0.0 ? max_step : 0.01 * t_end;
  }

  /// Throws std::invalid_argument on out-of-range settings.
  void validate() const;

  bool operator==(const IntegrationOptions &) const = default;
};

enum class TerminationKind { HorizonReached, ExtinctionU, ExtinctionV, NumericalFailure };

std::string to_string(TerminationKind kind);

struct Termination {
  TerminationKind kind = TerminationKind::HorizonReached;
  double time = 0.0;
};

struct Sample {
  double t = 0.0;
  State state;
};

struct Trajectory {
  // Strictly increasing times starting at zero, every state inside [0,1]^2.
  std::vector<Sample> samples;
  Termination termination;
  // Every threshold crossing in order of occurrence. With the default
  // options this holds at most the terminating event.
  std::vector<Termination> extinctions;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;

  const State &final_state() const { return samples.back().state; }
};

enum class Population { U, V };

/*
 * Integrates the strategic system from `initial` with an embedded
 * Dormand-Prince 5(4) pair. Accepted steps are clamped to the unit square;
 * trial steps overshooting it by more than abs_tol are rejected instead.
 * A population crossing extinction_eps from above is located on the cubic
 * Hermite interpolant of the step by bisection and reported as an event.
 */
Trajectory integrate(const State &initial, const ModelParams &m,
                     const IntegrationOptions &opts);

/// Time at which `which` crossed the extinction threshold, if it did.
std::optional<double> extinction_time(const Trajectory &traj, Population which);

/// First integral H = delta P - n ln P + b Q - a ln Q of the classic system.
double classic_conserved(double prey, double predator, const ClassicParams &cp);

struct ClassicSample {
  double t = 0.0;
  double prey = 0.0;
  double predator = 0.0;
};

/// Same stepper on the classic system (no clamping, no events).
std::vector<ClassicSample> integrate_classic(double prey, double predator,
                                             const ClassicParams &cp,
                                             const IntegrationOptions &opts);

} // namespace lvsim

#endif // LVSIM_INTEGRATOR_HPP_
