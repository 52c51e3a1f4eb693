#ifndef LVSIM_MONTECARLO_HPP_
#define LVSIM_MONTECARLO_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lvsim/estimation.hpp"
#include "lvsim/integrator.hpp"

namespace lvsim {

struct RunOutcome {
  double a = 0.0;
  Termination termination;
};

inline constexpr std::array<double, 5> kEnsembleQuantileLevels{0.05, 0.25, 0.5, 0.75, 0.95};

struct EnsembleReport {
  std::size_t n_runs = 0;
  std::uint64_t seed = 0;
  AggressionModel model;
  double extinction_fraction_v = 0.0;
  std::size_t extinct_v = 0;
  std::size_t extinct_u = 0;
  std::size_t horizon_reached = 0;
  std::size_t nonconverged = 0;
  // Quantiles of the v-extinction times at kEnsembleQuantileLevels; empty
  // when no run drove v extinct.
  std::optional<std::array<double, 5>> extinction_time_quantiles;
  std::vector<RunOutcome> runs;
};

/// Linear-interpolation quantile of sorted data (the R type 7 rule).
double sorted_quantile(std::span<const double> sorted, double level);

/*
 * Runs n_runs integrations from `initial`, each with its own aggression
 * level drawn from `model` on substream (seed, run index). Runs execute in
 * parallel; the report depends only on the inputs.
 */
EnsembleReport run_ensemble(const State &initial, double c1, double p,
                            const AggressionModel &model,
                            const IntegrationOptions &opts, std::size_t n_runs,
                            std::uint64_t seed);

} // namespace lvsim

#endif // LVSIM_MONTECARLO_HPP_
