#include "lvsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lvsim/parallel.hpp"
#include "lvsim/random.hpp"

namespace lvsim {

double sorted_quantile(std::span<const double> sorted, double level) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  if (!(level >= 0.0 && level <= 1.0)) {
    throw std::invalid_argument("quantile level must lie in [0,1]");
  }
  const double h = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

EnsembleReport run_ensemble(const State &initial, double c1, double p,
                            const AggressionModel &model,
                            const IntegrationOptions &opts, std::size_t n_runs,
                            std::uint64_t seed) {
  if (n_runs == 0) throw std::invalid_argument("ensemble needs at least one run");
  model.validate();
  opts.validate();
  // Fails early on invalid c1/p rather than once per run.
  (void)ModelParams(model.mean, p, c1);

  EnsembleReport report;
  report.n_runs = n_runs;
  report.seed = seed;
  report.model = model;
  report.runs.resize(n_runs);

  parallel_for(n_runs, [&](std::size_t k) {
    RunOutcome &run = report.runs[k];
    run.a = sample_aggression(model, substream_seed(seed, k));
    const ModelParams params(run.a, p, c1);
    run.termination = integrate(initial, params, opts).termination;
  });

  std::vector<double> times;
  for (const RunOutcome &run : report.runs) {
    switch (run.termination.kind) {
    case TerminationKind::ExtinctionV:
      ++report.extinct_v;
      times.push_back(run.termination.time);
      break;
    case TerminationKind::ExtinctionU:
      ++report.extinct_u;
      break;
    case TerminationKind::HorizonReached:
      ++report.horizon_reached;
      break;
    case TerminationKind::NumericalFailure:
      ++report.nonconverged;
      break;
    }
  }
  report.extinction_fraction_v =
      static_cast<double>(report.extinct_v) / static_cast<double>(n_runs);
  if (!times.empty()) {
    std::sort(times.begin(), times.end());
    std::array<double, 5> q{};
    for (std::size_t i = 0; i < q.size(); ++i) {
      q[i] = sorted_quantile(times, kEnsembleQuantileLevels[i]);
    }
    report.extinction_time_quantiles = q;
  }
  return report;
}

} // namespace lvsim
