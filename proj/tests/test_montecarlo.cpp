#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lvsim/montecarlo.hpp"
#include "lvsim/random.hpp"
#include "support.hpp"

using namespace lvsim;

namespace {

const State kStart = normalize_counts(19, 120);
const AggressionModel kFittedModel{0.814112, 0.027464};

IntegrationOptions horizon50() {
  IntegrationOptions opts;
  opts.t_end = 50.0;
  return opts;
}

void check_accounting(const EnsembleReport &r) {
  CHECK(r.extinct_v + r.extinct_u + r.horizon_reached + r.nonconverged == r.n_runs);
  CHECK(r.runs.size() == r.n_runs);
  CHECK(r.extinction_fraction_v ==
        static_cast<double>(r.extinct_v) / static_cast<double>(r.n_runs));
  if (r.extinction_time_quantiles) {
    const auto &q = *r.extinction_time_quantiles;
    CHECK(std::is_sorted(q.begin(), q.end()));
  }
}

} // namespace

TEST_CASE("type 7 quantiles") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(sorted_quantile(v, 0.0) == 1.0);
  CHECK(sorted_quantile(v, 1.0) == 4.0);
  CHECK(sorted_quantile(v, 0.5) == 2.5);
  CHECK(sorted_quantile(v, 0.25) == doctest::Approx(1.75));
  CHECK(sorted_quantile(std::vector<double>{7.0}, 0.3) == 7.0);
  CHECK_THROWS_AS(sorted_quantile(std::vector<double>{}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(sorted_quantile(v, 1.5), std::invalid_argument);
}

TEST_CASE("degenerate model repeats the deterministic run") {
  const Trajectory single = integrate(kStart, ModelParams(0.814112, 0.149, 0.175), horizon50());
  const EnsembleReport r = run_ensemble(kStart, 0.175, 0.149, {0.814112, 0.0}, horizon50(), 50, 3);
  check_accounting(r);
  CHECK(r.extinct_v == 50);
  for (const RunOutcome &run : r.runs) {
    CHECK(run.a == 0.814112);
    CHECK(run.termination.time == single.termination.time);
  }
  REQUIRE(r.extinction_time_quantiles);
  const double median = (*r.extinction_time_quantiles)[2];
  CHECK(median == single.termination.time);
  CHECK(std::abs(median - 7.0) <= 2.0);
}

TEST_CASE("single run report") {
  const EnsembleReport r = run_ensemble(kStart, 0.175, 0.149, kFittedModel, horizon50(), 1, 9);
  check_accounting(r);
  REQUIRE(r.runs.size() == 1);
  const double a = sample_aggression(kFittedModel, substream_seed(9, 0));
  CHECK(r.runs[0].a == a);
  const Trajectory traj = integrate(kStart, ModelParams(a, 0.149, 0.175), horizon50());
  CHECK(r.runs[0].termination.kind == traj.termination.kind);
  CHECK(r.runs[0].termination.time == traj.termination.time);
  REQUIRE(r.extinction_time_quantiles);
  for (double q : *r.extinction_time_quantiles) CHECK(q == traj.termination.time);
}

TEST_CASE("fitted model ensemble") {
  const EnsembleReport r = run_ensemble(kStart, 0.175, 0.149, kFittedModel, horizon50(), 1000, 1);
  check_accounting(r);
  CHECK(r.extinction_fraction_v == 1.0);
  CHECK(r.nonconverged == 0);
  REQUIRE(r.extinction_time_quantiles);
  CHECK((*r.extinction_time_quantiles)[4] - (*r.extinction_time_quantiles)[0] < 1.5);

  // Endpoints of the sampled range behave alike.
  for (double a : {0.73, 0.90}) {
    const Trajectory t = integrate(kStart, ModelParams(a, 0.149, 0.175), horizon50());
    CHECK(t.termination.kind == TerminationKind::ExtinctionV);
  }
}

TEST_CASE("ensembles are deterministic") {
  const EnsembleReport a = run_ensemble(kStart, 0.175, 0.149, kFittedModel, horizon50(), 200, 17);
  const EnsembleReport b = run_ensemble(kStart, 0.175, 0.149, kFittedModel, horizon50(), 200, 17);
  REQUIRE(a.runs.size() == b.runs.size());
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    CHECK(a.runs[i].a == b.runs[i].a);
    CHECK(a.runs[i].termination.time == b.runs[i].termination.time);
  }
  CHECK(a.extinction_time_quantiles == b.extinction_time_quantiles);

  // A longer ensemble with the same seed shares its prefix.
  const EnsembleReport c = run_ensemble(kStart, 0.175, 0.149, kFittedModel, horizon50(), 300, 17);
  for (std::size_t i = 0; i < a.runs.size(); ++i) CHECK(c.runs[i].a == a.runs[i].a);

  const EnsembleReport d = run_ensemble(kStart, 0.175, 0.149, kFittedModel, horizon50(), 200, 18);
  CHECK(d.runs[0].a != a.runs[0].a);
}

TEST_CASE("stronger aggression never slows extinction") {
  double previous = INFINITY;
  for (double a : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    const EnsembleReport r = run_ensemble(kStart, 0.175, 0.149, {a, 0.0}, horizon50(), 3, 0);
    REQUIRE(r.extinction_time_quantiles);
    const double median = (*r.extinction_time_quantiles)[2];
    CHECK(median <= previous);
    previous = median;
  }
}

TEST_CASE("non-extinct runs are counted") {
  const EnsembleReport r = run_ensemble(kStart, 0.175, 0.149, {0.0, 0.0}, horizon50(), 4, 0);
  check_accounting(r);
  CHECK(r.horizon_reached == 4);
  CHECK(r.extinction_fraction_v == 0.0);
  CHECK_FALSE(r.extinction_time_quantiles);
  CHECK_THROWS_AS(run_ensemble(kStart, 0.175, 0.149, kFittedModel, horizon50(), 0, 0),
                  std::invalid_argument);
}
