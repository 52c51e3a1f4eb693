// End-to-end acceptance checks. Prints one PASS/FAIL line per check and
// exits non-zero if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lvsim/analysis.hpp"
#include "lvsim/cli.hpp"
#include "lvsim/estimation.hpp"
#include "lvsim/stats.hpp"
#include "support.hpp"

using namespace lvsim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Report = std::map<std::string, std::string>;

Report read_report(const fs::path &path) {
  Report out;
  for (const auto &kv : io::parse_key_values(io::read_file(path))) out[kv.key] = kv.value;
  return out;
}

double num(const Report &r, const std::string &key) {
  const auto it = r.find(key);
  if (it == r.end()) throw std::runtime_error("report lacks " + key);
  return io::parse_double(it->second, key);
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lvsim");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

const fs::path &work_dir() {
  static const fs::path dir = testing::scratch_dir("acceptance");
  return dir;
}

Report simulate(const std::string &name) {
  const int code = run_cli({"simulate", testing::scenario_path(name).string(), "--out",
                            work_dir().string(), "--format", "csv"});
  if (code != 0) throw std::runtime_error("simulate " + name + " exited " + std::to_string(code));
  return read_report(work_dir() / (name + ".summary.txt"));
}

std::string fmt(const char *pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

Outcome extinction_window(const std::string &name, double lo, double hi) {
  const Report r = simulate(name);
  const bool extinct = r.at("termination") == "ExtinctionV";
  const double t = extinct ? num(r, "extinction_time_v") : NAN;
  return {extinct && t >= lo && t <= hi,
          r.at("termination") + fmt(" at t = %.4f, window [%g, %g]", t, lo, hi)};
}

Outcome influencer() { return extinction_window("influencer", 5.0, 9.0); }

Outcome mitigation() {
  const Report full = simulate("mitigation");
  const Report base = simulate("influencer");
  const bool extinct = full.at("termination") == "ExtinctionV";
  const double t = extinct ? num(full, "extinction_time_v") : NAN;
  const double t_base = num(base, "extinction_time_v");
  return {extinct && t >= 3.5 && t <= 6.5 && t < t_base,
          fmt("ExtinctionV at t = %.4f, window [3.5, 6.5], influencer at %.4f", t, t_base)};
}

Outcome taliban_spike() { return extinction_window("taliban_spike_98_influencer", 7.0, 11.0); }

Outcome nato_spike() { return extinction_window("nato_spike_90_influencer", 1.0, 2.0); }

Outcome inaction() {
  const Report r = simulate("inaction");
  const double d = num(r, "max_displacement");
  return {r.at("termination") == "HorizonReached" && num(r, "final_t") == 50.0 && d < 1e-6,
          r.at("termination") + fmt(" at t = %g, max displacement %.3g", num(r, "final_t"), d)};
}

Outcome nato_inaction() {
  const Report r = simulate("nato_spike_inaction");
  const double ur = num(r, "final_u") / num(r, "u0");
  const double vr = num(r, "final_v") / num(r, "v0");
  return {r.at("termination") == "HorizonReached" && num(r, "final_t") == 100.0 && ur < 0.35 &&
              vr > 0.8,
          fmt("u/u0 = %.4f (< 0.35), v/v0 = %.4f (> 0.8) at t = %g", ur, vr,
              num(r, "final_t"))};
}

Outcome taxonomy() {
  std::mt19937_64 rng(2024);
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const double a = testing::uniform(rng, 0.05, 1.0);
    const double p = testing::uniform(rng, 0.05, 3.0);

    const auto inner = find_equilibria(ModelParams(a, p, testing::uniform(rng, 0.01, 0.99) / a));
    if (inner.size() != 3 || inner[0].kind != EquilibriumKind::Source ||
        inner[1].kind != EquilibriumKind::Sink || inner[2].kind != EquilibriumKind::Saddle) {
      ++mismatches;
    }
    const auto outer = find_equilibria(ModelParams(a, p, testing::uniform(rng, 1.01, 5.0) / a));
    if (outer.size() != 2 || outer[0].kind != EquilibriumKind::Saddle ||
        outer[1].kind != EquilibriumKind::Sink) {
      ++mismatches;
    }
    const auto edge = find_equilibria(ModelParams(a, p, 1.0 / a));
    if (edge[0].kind != EquilibriumKind::DegenerateNullEigenvalue ||
        edge[1].kind != EquilibriumKind::Sink) {
      ++mismatches;
    }
  }
  return {mismatches == 0, fmt("%g mismatches over 3 x 100 parameter sets", mismatches)};
}

Outcome saddle_and_sigma() {
  std::mt19937_64 rng(2025);
  double worst_field = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = testing::uniform(rng, 0.05, 1.0);
    const ModelParams m(a, testing::uniform(rng, 0.05, 3.0),
                        testing::uniform(rng, 0.001, 0.999) / a);
    const Derivative d = strategic_field(*interior_saddle(m), m);
    worst_field = std::max({worst_field, std::abs(d.du_dt), std::abs(d.dv_dt)});
  }
  double worst_sigma = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const ModelParams m(testing::uniform(rng, 0.01, 1.0), testing::uniform(rng, 0.05, 3.0),
                        testing::uniform(rng, 0.05, 3.0));
    const double v = testing::uniform(rng, 0.0, 1.0);
    const double other = m.p() * v * (1.0 - v) / (m.p() * v + m.a());
    worst_sigma = std::max(worst_sigma, std::abs(nullcline_v(v, m) - other));
  }
  return {worst_field < 1e-10 && worst_sigma < 1e-14,
          fmt("max |field| at saddle %.3g (< 1e-10), max sigma gap %.3g (< 1e-14)", worst_field,
              worst_sigma)};
}

Outcome trapping() {
  const TrappingReport r = check_a3_trapping(ModelParams(0.814112, 0.149, 0.175), 200, 50.0);
  return {r.n_samples == 200 && r.violations.empty(),
          fmt("%g starts, %g samples outside A3", static_cast<double>(r.n_samples),
              static_cast<double>(r.violations.size()))};
}

Outcome conserved_quantity() {
  const ClassicParams cp{1.0, 0.5, 0.25, 0.3};
  IntegrationOptions opts;
  opts.t_end = 100.0;
  const auto orbit = integrate_classic(2.0, 1.0, cp, opts);
  const double h0 = classic_conserved(2.0, 1.0, cp);
  double drift = 0.0;
  for (const auto &s : orbit) {
    drift = std::max(drift, std::abs(classic_conserved(s.prey, s.predator, cp) - h0));
  }
  const double rel = drift / std::abs(h0);
  return {orbit.back().t == 100.0 && rel < 1e-6,
          fmt("max relative drift %.3g over t in [0, %g]", rel, orbit.back().t)};
}

Outcome estimation_chain() {
  const fs::path out = work_dir() / "estimate";
  const int code = run_cli({"estimate", (testing::kDataDir / "engagement_monthly.csv").string(),
                            "--out", out.string()});
  if (code != 0) return {false, "estimate exited " + std::to_string(code)};
  const Report r = read_report(out / "aggression_report.txt");
  const double mean = num(r, "mean");
  const double sd = num(r, "sd");
  const double reach = estimate_reach(120000, 0.029, 3);
  return {std::abs(mean - 0.814112) < 1e-6 && std::abs(sd - 0.027464) < 1e-6 && reach == 10440.0,
          fmt("mean %.9f, sd %.9f, reach %.17g", mean, sd, reach)};
}

Outcome statistics() {
  const auto oracle = testing::read_oracle("stats_oracle.txt");
  double coef_gap = 0.0;
  double p_gap = 0.0;
  for (const std::string name : {"homoskedastic", "heteroskedastic", "small", "likes_generator"}) {
    const auto [x, y] = testing::read_xy("stats_" + name + ".csv");
    const stats::OlsFit fit = stats::ols_fit(x, y);
    long double n = x.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sx += x[i];
      sy += y[i];
      sxx += static_cast<long double>(x[i]) * x[i];
      sxy += static_cast<long double>(x[i]) * y[i];
    }
    const long double det = n * sxx - sx * sx;
    coef_gap = std::max({coef_gap,
                         std::abs(fit.beta0 - static_cast<double>((sy * sxx - sx * sxy) / det)),
                         std::abs(fit.beta1 - static_cast<double>((n * sxy - sx * sy) / det))});
    const stats::TestResult bp = stats::breusch_pagan(x, fit.residuals);
    const stats::KsResult ks = stats::ks_test_normal(fit.residuals);
    p_gap = std::max({p_gap, std::abs(bp.p_value - oracle.at(name + ".bp_p_value")),
                      std::abs(ks.p_value - oracle.at(name + ".ks_p_value"))});
  }
  for (const std::string name : {"ks_normal_500", "ks_uniform_500", "ks_uniform_2000"}) {
    const auto sample = testing::read_column(testing::kFixtureDir / (name + ".csv"), "x");
    p_gap = std::max(p_gap, std::abs(stats::ks_test_normal(sample).p_value -
                                     oracle.at(name + ".p_value")));
  }
  const auto [d, likes] = testing::read_xy("stats_likes_generator.csv");
  const stats::OlsFit gen = stats::ols_fit(d, likes);
  const double z0 = std::abs(gen.beta0 - 151.425) / gen.se_beta[0];
  const double z1 = std::abs(gen.beta1 + 0.75) / gen.se_beta[1];
  std::string detail = fmt("coefficient gap %.3g (< 1e-10), p-value gap %.3g (< 1e-6), ",
                           coef_gap, p_gap);
  detail += fmt("generator recovery %.2f and %.2f se (< 3)", z0, z1);
  return {coef_gap < 1e-10 && p_gap < 1e-6 && z0 < 3.0 && z1 < 3.0, detail};
}

Outcome determinism() {
  const std::string scenario = testing::scenario_path("stochastic_influencer").string();
  const fs::path a = work_dir() / "ensemble_a";
  const fs::path b = work_dir() / "ensemble_b";
  for (const fs::path &dir : {a, b}) {
    const int code = run_cli({"ensemble", scenario, "-n", "1000", "--seed", "7", "--out",
                              dir.string()});
    if (code != 0) return {false, "ensemble exited " + std::to_string(code)};
  }
  const std::string name = "stochastic_influencer.ensemble.txt";
  const bool identical = io::read_file(a / name) == io::read_file(b / name);

  const fs::path fixed = work_dir() / "ensemble_fixed";
  if (run_cli({"ensemble", testing::scenario_path("influencer").string(), "-n", "16", "--out",
               fixed.string()}) != 0) {
    return {false, "fixed-level ensemble failed"};
  }
  const std::string median = read_report(fixed / "influencer.ensemble.txt").at("extinction_time_q50");
  const std::string simulated = simulate("influencer").at("termination_time");
  return {identical && median == simulated,
          std::string(identical ? "byte-identical" : "different") + " reports, sd = 0 median " +
              median + " vs simulate " + simulated};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
      {"influencer v-extinction time", influencer},
      {"full aggression extinction time and ordering", mitigation},
      {"spike to v0 = 0.98 extinction time", taliban_spike},
      {"spike to u0 = 0.9 extinction time", nato_spike},
      {"inaction on the stationary line", inaction},
      {"inaction after a spike to u0 = 0.9", nato_inaction},
      {"equilibrium taxonomy by regime", taxonomy},
      {"saddle and v-nullcline identities", saddle_and_sigma},
      {"A3 trapping", trapping},
      {"classic first integral drift", conserved_quantity},
      {"aggression estimation chain", estimation_chain},
      {"regression diagnostics against frozen oracles", statistics},
      {"ensemble determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome outcome;
    try {
      outcome = checks[i].second();
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] %2zu. %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                checks[i].first.c_str(), outcome.detail.c_str());
  }
  std::printf("%zu/%zu passed\n", checks.size() - failures, checks.size());
  return failures == 0 ? 0 : 1;
}
