#include "lvsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "CLI11.hpp"

#include "lvsim/analysis.hpp"
#include "lvsim/estimation.hpp"
#include "lvsim/montecarlo.hpp"
#include "lvsim/scenario.hpp"
#include "lvsim/stats.hpp"
#include "lvsim/svg.hpp"
#include "lvsim/textio.hpp"

namespace lvsim::cli {

namespace fs = std::filesystem;
using io::format_double;

namespace {

constexpr std::string_view kTimeUnits = "model units (dimensionless)";

// Invalid user input maps to kExitInvalidConfig; anything else is a plain
// failure.
template <class Fn> int guarded(std::ostream &err, Fn &&fn) {
  try {
    return fn();
  } catch (const io::FormatError &e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::domain_error &e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

void emit(const fs::path &path, std::string_view content, std::ostream &out) {
  io::write_file(path, content);
  out << "wrote " << path.string() << "\n";
}

std::string optional_time(std::optional<double> t) {
  return t ? format_double(*t) : std::string("none");
}

// Consecutive distinct region labels visited by the samples.
std::string region_sequence(const Trajectory &traj, const ModelParams &m) {
  std::string out;
  std::optional<RegionLabel> last;
  for (const Sample &sample : traj.samples) {
    const RegionLabel label = classify_region(sample.state, m).label;
    if (last && *last == label) continue;
    if (!out.empty()) out += ",";
    out += to_string(label);
    last = label;
  }
  return out;
}

bool wants(const Scenario &s, const std::optional<Format> &format, Artifact artifact) {
  if (format) {
    const bool csv = *format != Format::Svg;
    const bool svg = *format != Format::Csv;
    switch (artifact) {
    case Artifact::Trajectory:
      return csv;
    case Artifact::PhasePlot:
    case Artifact::TimePlot:
      return svg;
    case Artifact::Summary:
      return true;
    }
  }
  return std::find(s.outputs.begin(), s.outputs.end(), artifact) != s.outputs.end();
}

} // namespace

std::string trajectory_csv(std::span<const Sample> samples) {
  std::string out = "t,u,v\n";
  for (const Sample &s : samples) {
    out += format_double(s.t, 15);
    out += ',';
    out += format_double(s.state.u, 15);
    out += ',';
    out += format_double(s.state.v, 15);
    out += '\n';
  }
  return out;
}

std::vector<Sample> parse_trajectory_csv(std::string_view text) {
  const io::CsvTable table = io::parse_csv(text);
  const std::size_t ct = table.column("t");
  const std::size_t cu = table.column("u");
  const std::size_t cv = table.column("v");
  std::vector<Sample> samples;
  samples.reserve(table.rows.size());
  for (const auto &row : table.rows) {
    samples.push_back({io::parse_double(row.fields[ct], "t"),
                       {io::parse_double(row.fields[cu], "u"),
                        io::parse_double(row.fields[cv], "v")}});
  }
  return samples;
}

int simulate(const SimulateOptions &opts, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const Scenario scenario = load_scenario(opts.scenario);
    const std::uint64_t seed = opts.seed.value_or(scenario.seed.value_or(0));
    const ModelParams params = scenario.params(seed);
    const State initial = scenario.initial_state();
    fs::create_directories(opts.out_dir);

    const Trajectory traj = integrate(initial, params, scenario.opts);
    const bool failed = traj.termination.kind == TerminationKind::NumericalFailure;
    const std::string stem = (opts.out_dir / scenario.name).string();

    // Plots are rendered from the CSV text so they carry exactly what the
    // trajectory file holds.
    const std::string csv = trajectory_csv(traj.samples);
    if (wants(scenario, opts.format, Artifact::Trajectory)) {
      emit(stem + ".trajectory.csv", csv, out);
    }
    const bool phase = wants(scenario, opts.format, Artifact::PhasePlot);
    const bool time = wants(scenario, opts.format, Artifact::TimePlot);
    if (phase || time) {
      const std::vector<Sample> plotted = parse_trajectory_csv(csv);
      if (phase) {
        emit(stem + ".phase.svg", svg::phase_plot(plotted, scenario.name + ": phase plane"),
             out);
      }
      if (time) {
        emit(stem + ".time.svg",
             svg::time_plot(plotted, scenario.opts.t_end, scenario.name + ": densities"),
             out);
      }
    }

    io::KeyValueWriter summary;
    summary.add("scenario", scenario.name)
        .add("status", std::string(failed ? "numerical_failure" : "ok"))
        .add("time_units", std::string(kTimeUnits))
        .add("a", params.a())
        .add("a_source", std::string(scenario.stochastic() ? "stochastic" : "fixed"))
        .add("p", params.p())
        .add("c1", params.c1())
        .add("c2", params.c2())
        .add("u0", initial.u)
        .add("v0", initial.v)
        .add("t_end", scenario.opts.t_end)
        .add("extinction_eps", scenario.opts.extinction_eps)
        .add("termination", to_string(traj.termination.kind))
        .add("termination_time", traj.termination.time)
        .add("extinction_time_u", optional_time(extinction_time(traj, Population::U)))
        .add("extinction_time_v", optional_time(extinction_time(traj, Population::V)))
        .add("final_t", traj.samples.back().t)
        .add("final_u", traj.final_state().u)
        .add("final_v", traj.final_state().v);
    double displacement = 0.0;
    for (const Sample &sample : traj.samples) {
      displacement = std::max(displacement, std::hypot(sample.state.u - initial.u,
                                                       sample.state.v - initial.v));
    }
    summary.add("max_displacement", displacement)
        .add("samples", traj.samples.size())
        .add("accepted_steps", traj.accepted_steps)
        .add("rejected_steps", traj.rejected_steps)
        .add("region_initial", to_string(classify_region(initial, params).label))
        .add("region_sequence", region_sequence(traj, params));
    if (!failed) {
      const OmegaLimit omega =
          omega_limit(initial, params, scenario.opts.t_end, 1e-6, scenario.opts);
      summary.add("omega_limit_u", omega.state.u)
          .add("omega_limit_v", omega.state.v)
          .add("omega_limit_converged", omega.converged)
          .add("omega_limit_displacement", omega.displacement);
    }
    summary.add("strategy_advice", to_string(strategy_advice(params.p(), initial)));
    emit(stem + ".summary.txt", summary.str(), out);

    if (failed) {
      err << "numerical failure at t = " << traj.termination.time << "\n";
      return kExitNumericalFailure;
    }
    return kExitOk;
  });
}

int analyze(const AnalyzeOptions &opts, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const ModelParams m(opts.a, opts.p, opts.c1);
    if (opts.grid == 0 || opts.resolution == 0) {
      throw std::invalid_argument("grid and resolution must be positive");
    }
    fs::create_directories(opts.out_dir);

    io::KeyValueWriter report;
    report.add("a", m.a()).add("p", m.p()).add("c1", m.c1()).add("c2", m.c2());
    report.add("ac", m.ac());
    const std::vector<EquilibriumReport> equilibria = find_equilibria(m);
    report.add("equilibrium_count", equilibria.size());
    for (std::size_t i = 0; i < equilibria.size(); ++i) {
      const EquilibriumReport &eq = equilibria[i];
      const std::string prefix = "equilibrium." + std::to_string(i) + ".";
      report.add(prefix + "u", eq.point.u)
          .add(prefix + "v", eq.point.v)
          .add(prefix + "kind", to_string(eq.kind));
      for (std::size_t k = 0; k < 2; ++k) {
        const std::string ev = prefix + "eigenvalue." + std::to_string(k) + ".";
        report.add(ev + "re", eq.eigenvalues[k].real())
            .add(ev + "im", eq.eigenvalues[k].imag());
      }
    }

    const UNullcline u_null = nullcline_u(m);
    report.add("u_nullcline.axis", std::string("u=0"));
    report.add("u_nullcline.line_offset",
               u_null.line_offset ? format_double(*u_null.line_offset) : std::string("none"));
    report.add("u_nullcline.degenerate_corner", u_null.degenerate_corner);

    // Nullcline polylines.
    std::vector<svg::Polyline> curves;
    curves.push_back({"u_axis", {{0.0, 0.0}, {0.0, 1.0}}});
    if (u_null.line_offset && !u_null.degenerate_corner) {
      const double k = *u_null.line_offset;
      svg::Polyline line{"u_line", {}};
      for (std::size_t i = 0; i <= opts.resolution; ++i) {
        const double u = k * static_cast<double>(i) / static_cast<double>(opts.resolution);
        line.points.push_back({u, k - u});
      }
      curves.push_back(std::move(line));
    }
    svg::Polyline sigma{"v_curve", {}};
    for (std::size_t i = 0; i <= opts.resolution; ++i) {
      const double v = static_cast<double>(i) / static_cast<double>(opts.resolution);
      if (m.a() == 0.0 && v == 0.0) continue; // 0/0
      sigma.points.push_back({nullcline_v(v, m), v});
    }
    curves.push_back(std::move(sigma));
    if (m.a() == 0.0) curves.push_back({"v_axis", {{0.0, 0.0}, {1.0, 0.0}}});

    std::string nullcline_text = "curve,u,v\n";
    for (const svg::Polyline &curve : curves) {
      for (const State &s : curve.points) {
        nullcline_text += curve.name + "," + format_double(s.u, 15) + "," +
                          format_double(s.v, 15) + "\n";
      }
    }

    // Region raster at cell centres.
    const std::size_t n = opts.grid;
    std::vector<svg::RegionCell> cells;
    cells.reserve(n * n);
    std::map<RegionLabel, std::size_t> counts;
    std::string raster = "i,j,u,v,label,on_boundary\n";
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const State s{(static_cast<double>(i) + 0.5) / static_cast<double>(n),
                      (static_cast<double>(j) + 0.5) / static_cast<double>(n)};
        const RegionClassification c = classify_region(s, m);
        ++counts[c.label];
        cells.push_back({s.u, s.v, c.label});
        raster += std::to_string(i) + "," + std::to_string(j) + "," +
                  format_double(s.u, 15) + "," + format_double(s.v, 15) + "," +
                  to_string(c.label) + "," + (c.on_boundary ? "1" : "0") + "\n";
      }
    }
    report.add("grid", n);
    for (RegionLabel label :
         {RegionLabel::A1, RegionLabel::A2, RegionLabel::A3, RegionLabel::A4}) {
      report.add("region_cells." + to_string(label), counts[label]);
    }

    emit(opts.out_dir / "equilibria.txt", report.str(), out);
    if (opts.format != Format::Svg) {
      emit(opts.out_dir / "nullclines.csv", nullcline_text, out);
      emit(opts.out_dir / "regions.csv", raster, out);
    }
    if (opts.format != Format::Csv) {
      emit(opts.out_dir / "regions.svg",
           svg::region_plot(cells, n, curves, "sign regions and nullclines"), out);
    }
    return kExitOk;
  });
}

int estimate(const EstimateOptions &opts, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const io::CsvTable table = io::parse_csv(io::read_file(opts.csv));
    const std::size_t c_period = table.column("period");
    const std::size_t c_n = table.column("n_engagement");
    const std::size_t c_d = table.column("d_engagement");

    std::vector<EngagementRow> rows;
    std::string empty_lines;
    for (const auto &row : table.rows) {
      const std::string where = "line " + std::to_string(row.line);
      EngagementRow parsed{row.fields[c_period],
                           io::parse_double(row.fields[c_n], where + " n_engagement"),
                           io::parse_double(row.fields[c_d], where + " d_engagement")};
      if (parsed.n_t == 0.0 && parsed.d_t == 0.0) {
        if (!empty_lines.empty()) empty_lines += ", ";
        empty_lines += std::to_string(row.line);
      }
      rows.push_back(std::move(parsed));
    }
    if (!empty_lines.empty()) {
      throw io::FormatError("rows with zero total engagement at line(s) " + empty_lines);
    }
    const EngagementSeries series(std::move(rows));
    const AggressionFit fit = fit_aggression_model(series);
    fs::create_directories(opts.out_dir);

    io::KeyValueWriter report;
    report.add("source", opts.csv.filename().string()).add("n_rows", series.size());
    std::string csv = "period,n_engagement,d_engagement,a_t\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
      const EngagementRow &row = series.rows()[i];
      report.add("a_t." + row.period, fit.a_values[i]);
      csv += row.period + "," + format_double(row.n_t) + "," + format_double(row.d_t) +
             "," + format_double(fit.a_values[i], 15) + "\n";
    }
    report.add("mean", fit.model.mean)
        .add("sd", fit.model.sd)
        .add("sd_convention", std::string("sample (n-1 denominator)"))
        .add("sd_population", fit.sd_population);
    emit(opts.out_dir / "aggression_report.txt", report.str(), out);
    emit(opts.out_dir / "aggression.csv", csv, out);
    return kExitOk;
  });
}

int ensemble(const EnsembleOptions &opts, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const Scenario scenario = load_scenario(opts.scenario);
    const std::uint64_t seed = opts.seed.value_or(scenario.seed.value_or(0));
    const AggressionModel model = scenario.aggression_model();
    const EnsembleReport report =
        run_ensemble(scenario.initial_state(), scenario.c1, scenario.p, model,
                     scenario.opts, opts.n_runs, seed);
    fs::create_directories(opts.out_dir);

    io::KeyValueWriter kv;
    kv.add("scenario", scenario.name)
        .add("time_units", std::string(kTimeUnits))
        .add("n_runs", report.n_runs)
        .add("seed", std::to_string(report.seed))
        .add("a_mean", model.mean)
        .add("a_sd", model.sd)
        .add("p", scenario.p)
        .add("c1", scenario.c1)
        .add("extinction_fraction_v", report.extinction_fraction_v)
        .add("extinct_v", report.extinct_v)
        .add("extinct_u", report.extinct_u)
        .add("horizon_reached", report.horizon_reached)
        .add("nonconverged", report.nonconverged);
    static constexpr const char *kNames[] = {"q05", "q25", "q50", "q75", "q95"};
    for (std::size_t i = 0; i < kEnsembleQuantileLevels.size(); ++i) {
      kv.add(std::string("extinction_time_") + kNames[i],
             report.extinction_time_quantiles
                 ? format_double((*report.extinction_time_quantiles)[i])
                 : std::string("none"));
    }
    const auto [lo, hi] = std::minmax_element(
        report.runs.begin(), report.runs.end(),
        [](const RunOutcome &x, const RunOutcome &y) { return x.a < y.a; });
    kv.add("a_min", lo->a).add("a_max", hi->a);
    emit(opts.out_dir / (scenario.name + ".ensemble.txt"), kv.str(), out);
    return report.nonconverged > 0 ? kExitNumericalFailure : kExitOk;
  });
}

int stats(const StatsOptions &opts, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const io::CsvTable table = io::parse_csv(io::read_file(opts.csv));
    const std::size_t cx = table.column("x");
    const std::size_t cy = table.column("y");
    std::vector<double> x;
    std::vector<double> y;
    for (const auto &row : table.rows) {
      const std::string where = "line " + std::to_string(row.line);
      x.push_back(io::parse_double(row.fields[cx], where + " x"));
      y.push_back(io::parse_double(row.fields[cy], where + " y"));
    }
    const stats::OlsFit fit = stats::ols_fit(x, y);
    const stats::TestResult bp = stats::breusch_pagan(x, fit.residuals);
    fs::create_directories(opts.out_dir);

    io::KeyValueWriter kv;
    kv.add("source", opts.csv.filename().string())
        .add("n", fit.n)
        .add("beta0", fit.beta0)
        .add("beta1", fit.beta1)
        .add("se_beta0", fit.se_beta[0])
        .add("se_beta1", fit.se_beta[1])
        .add("t_beta0", fit.t_stats[0])
        .add("t_beta1", fit.t_stats[1])
        .add("p_beta0", fit.p_values[0])
        .add("p_beta1", fit.p_values[1])
        .add("r_squared", fit.r_squared)
        .add("residual_sd", fit.residual_sd)
        .add("bp_variant", std::string("koenker studentized n*R^2, chi-squared(1)"))
        .add("bp_statistic", bp.statistic)
        .add("bp_p_value", bp.p_value)
        .add("bp_reject_at_05", bp.reject_at_05);
    try {
      const stats::KsResult ks = stats::ks_test_normal(fit.residuals);
      kv.add("ks_statistic", ks.statistic)
          .add("ks_p_value", ks.p_value)
          .add("ks_reject_at_05", ks.reject_at_05)
          .add("ks_mean", ks.mean)
          .add("ks_sd", ks.sd);
    } catch (const std::invalid_argument &e) {
      kv.add("ks_statistic", std::string("none")).add("ks_status", std::string(e.what()));
    }
    kv.add("ks_note", std::string("normal fitted from the residuals; asymptotic p-value "
                                  "without Lilliefors correction"));
    emit(opts.out_dir / "stats_report.txt", kv.str(), out);
    return kExitOk;
  });
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Strategic-aggression Lotka-Volterra simulator. Times are in "
               "dimensionless model units."};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{
      {"csv", Format::Csv}, {"svg", Format::Svg}, {"both", Format::Both}};

  SimulateOptions sim;
  std::string sim_format;
  auto *sim_cmd = app.add_subcommand("simulate", "integrate one scenario file");
  sim_cmd->add_option("scenario", sim.scenario, "scenario file")->required();
  sim_cmd->add_option("--out", sim.out_dir, "output directory");
  sim_cmd->add_option("--format", sim_format, "csv|svg|both (default: scenario outputs)")
      ->check(CLI::IsMember({"csv", "svg", "both"}));
  sim_cmd->add_option("--seed", sim.seed, "seed for a stochastic aggression level");

  AnalyzeOptions ana;
  std::string ana_format = "csv";
  auto *ana_cmd = app.add_subcommand("analyze", "equilibria, nullclines and regions");
  ana_cmd->add_option("--a", ana.a, "aggression level in [0,1]")->required();
  ana_cmd->add_option("--p", ana.p, "fitness of population 2")->required();
  ana_cmd->add_option("--c1", ana.c1, "kill ratio of population 1")->required();
  ana_cmd->add_option("--grid", ana.grid, "region raster size per axis");
  ana_cmd->add_option("--resolution", ana.resolution, "nullcline samples");
  ana_cmd->add_option("--out", ana.out_dir, "output directory");
  ana_cmd->add_option("--format", ana_format, "csv|svg|both")
      ->check(CLI::IsMember({"csv", "svg", "both"}));

  EstimateOptions est;
  auto *est_cmd = app.add_subcommand("estimate", "aggression model from engagement CSV");
  est_cmd->add_option("csv", est.csv, "period,n_engagement,d_engagement CSV")->required();
  est_cmd->add_option("--out", est.out_dir, "output directory");

  EnsembleOptions ens;
  auto *ens_cmd = app.add_subcommand("ensemble", "Monte Carlo over the aggression model");
  ens_cmd->add_option("scenario", ens.scenario, "scenario file")->required();
  ens_cmd->add_option("-n,--runs", ens.n_runs, "number of runs");
  ens_cmd->add_option("--seed", ens.seed, "master seed");
  ens_cmd->add_option("--out", ens.out_dir, "output directory");

  StatsOptions sta;
  auto *sta_cmd = app.add_subcommand("stats", "OLS, Breusch-Pagan and KS on x,y CSV");
  sta_cmd->add_option("csv", sta.csv, "x,y CSV")->required();
  sta_cmd->add_option("--out", sta.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  if (*sim_cmd) {
    if (!sim_format.empty()) sim.format = formats.at(sim_format);
    return simulate(sim, out, err);
  }
  if (*ana_cmd) {
    ana.format = formats.at(ana_format);
    return analyze(ana, out, err);
  }
  if (*est_cmd) return estimate(est, out, err);
  if (*ens_cmd) return ensemble(ens, out, err);
  return stats(sta, out, err);
}

} // namespace lvsim::cli
