#ifndef LVSIM_SCENARIO_HPP_
#define LVSIM_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lvsim/estimation.hpp"
#include "lvsim/integrator.hpp"
#include "lvsim/model.hpp"

namespace lvsim {

/// Initial populations given as raw counts, normalized before use.
struct RawCounts {
  double u = 0.0;
  double v = 0.0;
  bool operator==(const RawCounts &) const = default;
};

enum class Artifact { Trajectory, PhasePlot, TimePlot, Summary };

std::string to_string(Artifact artifact);

/*
 * One experiment: parameters, initial condition and integration settings.
 * The aggression level is either a fixed number or a normal model from
 * which a value is drawn with the scenario seed.
 *
 * File format, one `key = value` per line, '#' starts a comment:
 *   name, a (number or "stochastic"), a_mean, a_sd, p, c1,
 *   u0 and v0 (densities) or u0_raw and v0_raw (counts),
 *   t_end, rel_tol, abs_tol, max_step, extinction_eps, record_interval,
 *   seed, outputs (comma list of trajectory, phase_plot, time_plot, summary)
 */
struct Scenario {
  std::string name;
  std::variant<double, AggressionModel> aggression = 0.0;
  double p = 0.0;
  double c1 = 0.0;
  std::variant<State, RawCounts> initial = State{};
  IntegrationOptions opts;
  std::optional<std::uint64_t> seed;
  std::vector<Artifact> outputs{Artifact::Trajectory, Artifact::PhasePlot,
                                Artifact::TimePlot, Artifact::Summary};

  bool stochastic() const { return std::holds_alternative<AggressionModel>(aggression); }

  /// Aggression model behind the scenario; fixed levels give sd = 0.
  AggressionModel aggression_model() const;

  State initial_state() const;

  /// Fully resolved parameters; stochastic levels are drawn with `seed`.
  ModelParams params(std::uint64_t seed) const;

  bool operator==(const Scenario &) const = default;
};

/// Parses and validates a scenario; throws io::FormatError with the key or
/// line at fault.
Scenario parse_scenario(std::string_view text);

std::string serialize_scenario(const Scenario &scenario);

Scenario load_scenario(const std::filesystem::path &path);

} // namespace lvsim

#endif // LVSIM_SCENARIO_HPP_
