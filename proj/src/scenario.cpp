#include "lvsim/scenario.hpp"

#include <map>
#include <set>

#include "lvsim/textio.hpp"

namespace lvsim {

namespace {

const std::set<std::string, std::less<>> kKnownKeys{
    "name",     "a",       "a_mean",  "a_sd",    "p",
    "c1",       "u0",      "v0",      "u0_raw",  "v0_raw",
    "t_end",    "rel_tol", "abs_tol", "max_step", "extinction_eps",
    "record_interval", "seed", "outputs"};

Artifact parse_artifact(std::string_view text) {
  if (text == "trajectory") return Artifact::Trajectory;
  if (text == "phase_plot") return Artifact::PhasePlot;
  if (text == "time_plot") return Artifact::TimePlot;
  if (text == "summary") return Artifact::Summary;
  throw io::FormatError("outputs: unknown artifact '" + std::string(text) + "'");
}

} // namespace

std::string to_string(Artifact artifact) {
  switch (artifact) {
  case Artifact::Trajectory:
    return "trajectory";
  case Artifact::PhasePlot:
    return "phase_plot";
  case Artifact::TimePlot:
    return "time_plot";
  case Artifact::Summary:
    return "summary";
  }
  return "unknown";
}

AggressionModel Scenario::aggression_model() const {
  if (const auto *model = std::get_if<AggressionModel>(&aggression)) return *model;
  return {std::get<double>(aggression), 0.0};
}

State Scenario::initial_state() const {
  if (const auto *raw = std::get_if<RawCounts>(&initial)) {
    return normalize_counts(raw->u, raw->v);
  }
  return std::get<State>(initial);
}

ModelParams Scenario::params(std::uint64_t draw_seed) const {
  const double a = stochastic() ? sample_aggression(aggression_model(), draw_seed)
                                : std::get<double>(aggression);
  return ModelParams(a, p, c1);
}

Scenario parse_scenario(std::string_view text) {
  std::map<std::string, std::string, std::less<>> values;
  for (const io::KeyValue &kv : io::parse_key_values(text)) {
    if (!kKnownKeys.contains(kv.key)) {
      throw io::FormatError("line " + std::to_string(kv.line) + ": unknown key '" +
                            kv.key + "'");
    }
    if (!values.emplace(kv.key, kv.value).second) {
      throw io::FormatError("line " + std::to_string(kv.line) + ": duplicate key '" +
                            kv.key + "'");
    }
  }
  auto has = [&](std::string_view key) { return values.contains(key); };
  auto require = [&](std::string_view key) -> const std::string & {
    const auto it = values.find(key);
    if (it == values.end()) {
      throw io::FormatError("missing required key '" + std::string(key) + "'");
    }
    return it->second;
  };
  auto number = [&](std::string_view key) { return io::parse_double(require(key), key); };

  Scenario s;
  s.name = require("name");
  if (s.name.empty() || s.name.find_first_of("/\\ \t") != std::string::npos) {
    throw io::FormatError("name: must be non-empty without spaces or slashes");
  }

  if (require("a") == "stochastic") {
    s.aggression = AggressionModel{number("a_mean"), number("a_sd")};
  } else {
    if (has("a_mean") || has("a_sd")) {
      throw io::FormatError("a_mean/a_sd are only valid with a = stochastic");
    }
    s.aggression = number("a");
  }
  s.p = number("p");
  s.c1 = number("c1");

  const bool dens = has("u0") || has("v0");
  const bool raw = has("u0_raw") || has("v0_raw");
  if (dens == raw) {
    throw io::FormatError("give the initial condition as u0/v0 or as u0_raw/v0_raw");
  }
  if (dens) {
    s.initial = State{number("u0"), number("v0")};
  } else {
    s.initial = RawCounts{number("u0_raw"), number("v0_raw")};
  }

  if (has("t_end")) s.opts.t_end = number("t_end");
  if (has("rel_tol")) s.opts.rel_tol = number("rel_tol");
  if (has("abs_tol")) s.opts.abs_tol = number("abs_tol");
  if (has("max_step")) s.opts.max_step = number("max_step");
  if (has("extinction_eps")) s.opts.extinction_eps = number("extinction_eps");
  if (has("record_interval")) s.opts.record_interval = number("record_interval");
  if (has("seed")) s.seed = io::parse_uint(require("seed"), "seed");

  if (has("outputs")) {
    s.outputs.clear();
    std::string_view rest = require("outputs");
    while (true) {
      const auto comma = rest.find(',');
      const Artifact artifact = parse_artifact(io::trim(rest.substr(0, comma)));
      for (Artifact seen : s.outputs) {
        if (seen == artifact) throw io::FormatError("outputs: duplicate artifact");
      }
      s.outputs.push_back(artifact);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }

  // Resolve everything once so that invalid values surface at load time.
  try {
    s.opts.validate();
    s.aggression_model().validate();
    (void)ModelParams(s.aggression_model().mean, s.p, s.c1);
    const State start = s.initial_state();
    if (!start.in_unit_square()) {
      throw std::invalid_argument("initial state lies outside [0,1]^2");
    }
  } catch (const std::invalid_argument &e) {
    throw io::FormatError(e.what());
  }
  return s;
}

std::string serialize_scenario(const Scenario &s) {
  using io::format_double;
  io::KeyValueWriter out;
  out.add("name", s.name);
  if (const auto *model = std::get_if<AggressionModel>(&s.aggression)) {
    out.add("a", std::string("stochastic"));
    out.add("a_mean", model->mean);
    out.add("a_sd", model->sd);
  } else {
    out.add("a", std::get<double>(s.aggression));
  }
  out.add("p", s.p);
  out.add("c1", s.c1);
  if (const auto *raw = std::get_if<RawCounts>(&s.initial)) {
    out.add("u0_raw", raw->u);
    out.add("v0_raw", raw->v);
  } else {
    out.add("u0", std::get<State>(s.initial).u);
    out.add("v0", std::get<State>(s.initial).v);
  }
  out.add("t_end", s.opts.t_end);
  out.add("rel_tol", s.opts.rel_tol);
  out.add("abs_tol", s.opts.abs_tol);
  out.add("max_step", s.opts.max_step);
  out.add("extinction_eps", s.opts.extinction_eps);
  out.add("record_interval", s.opts.record_interval);
  if (s.seed) out.add("seed", std::to_string(*s.seed));
  std::string outputs;
  for (Artifact artifact : s.outputs) {
    if (!outputs.empty()) outputs += ",";
    outputs += to_string(artifact);
  }
  out.add("outputs", outputs);
  return out.str();
}

Scenario load_scenario(const std::filesystem::path &path) {
  return parse_scenario(io::read_file(path));
}

} // namespace lvsim
