#ifndef LVSIM_CLI_HPP_
#define LVSIM_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lvsim/integrator.hpp"

namespace lvsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitNumericalFailure = 3;

enum class Format { Csv, Svg, Both };

struct SimulateOptions {
  std::filesystem::path scenario;
  std::filesystem::path out_dir = ".";
  // Overrides the scenario's output list when set.
  std::optional<Format> format;
  std::optional<std::uint64_t> seed;
};

struct AnalyzeOptions {
  double a = 0.0;
  double p = 0.0;
  double c1 = 0.0;
  std::size_t grid = 200;
  std::size_t resolution = 200;
  std::filesystem::path out_dir = ".";
  Format format = Format::Csv;
};

struct EstimateOptions {
  std::filesystem::path csv;
  std::filesystem::path out_dir = ".";
};

struct EnsembleOptions {
  std::filesystem::path scenario;
  std::size_t n_runs = 1000;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
};

struct StatsOptions {
  std::filesystem::path csv;
  std::filesystem::path out_dir = ".";
};

// Each command writes its artifacts under out_dir, reports written paths on
// `out` and problems on `err`, and returns the process exit code.
int simulate(const SimulateOptions &opts, std::ostream &out, std::ostream &err);
int analyze(const AnalyzeOptions &opts, std::ostream &out, std::ostream &err);
int estimate(const EstimateOptions &opts, std::ostream &out, std::ostream &err);
int ensemble(const EnsembleOptions &opts, std::ostream &out, std::ostream &err);
int stats(const StatsOptions &opts, std::ostream &out, std::ostream &err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// `t,u,v` with 15 significant digits per value.
std::string trajectory_csv(std::span<const Sample> samples);

std::vector<Sample> parse_trajectory_csv(std::string_view text);

} // namespace lvsim::cli

#endif // LVSIM_CLI_HPP_
