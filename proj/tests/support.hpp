#ifndef LVSIM_TESTS_SUPPORT_HPP_
#define LVSIM_TESTS_SUPPORT_HPP_

#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lvsim/scenario.hpp"
#include "lvsim/textio.hpp"

namespace testing {

inline const std::filesystem::path kDataDir = LVSIM_DATA_DIR;
inline const std::filesystem::path kFixtureDir = LVSIM_FIXTURE_DIR;

inline std::filesystem::path scenario_path(const std::string &name) {
  return kDataDir / "scenarios" / (name + ".scenario");
}

inline lvsim::Scenario scenario(const std::string &name) {
  return lvsim::load_scenario(scenario_path(name));
}

inline std::map<std::string, double> read_oracle(const std::string &file) {
  std::map<std::string, double> out;
  for (const auto &kv : lvsim::io::parse_key_values(lvsim::io::read_file(kFixtureDir / file))) {
    out[kv.key] = lvsim::io::parse_double(kv.value, kv.key);
  }
  return out;
}

inline std::vector<double> read_column(const std::filesystem::path &path,
                                       const std::string &name) {
  const auto table = lvsim::io::parse_csv(lvsim::io::read_file(path));
  const std::size_t c = table.column(name);
  std::vector<double> out;
  for (const auto &row : table.rows) out.push_back(lvsim::io::parse_double(row.fields[c], name));
  return out;
}

inline std::pair<std::vector<double>, std::vector<double>> read_xy(const std::string &file) {
  return {read_column(kFixtureDir / file, "x"), read_column(kFixtureDir / file, "y")};
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / ("lvsim_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline double uniform(std::mt19937_64 &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

} // namespace testing

#endif // LVSIM_TESTS_SUPPORT_HPP_
