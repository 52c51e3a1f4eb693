#ifndef LVSIM_ESTIMATION_HPP_
#define LVSIM_ESTIMATION_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace lvsim {

struct EngagementRow {
  std::string period;
  double n_t = 0.0;
  double d_t = 0.0;
};

/*
 * Monthly engagement counts. Periods are opaque labels that must increase
 * strictly in lexicographic order ("2024-07" < "2024-08" < "2025-01").
 * Counts are mean-response values, so they may be fractional.
 */
class EngagementSeries {
 public:
  EngagementSeries() = default;
  explicit EngagementSeries(std::vector<EngagementRow> rows);

  const std::vector<EngagementRow> &rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<EngagementRow> rows_;
};

/// Normal model of the aggression level, N(mean, sd).
struct AggressionModel {
  double mean = 0.0;
  double sd = 0.0;

  void validate() const;
  bool operator==(const AggressionModel &) const = default;
};

struct AggressionFit {
  AggressionModel model; // sd with the n-1 denominator
  double sd_population = 0.0;
  std::vector<double> a_values;
};

/// Share of engagement owned by the first actor, N / (N + D).
double aggression_density(double n_t, double d_t);

/// Accounts reached per week: accounts * engagement_rate * posts_per_week.
double estimate_reach(double accounts, double engagement_rate, double posts_per_week);

double weekly_to_daily(double weekly);

AggressionFit fit_aggression_model(const EngagementSeries &series);

/// One draw of N(mean, sd) from a generator seeded with `seed`, clamped to [0,1].
double sample_aggression(const AggressionModel &model, std::uint64_t seed);

} // namespace lvsim

#endif // LVSIM_ESTIMATION_HPP_
