#include "lvsim/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lvsim/random.hpp"

namespace lvsim {

EngagementSeries::EngagementSeries(std::vector<EngagementRow> rows)
    : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const EngagementRow &row = rows_[i];
    if (!(row.n_t >= 0.0) || !(row.d_t >= 0.0) || !std::isfinite(row.n_t) ||
        !std::isfinite(row.d_t)) {
      std::ostringstream msg;
      msg << "row " << i + 1 << " (" << row.period
          << "): counts must be finite and nonnegative";
      throw std::invalid_argument(msg.str());
    }
    if (i > 0 && !(rows_[i - 1].period < row.period)) {
      std::ostringstream msg;
      msg << "row " << i + 1 << ": period '" << row.period
          << "' does not follow '" << rows_[i - 1].period << "'";
      throw std::invalid_argument(msg.str());
    }
  }
}

void AggressionModel::validate() const {
  if (!(mean >= 0.0 && mean <= 1.0)) {
    throw std::invalid_argument("aggression mean must lie in [0,1]");
  }
  if (!(sd >= 0.0 && sd < 0.5)) {
    throw std::invalid_argument("aggression sd must lie in [0, 0.5)");
  }
}

double aggression_density(double n_t, double d_t) {
  if (n_t < 0.0 || d_t < 0.0) {
    throw std::invalid_argument("engagement counts must be nonnegative");
  }
  const double total = n_t + d_t;
  if (total <= 0.0) {
    throw std::invalid_argument("aggression density undefined with no engagement");
  }
  return n_t / total;
}

double estimate_reach(double accounts, double engagement_rate, double posts_per_week) {
  if (accounts < 0.0 || engagement_rate < 0.0 || posts_per_week < 0.0) {
    throw std::invalid_argument("reach inputs must be nonnegative");
  }
  return accounts * engagement_rate * posts_per_week;
}

double weekly_to_daily(double weekly) {
  if (weekly < 0.0) throw std::invalid_argument("weekly reach must be nonnegative");
  return weekly / 7.0;
}

AggressionFit fit_aggression_model(const EngagementSeries &series) {
  if (series.size() < 2) {
    throw std::invalid_argument("fitting the aggression model needs at least 2 rows");
  }
  AggressionFit fit;
  fit.a_values.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const EngagementRow &row = series.rows()[i];
    if (row.n_t + row.d_t <= 0.0) {
      std::ostringstream msg;
      msg << "row " << i + 1 << " (" << row.period << ") has no engagement";
      throw std::invalid_argument(msg.str());
    }
    fit.a_values.push_back(aggression_density(row.n_t, row.d_t));
  }
  const double n = static_cast<double>(fit.a_values.size());
  double mean = 0.0;
  for (double a : fit.a_values) mean += a;
  mean /= n;
  double ss = 0.0;
  for (double a : fit.a_values) ss += (a - mean) * (a - mean);
  // Keep the mean inside the observed range despite rounding.
  const auto [lo, hi] = std::minmax_element(fit.a_values.begin(), fit.a_values.end());
  fit.model.mean = std::clamp(mean, *lo, *hi);
  fit.model.sd = std::sqrt(ss / (n - 1.0));
  fit.sd_population = std::sqrt(ss / n);
  return fit;
}

double sample_aggression(const AggressionModel &model, std::uint64_t seed) {
  model.validate();
  if (model.sd == 0.0) return model.mean;
  Engine engine(seed);
  const double draw = model.mean + model.sd * standard_normal(engine);
  return std::clamp(draw, 0.0, 1.0);
}

} // namespace lvsim
