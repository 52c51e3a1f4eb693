#include "lvsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace lvsim::stats {

namespace {

double mean_of(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

void require_finite(std::span<const double> xs, const char *what) {
  for (double x : xs) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + " contains non-finite values");
    }
  }
}

TestResult make_result(double statistic, double p_value) {
  return {statistic, p_value, p_value < 0.05};
}

} // namespace

double normal_cdf(double x, double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("normal_cdf needs sigma > 0");
  return 0.5 * std::erfc(-(x - mu) / (sigma * std::numbers::sqrt2));
}

double chi_squared_sf(double x, unsigned df) {
  if (df == 0) throw std::domain_error("chi_squared_sf needs df >= 1");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

double kolmogorov_sf(double x) {
  if (std::isnan(x)) throw std::domain_error("kolmogorov_sf of NaN");
  if (x <= 0.0) return 1.0;
  if (x < 1.0) {
    // Jacobi theta form of the CDF, fast for small x.
    const double c = -std::numbers::pi * std::numbers::pi / (8.0 * x * x);
    double cdf = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(c * odd * odd);
      cdf += term;
      if (term < 1e-300 || term < 1e-17 * cdf) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / x;
    return 1.0 - cdf;
  }
  double sf = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sf += (k % 2 == 1 ? term : -term);
    if (term < 1e-300 || term < 1e-17 * sf) break;
  }
  return std::clamp(2.0 * sf, 0.0, 1.0);
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw std::domain_error("student t needs df > 0");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t dist(df);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

OlsFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
  if (x.size() < 3) throw std::invalid_argument("ols_fit needs at least 3 points");
  require_finite(x, "x");
  require_finite(y, "y");

  const std::size_t n = x.size();
  const double x_bar = mean_of(x);
  const double y_bar = mean_of(y);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - x_bar;
    const double dy = y[i] - y_bar;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("x is constant");

  OlsFit fit;
  fit.n = n;
  fit.beta1 = sxy / sxx;
  fit.beta0 = y_bar - fit.beta1 * x_bar;
  fit.residuals.resize(n);
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals[i] = y[i] - (fit.beta0 + fit.beta1 * x[i]);
    sse += fit.residuals[i] * fit.residuals[i];
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;

  const double df = static_cast<double>(n) - 2.0;
  const double s2 = sse / df;
  fit.residual_sd = std::sqrt(s2);
  fit.se_beta[0] = std::sqrt(s2 * (1.0 / static_cast<double>(n) + x_bar * x_bar / sxx));
  fit.se_beta[1] = std::sqrt(s2 / sxx);
  const std::array<double, 2> beta{fit.beta0, fit.beta1};
  for (std::size_t k = 0; k < 2; ++k) {
    if (fit.se_beta[k] > 0.0) {
      fit.t_stats[k] = beta[k] / fit.se_beta[k];
    } else {
      // Exact fit: any nonzero coefficient is infinitely significant.
      fit.t_stats[k] = beta[k] == 0.0 ? 0.0
                                      : std::copysign(std::numeric_limits<double>::infinity(),
                                                      beta[k]);
    }
    fit.p_values[k] = student_t_two_sided_p(fit.t_stats[k], df);
  }
  return fit;
}

TestResult breusch_pagan(std::span<const double> x, std::span<const double> residuals) {
  if (x.size() != residuals.size()) {
    throw std::invalid_argument("x and residuals differ in length");
  }
  if (x.size() < 4) throw std::invalid_argument("breusch_pagan needs at least 4 points");
  require_finite(x, "x");
  require_finite(residuals, "residuals");

  const std::size_t n = x.size();
  std::vector<double> squared(n);
  for (std::size_t i = 0; i < n; ++i) squared[i] = residuals[i] * residuals[i];

  const double x_bar = mean_of(x);
  const double e_bar = mean_of(squared);
  double sxx = 0.0;
  double sxe = 0.0;
  double see = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - x_bar;
    const double de = squared[i] - e_bar;
    sxx += dx * dx;
    sxe += dx * de;
    see += de * de;
  }
  if (sxx == 0.0) throw std::invalid_argument("x is constant");
  if (see == 0.0) return make_result(0.0, 1.0);

  // R^2 of a one-regressor fit is the squared correlation.
  const double r2 = std::clamp(sxe * sxe / (sxx * see), 0.0, 1.0);
  const double lm = static_cast<double>(n) * r2;
  return make_result(lm, chi_squared_sf(lm, 1));
}

double ks_statistic(std::span<const double> sample,
                    const std::function<double(double)> &cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double rank = static_cast<double>(i);
    d = std::max({d, (rank + 1.0) / n - f, f - rank / n});
  }
  return d;
}

KsResult ks_test_normal(std::span<const double> sample) {
  if (sample.size() < 5) throw std::invalid_argument("ks_test_normal needs n >= 5");
  require_finite(sample, "sample");
  const double n = static_cast<double>(sample.size());
  const double mu = mean_of(sample);
  double ss = 0.0;
  for (double x : sample) ss += (x - mu) * (x - mu);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0)) throw std::invalid_argument("sample has zero variance");

  const double d = ks_statistic(sample, [&](double x) { return normal_cdf((x - mu) / sd); });
  KsResult result;
  static_cast<TestResult &>(result) = make_result(d, kolmogorov_sf(std::sqrt(n) * d));
  result.mean = mu;
  result.sd = sd;
  return result;
}

} // namespace lvsim::stats
