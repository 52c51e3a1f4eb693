#ifndef LVSIM_STATS_HPP_
#define LVSIM_STATS_HPP_

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace lvsim::stats {

/// Simple linear regression y = beta0 + beta1 x with two-sided t-tests of
/// each coefficient against zero on n - 2 degrees of freedom.
struct OlsFit {
  double beta0 = 0.0;
  double beta1 = 0.0;
  std::vector<double> residuals;
  double r_squared = 0.0;
  std::array<double, 2> se_beta{};
  std::array<double, 2> t_stats{};
  std::array<double, 2> p_values{};
  double residual_sd = 0.0;
  std::size_t n = 0;
};

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool reject_at_05 = false;
};

struct KsResult : TestResult {
  double mean = 0.0;
  double sd = 0.0;
};

double normal_cdf(double x, double mu = 0.0, double sigma = 1.0);

/// Upper tail of the chi-squared distribution with `df` degrees of freedom.
double chi_squared_sf(double x, unsigned df);

/// Upper tail of the limiting Kolmogorov distribution, P(K > x).
double kolmogorov_sf(double x);

/// Two-sided tail 2 P(T > |t|) of Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

OlsFit ols_fit(std::span<const double> x, std::span<const double> y);

/*
 * Koenker's studentized Breusch-Pagan test with one regressor: the squared
 * residuals are regressed on x and LM = n R^2 is referred to chi-squared(1).
 * Residuals whose squares do not vary give LM = 0, p = 1.
 */
TestResult breusch_pagan(std::span<const double> x, std::span<const double> residuals);

/// sup |F_n - F| of a sample against a fully specified CDF.
double ks_statistic(std::span<const double> sample,
                    const std::function<double(double)> &cdf);

/*
 * One-sample Kolmogorov-Smirnov test against a normal whose mean and sd
 * (n - 1 denominator) are estimated from the same sample. The p-value comes
 * from the asymptotic Kolmogorov distribution at sqrt(n) D with no
 * Lilliefors correction, so it overstates the evidence for normality.
 */
KsResult ks_test_normal(std::span<const double> sample);

} // namespace lvsim::stats

#endif // LVSIM_STATS_HPP_
