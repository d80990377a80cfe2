#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace icrt::stats {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Asymptotic Kolmogorov p-value with the small-sample correction
// lambda = (sqrt(n) + 0.12 + 0.11/sqrt(n)) * D.
double ks_pvalue(double d, double n_eff);
KsResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

double normal_quantile(double p);
// Upper one-sided band for an empirical frequency with true probability p.
double binomial_upper(double p, std::size_t n, double alpha);

double mean(const std::vector<double>& x);
double variance(const std::vector<double>& x);  // unbiased
// Linear interpolation quantile of a copy of x.
double quantile(std::vector<double> x, double q);
double median(std::vector<double> x);

struct LinearFit {
  double slope = 0.0, intercept = 0.0;
  std::vector<double> residuals;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Ordinary least squares y ~ sum_k beta_k * columns[k]; returns beta.
std::vector<double> least_squares(const std::vector<std::vector<double>>& columns, const std::vector<double>& y);

}  // namespace icrt::stats
