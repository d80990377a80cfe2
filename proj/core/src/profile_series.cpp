#include "profile_series.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>

namespace icrt::detail {

namespace {

// Terms i < kDirect are summed directly; the rest by Euler-Maclaurin with a
// closed-form integral.
constexpr int kDirect = 1024;

double scaled(double log_theta, double log_l) {
  if (log_l == -std::numeric_limits<double>::infinity()) return 0.0;
  return std::exp(log_theta + log_l);
}

double one_minus_exp(double x) { return -std::expm1(-x); }

// (1 - e^-x - x e^-x) / x
double lift(double x) {
  if (x < 1e-4) return x * (0.5 - x * (1.0 / 3.0 - x / 8.0));
  if (!std::isfinite(x)) return 0.0;
  return (one_minus_exp(x) - x * std::exp(-x)) / x;
}

// S(U) = U^(beta-1) * int_0^U u^-beta (1 - e^-u) du, U = exp(log_u).
double tail_integral(double beta, double log_u) {
  if (log_u == -std::numeric_limits<double>::infinity()) return 0.0;
  const double u = std::exp(log_u);
  if (u <= 2.0) {
    double sum = 0.0, pw = 1.0;
    for (int k = 1; k < 60; ++k) {
      pw *= u / k;
      const double term = pw / (k + 1.0 - beta);
      sum += (k % 2 == 1) ? term : -term;
      if (pw < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  if (beta == 1.0) {
    const double e1 = u < 700.0 ? boost::math::expint(1, u) : 0.0;
    return std::numbers::egamma + log_u + e1;
  }
  const double a = 2.0 - beta;
  const double lower = boost::math::tgamma_lower(a, u);
  return (std::exp((beta - 1.0) * log_u) * lower - one_minus_exp(u)) / (beta - 1.0);
}

template <class Term, class Tail>
double symbolic_sum(const ThetaFamily& f, double log_l, Term term, Tail tail) {
  const double alpha = f.exponent();
  const double log_c = std::log(f.normalization());
  double sum = 0.0;
  for (int i = kDirect - 1; i >= 1; --i) {
    const double log_theta = log_c - alpha * std::log(static_cast<double>(i));
    sum += term(std::exp(log_theta), scaled(log_theta, log_l)).first;
  }
  const double log_theta_k = log_c - alpha * std::log(static_cast<double>(kDirect));
  const double theta_k = std::exp(log_theta_k);
  const double x = scaled(log_theta_k, log_l);
  const auto [fk, dk] = term(theta_k, x);
  // d theta / di at i = kDirect
  const double dtheta = -alpha * theta_k / kDirect;
  return sum + tail(1.0 / alpha, theta_k, log_theta_k + log_l, x) + 0.5 * fk - dtheta * dk / 12.0;
}

}  // namespace

double phi(double x) {
  if (x < 1e-4) return x * x * (0.5 - x * (1.0 / 6.0 - x / 24.0));
  return std::expm1(-x) + x;
}

double phi_over_x(double x) {
  if (x < 1e-4) return x * (0.5 - x * (1.0 / 6.0 - x / 24.0));
  if (!std::isfinite(x)) return 1.0;
  return 1.0 - one_minus_exp(x) / x;
}

double atom_expected_mass(const ThetaFamily& f, double log_l) {
  if (f.kind == Family::brownian) return 0.0;
  if (f.kind == Family::explicit_weights) {
    double sum = 0.0;
    for (auto it = f.weights.rbegin(); it != f.weights.rend(); ++it)
      sum += *it * one_minus_exp(scaled(std::log(*it), log_l));
    return sum;
  }
  // term value and the factor multiplying theta'(i) in its derivative
  auto term = [](double theta, double x) {
    const double xe = std::isfinite(x) ? x * std::exp(-x) : 0.0;
    return std::pair{theta * one_minus_exp(x), one_minus_exp(x) + xe};
  };
  auto tail = [](double beta, double theta_k, double log_u, double) {
    return beta * kDirect * theta_k * tail_integral(beta, log_u);
  };
  return symbolic_sum(f, log_l, term, tail);
}

double atom_psi_over_l(const ThetaFamily& f, double log_l) {
  if (f.kind == Family::brownian) return 0.0;
  if (f.kind == Family::explicit_weights) {
    double sum = 0.0;
    for (auto it = f.weights.rbegin(); it != f.weights.rend(); ++it)
      sum += *it * phi_over_x(scaled(std::log(*it), log_l));
    return sum;
  }
  auto term = [](double theta, double x) {
    return std::pair{theta * phi_over_x(x), phi_over_x(x) + lift(x)};
  };
  auto tail = [](double beta, double theta_k, double log_u, double u) {
    return kDirect * theta_k * (tail_integral(beta, log_u) - phi_over_x(u));
  };
  return symbolic_sum(f, log_l, term, tail);
}

}  // namespace icrt::detail
