#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "icrt/params.hpp"
#include "icrt/rng.hpp"

namespace icrt {

// One sample of mu = theta0^2 dx + sum theta_i delta_{X_i}, atoms sorted by
// position. When `horizon` is finite only atoms with X_i <= horizon are stored
// and queries beyond the horizon are rejected.
class MuRealization {
 public:
  MuRealization() = default;
  MuRealization(double drift, std::vector<double> positions, std::vector<double> weights,
                double horizon = std::numeric_limits<double>::infinity());

  double drift() const { return drift_; }
  double horizon() const { return horizon_; }
  std::size_t atoms() const { return pos_.size(); }
  const std::vector<double>& positions() const { return pos_; }
  const std::vector<double>& weights() const { return w_; }
  // prefix()[k] = sum of the first k atom weights in position order.
  const std::vector<double>& prefix() const { return prefix_; }

  // Number of atoms with X <= l.
  std::size_t atoms_upto(double l) const;
  // Number of atoms with X < l.
  std::size_t atoms_below(double l) const;
  // mu[0, l], atoms at l included.
  double mass(double l) const;
  // mu(a, b] for a <= b.
  double mass_between(double a, double b) const;
  bool empty() const { return drift_ == 0.0 && pos_.empty(); }

 private:
  void check_range(double l) const;

  double drift_ = 0.0;
  std::vector<double> pos_, w_, prefix_{0.0};
  double horizon_ = std::numeric_limits<double>::infinity();
};

// X_i ~ Exp(theta_i) independently. With a finite horizon the atoms beyond it
// are skipped exactly without being drawn.
MuRealization sample_mu(const ThetaRealization& theta, Rng& rng,
                        double horizon = std::numeric_limits<double>::infinity());

double mu_mass(const MuRealization& mu, double l);

// E mu[0,l] = theta0^2 l + sum theta_i (1 - exp(-theta_i l)).
double expected_mass(const ThetaFamily& family, double l);
// Same quantity evaluated at l = exp(log_l); stays finite when l overflows.
double expected_mass_log(const ThetaFamily& family, double log_l);

// psi(l) = theta0^2 l^2 / 2 + sum (exp(-l theta_i) - 1 + l theta_i).
double psi(const ThetaFamily& family, double l);
// psi(l) / l at l = exp(log_l).
double psi_over_l_log(const ThetaFamily& family, double log_l);

// X_m: the length with E mu[0, X_m] = m. Throws std::runtime_error when the
// root cannot be bracketed or the result overflows a double.
double inverse_expected_mass(const ThetaFamily& family, double m);
double log_inverse_expected_mass(const ThetaFamily& family, double m);

enum class Verdict { compact, noncompact, inconclusive };

struct CriterionThresholds {
  int window = 5;
  double q = 0.9;
  double floor_ratio = 0.99;
};

struct CriterionVerdict {
  Verdict verdict = Verdict::inconclusive;
  int N = 0;
  double partial_sum = 0.0;                 // s_N
  std::vector<double> log_scale;            // log X_{2^n}, n = 1..N
  std::vector<double> terms;                // log X_{2^n} / 2^n
  std::vector<double> ratios;               // terms[n+1] / terms[n] over the window
  double max_ratio = 0.0, min_ratio = 0.0;
  // Quadrature over [X_2, X_{2^N}] and the dyadic sandwich of the first.
  double integral_mass = 0.0;               // int dl / (l E mu[0,l])
  double integral_psi = 0.0;                // int dl / psi(l)
  double dyadic_lower = 0.0, dyadic_upper = 0.0;
  bool quadrature_consistent = false;
  bool sandwich_ok = false;                 // psi <= l E <= 2 psi on the grid
};

CriterionVerdict compactness_criterion(const ThetaFamily& family, int N,
                                       const CriterionThresholds& th = {});

const char* to_string(Verdict v);

}  // namespace icrt
