#include "icrt/measure.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "profile_series.hpp"

namespace icrt {

MuRealization::MuRealization(double drift, std::vector<double> positions, std::vector<double> weights,
                             double horizon)
    : drift_(drift), horizon_(horizon) {
  if (!(drift >= 0.0)) throw std::invalid_argument("mu: negative drift");
  if (positions.size() != weights.size()) throw std::invalid_argument("mu: size mismatch");
  std::vector<std::size_t> order(positions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return positions[a] < positions[b]; });
  pos_.reserve(order.size());
  w_.reserve(order.size());
  prefix_.reserve(order.size() + 1);
  for (std::size_t k : order) {
    if (!(positions[k] >= 0.0) || !(weights[k] > 0.0)) throw std::invalid_argument("mu: bad atom");
    pos_.push_back(positions[k]);
    w_.push_back(weights[k]);
    prefix_.push_back(prefix_.back() + weights[k]);
  }
}

void MuRealization::check_range(double l) const {
  if (!(l >= 0.0)) throw std::invalid_argument("mu: negative length");
  if (l > horizon_) throw std::out_of_range("mu: query beyond sampled horizon");
}

std::size_t MuRealization::atoms_upto(double l) const {
  return static_cast<std::size_t>(std::upper_bound(pos_.begin(), pos_.end(), l) - pos_.begin());
}

std::size_t MuRealization::atoms_below(double l) const {
  return static_cast<std::size_t>(std::lower_bound(pos_.begin(), pos_.end(), l) - pos_.begin());
}

double MuRealization::mass(double l) const {
  check_range(l);
  return drift_ * l + prefix_[atoms_upto(l)];
}

double MuRealization::mass_between(double a, double b) const {
  check_range(b);
  if (a > b) throw std::invalid_argument("mu: reversed interval");
  return drift_ * (b - a) + (prefix_[atoms_upto(b)] - prefix_[atoms_upto(a)]);
}

MuRealization sample_mu(const ThetaRealization& theta, Rng& rng, double horizon) {
  const std::size_t K = theta.weights.size();
  std::vector<double> pos, w;
  if (!std::isfinite(horizon)) {
    pos.resize(K);
    for (std::size_t i = 0; i < K; ++i) pos[i] = rng.exponential(theta.weights[i]);
    w = theta.weights;
    return MuRealization(theta.drift(), std::move(pos), std::move(w));
  }
  if (!(horizon >= 0.0)) throw std::invalid_argument("sample_mu: negative horizon");
  // P(X_i <= L) decreases with i. Large probabilities are drawn one by one;
  // the rest in blocks, skipping geometrically at the block's top probability
  // and accepting with the ratio of probabilities.
  auto accept_prob = [&](std::size_t i) { return -std::expm1(-theta.weights[i] * horizon); };
  auto conditional = [&](std::size_t i, double p) {
    return -std::log1p(-rng.uniform() * p) / theta.weights[i];
  };
  std::size_t i = 0;
  while (i < K) {
    const double p_top = accept_prob(i);
    if (p_top <= 0.0) break;
    if (p_top > 0.25) {
      const double x = rng.exponential(theta.weights[i]);
      if (x <= horizon) {
        pos.push_back(x);
        w.push_back(theta.weights[i]);
      }
      ++i;
      continue;
    }
    const std::size_t end = std::min(K, 2 * i + 2);
    const double log_q = std::log1p(-p_top);
    std::size_t k = i;
    while (true) {
      const double skip = std::floor(std::log1p(-rng.uniform()) / log_q);
      if (skip >= static_cast<double>(end - k)) break;
      k += static_cast<std::size_t>(skip);
      const double p = accept_prob(k);
      if (rng.uniform() * p_top < p) {
        const double x = std::min(conditional(k, p), horizon);
        pos.push_back(x);
        w.push_back(theta.weights[k]);
      }
      ++k;
      if (k >= end) break;
    }
    i = end;
  }
  return MuRealization(theta.drift(), std::move(pos), std::move(w), horizon);
}

double mu_mass(const MuRealization& mu, double l) { return mu.mass(l); }

double expected_mass_log(const ThetaFamily& family, double log_l) {
  const double d = family.drift();
  const double lin = d == 0.0 ? 0.0 : d * std::exp(log_l);
  return lin + detail::atom_expected_mass(family, log_l);
}

double expected_mass(const ThetaFamily& family, double l) {
  if (!(l >= 0.0)) throw std::invalid_argument("expected_mass: negative length");
  return family.drift() * l + detail::atom_expected_mass(family, std::log(l));
}

double psi_over_l_log(const ThetaFamily& family, double log_l) {
  const double d = family.drift();
  const double lin = d == 0.0 ? 0.0 : 0.5 * d * std::exp(log_l);
  return lin + detail::atom_psi_over_l(family, log_l);
}

double psi(const ThetaFamily& family, double l) {
  if (!(l >= 0.0)) throw std::invalid_argument("psi: negative length");
  if (l == 0.0) return 0.0;
  return 0.5 * family.drift() * l * l + l * detail::atom_psi_over_l(family, std::log(l));
}

double log_inverse_expected_mass(const ThetaFamily& family, double m) {
  if (!(m >= 0.0)) throw std::invalid_argument("inverse_expected_mass: negative mass");
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  auto f = [&](double u) { return expected_mass_log(family, u) - m; };
  // E mu[0,l] <= l, so the root is at least log m.
  double lo = std::log(m);
  double flo = f(lo);
  if (flo >= 0.0) return lo;
  double step = 1.0, hi = lo + step, fhi = f(hi);
  int iter = 0;
  while (fhi < 0.0) {
    if (++iter > 200) throw std::runtime_error("inverse_expected_mass: root not bracketed");
    lo = hi;
    flo = fhi;
    step *= 2.0;
    hi = lo + step;
    fhi = f(hi);
  }
  std::uintmax_t max_iter = 200;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                  boost::math::tools::eps_tolerance<double>(52), max_iter);
  const double u = std::abs(f(a)) <= std::abs(f(b)) ? a : b;
  if (std::abs(f(u)) > 1e-8 * std::max(1.0, m))
    throw std::runtime_error("inverse_expected_mass: tolerance not reached");
  return u;
}

double inverse_expected_mass(const ThetaFamily& family, double m) {
  if (family.kind == Family::brownian) {
    if (!(m >= 0.0)) throw std::invalid_argument("inverse_expected_mass: negative mass");
    return m;
  }
  const double x = std::exp(log_inverse_expected_mass(family, m));
  if (!std::isfinite(x)) throw std::runtime_error("inverse_expected_mass: result overflows");
  return x;
}

CriterionVerdict compactness_criterion(const ThetaFamily& family, int N, const CriterionThresholds& th) {
  if (N < 8) throw std::invalid_argument("compactness_criterion: N must be >= 8");
  if (th.window < 2 || th.window > N) throw std::invalid_argument("compactness_criterion: bad window");
  CriterionVerdict v;
  v.N = N;
  try {
    for (int n = 1; n <= N; ++n) {
      const double m = std::ldexp(1.0, n);
      const double L = family.kind == Family::brownian ? n * std::log(2.0)
                                                       : log_inverse_expected_mass(family, m);
      v.log_scale.push_back(L);
      v.terms.push_back(L / m);
      v.partial_sum += L / m;
    }
  } catch (const std::runtime_error&) {
    v.verdict = Verdict::inconclusive;
    return v;
  }

  bool positive = true;
  v.max_ratio = -std::numeric_limits<double>::infinity();
  v.min_ratio = std::numeric_limits<double>::infinity();
  for (int n = N - th.window; n < N; ++n) {
    if (!(v.terms[n] > 0.0)) positive = false;
    if (n + 1 < N) {
      const double r = v.terms[n + 1] / v.terms[n];
      v.ratios.push_back(r);
      v.max_ratio = std::max(v.max_ratio, r);
      v.min_ratio = std::min(v.min_ratio, r);
    }
  }
  if (positive && v.max_ratio <= th.q)
    v.verdict = Verdict::compact;
  else if (positive && v.min_ratio >= th.floor_ratio)
    v.verdict = Verdict::noncompact;
  else
    v.verdict = Verdict::inconclusive;

  using boost::math::quadrature::gauss_kronrod;
  auto inv_mass = [&](double u) { return 1.0 / expected_mass_log(family, u); };
  auto inv_psi = [&](double u) { return 1.0 / psi_over_l_log(family, u); };
  bool sandwich = true;
  auto check_sandwich = [&](double u) {
    const double e = expected_mass_log(family, u), p = psi_over_l_log(family, u);
    const double tol = 1e-12 * e;
    if (p > e + tol || e > 2.0 * p + tol) sandwich = false;
  };
  for (int k = 0; k + 1 < N; ++k) {
    const double a = v.log_scale[k], b = v.log_scale[k + 1];
    v.integral_mass += gauss_kronrod<double, 31>::integrate(inv_mass, a, b, 12, 1e-12);
    v.integral_psi += gauss_kronrod<double, 31>::integrate(inv_psi, a, b, 12, 1e-12);
    v.dyadic_lower += (b - a) / std::ldexp(1.0, k + 2);
    v.dyadic_upper += (b - a) / std::ldexp(1.0, k + 1);
    check_sandwich(a);
    check_sandwich(0.5 * (a + b));
  }
  check_sandwich(v.log_scale.back());
  const double rel = 1e-8;
  v.quadrature_consistent = v.integral_mass >= v.dyadic_lower * (1 - rel) &&
                            v.integral_mass <= v.dyadic_upper * (1 + rel) &&
                            v.integral_mass >= 0.5 * v.integral_psi * (1 - rel) &&
                            v.integral_mass <= v.integral_psi * (1 + rel);
  v.sandwich_ok = sandwich;
  return v;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::compact: return "compact";
    case Verdict::noncompact: return "noncompact";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace icrt
