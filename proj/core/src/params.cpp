#include "icrt/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace icrt {

namespace {

constexpr std::size_t kZetaDirect = 64;

// Euler-Maclaurin tail sum_{i >= K} i^-s, K >= kZetaDirect.
double zeta_em(double s, double K) {
  const double ks = std::pow(K, -s);
  double t = K * ks / (s - 1.0) + 0.5 * ks;
  t += s * ks / (12.0 * K);
  t -= s * (s + 1.0) * (s + 2.0) * ks / (720.0 * K * K * K);
  t += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * ks / (30240.0 * std::pow(K, 5));
  return t;
}

}  // namespace

double zeta_tail(double s, std::size_t start) {
  if (!(s > 1.0)) throw std::invalid_argument("zeta_tail: exponent must exceed 1");
  if (start == 0) throw std::invalid_argument("zeta_tail: start must be >= 1");
  // smallest terms first
  double sum = 0.0;
  if (start < kZetaDirect) {
    for (std::size_t i = kZetaDirect - 1; i >= start; --i) sum += std::pow(static_cast<double>(i), -s);
    return zeta_em(s, static_cast<double>(kZetaDirect)) + sum;
  }
  return zeta_em(s, static_cast<double>(start));
}

ThetaFamily ThetaFamily::brownian() { return ThetaFamily{}; }

ThetaFamily ThetaFamily::power_law(double alpha) {
  if (!(alpha > 0.5 && alpha < 1.0))
    throw std::invalid_argument("power_law: alpha must lie in (1/2, 1)");
  ThetaFamily f;
  f.kind = Family::power_law;
  f.alpha = alpha;
  f.theta0 = 0.0;
  return f;
}

ThetaFamily ThetaFamily::harmonic() {
  ThetaFamily f;
  f.kind = Family::harmonic;
  f.alpha = 1.0;
  f.theta0 = 0.0;
  return f;
}

ThetaFamily ThetaFamily::explicit_weights(double theta0, std::vector<double> weights) {
  if (!(theta0 >= 0.0) || !std::isfinite(theta0))
    throw std::invalid_argument("explicit: theta0 must be finite and >= 0");
  double sq = theta0 * theta0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw std::invalid_argument("explicit: weight " + std::to_string(i + 1) + " is not positive");
    if (i > 0 && weights[i] > weights[i - 1])
      throw std::invalid_argument("explicit: weights not sorted at index " + std::to_string(i + 1));
    sq += weights[i] * weights[i];
  }
  if (std::abs(sq - 1.0) > 1e-12)
    throw std::invalid_argument("explicit: square mass " + std::to_string(sq) + " is not 1");
  ThetaFamily f;
  f.kind = Family::explicit_weights;
  f.theta0 = theta0;
  f.weights = std::move(weights);
  return f;
}

double ThetaFamily::drift() const {
  switch (kind) {
    case Family::brownian: return 1.0;
    case Family::explicit_weights: return theta0 * theta0;
    default: return 0.0;
  }
}

bool ThetaFamily::symbolic_atoms() const {
  return kind == Family::power_law || kind == Family::harmonic;
}

double ThetaFamily::exponent() const {
  if (kind == Family::harmonic) return 1.0;
  if (kind == Family::power_law) return alpha;
  throw std::logic_error("exponent: family has no symbolic atoms");
}

double ThetaFamily::normalization() const {
  if (kind == Family::harmonic) return std::sqrt(6.0) / std::numbers::pi;
  if (kind == Family::power_law) return 1.0 / std::sqrt(zeta_tail(2.0 * alpha, 1));
  throw std::logic_error("normalization: family has no symbolic atoms");
}

std::string ThetaFamily::name() const {
  switch (kind) {
    case Family::brownian: return "brownian";
    case Family::power_law: return "powerlaw";
    case Family::harmonic: return "harmonic";
    case Family::explicit_weights: return "explicit";
  }
  return "?";
}

ThetaRealization make_theta(const ThetaFamily& family, std::size_t K) {
  ThetaRealization t;
  switch (family.kind) {
    case Family::brownian:
      t.theta0 = 1.0;
      t.residual_linear_mass = TailKind::finite;
      break;
    case Family::explicit_weights: {
      t.theta0 = family.theta0;
      const std::size_t k = std::min(K, family.weights.size());
      t.weights.assign(family.weights.begin(), family.weights.begin() + static_cast<std::ptrdiff_t>(k));
      double rest = 0.0;
      for (std::size_t i = family.weights.size(); i-- > k;) rest += family.weights[i] * family.weights[i];
      t.residual_square_mass = rest;
      // a finite list cannot tell whether it truncates a divergent sequence
      t.residual_linear_mass = TailKind::unknown;
      break;
    }
    case Family::power_law:
    case Family::harmonic: {
      if (family.kind == Family::power_law) ThetaFamily::power_law(family.alpha);
      const double a = family.exponent();
      const double c = family.normalization();
      t.theta0 = 0.0;
      t.weights.resize(K);
      for (std::size_t i = 0; i < K; ++i) t.weights[i] = c * std::pow(static_cast<double>(i + 1), -a);
      t.residual_square_mass = c * c * zeta_tail(2.0 * a, K + 1);
      t.residual_linear_mass = TailKind::divergent;
      break;
    }
  }
  return t;
}

bool ValidationReport::ok() const {
  for (const auto& it : items)
    if (it.status != Status::pass) return false;
  return true;
}

Status ValidationReport::item(const std::string& name) const {
  for (const auto& it : items)
    if (it.name == name) return it.status;
  throw std::out_of_range("no validation item " + name);
}

ValidationReport validate(const ThetaRealization& theta, const ThetaFamily& family) {
  ValidationReport r;
  double sq = theta.theta0 * theta.theta0 + theta.residual_square_mass;
  bool positive = true, sorted = true;
  for (std::size_t i = 0; i < theta.weights.size(); ++i) {
    sq += theta.weights[i] * theta.weights[i];
    if (!(theta.weights[i] > 0.0)) positive = false;
    if (i > 0 && theta.weights[i] > theta.weights[i - 1]) sorted = false;
  }
  r.items.push_back({"square_mass", std::abs(sq - 1.0) <= 1e-9 ? Status::pass : Status::fail,
                     "theta0^2 + sum theta_i^2 + residual = " + std::to_string(sq)});
  r.items.push_back({"positive_weights", positive ? Status::pass : Status::fail, ""});
  r.items.push_back({"non_increasing", sorted ? Status::pass : Status::fail, ""});

  ValidationItem omega{"theta0_or_divergent", Status::pass, ""};
  if (theta.theta0 > 0.0) {
    omega.detail = "theta0 > 0";
  } else if (family.symbolic_atoms()) {
    omega.detail = family.kind == Family::harmonic ? "sum c/i diverges"
                                                   : "sum c*i^-alpha diverges for alpha < 1";
  } else if (family.kind == Family::explicit_weights) {
    omega.status = Status::fail;
    omega.detail = "theta0 = 0 and the supplied weights have a finite sum; "
                   "divergence of any continuation is unknown";
  } else {
    omega.status = Status::fail;
    omega.detail = "theta0 = 0 and no divergent atom sequence";
  }
  r.items.push_back(omega);
  r.items.push_back({"linear_tail",
                     theta.residual_linear_mass == TailKind::unknown && theta.theta0 == 0.0
                         ? Status::unknown
                         : Status::pass,
                     to_string(theta.residual_linear_mass)});
  return r;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::unknown: return "unknown";
  }
  return "?";
}

const char* to_string(TailKind t) {
  switch (t) {
    case TailKind::finite: return "finite";
    case TailKind::divergent: return "divergent";
    case TailKind::unknown: return "unknown";
  }
  return "?";
}

}  // namespace icrt
