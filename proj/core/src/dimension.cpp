#include "icrt/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "icrt/massmeasure.hpp"
#include "icrt/stats.hpp"

namespace icrt {

DimensionReport theoretical_dimensions(const ThetaFamily& family, int j_max, const DimensionThresholds& th) {
  if (j_max < 16) throw std::invalid_argument("theoretical_dimensions: j_max must be >= 16");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  DimensionReport r;
  std::vector<int> usable;
  for (int j = 1; j <= j_max; ++j) {
    const double log_l = j * std::log(2.0);
    const double log_e = std::log(expected_mass_log(family, log_l));
    if (log_e > 0.0) {
      r.ratio.push_back(log_l / log_e);
      r.loglog_ratio.push_back(std::log(log_l) / log_e);
      usable.push_back(j);
    } else {
      r.ratio.push_back(nan);
      r.loglog_ratio.push_back(nan);
    }
  }
  if (usable.size() < 6) throw std::runtime_error("theoretical_dimensions: expected mass <= 1 on the grid");

  const std::size_t tail = std::max<std::size_t>(3, usable.size() / 3);
  std::vector<double> x, h;
  bool decreasing = true;
  for (std::size_t k = usable.size() - tail; k < usable.size(); ++k) {
    const int j = usable[k];
    x.push_back(1.0 / j);
    h.push_back(1.0 / r.ratio[j - 1]);
    if (k > usable.size() - tail && !(r.loglog_ratio[j - 1] < r.loglog_ratio[usable[k - 1] - 1])) decreasing = false;
  }
  r.j_first = usable[usable.size() - tail];
  r.j_last = usable.back();
  // log E / log l is asymptotically affine in 1/j for regularly varying E
  const auto fit = stats::linear_fit(x, h);
  r.reciprocal_limit = fit.intercept;
  const auto [rmin, rmax] = std::minmax_element(fit.residuals.begin(), fit.residuals.end());
  const double lo = fit.intercept + *rmin, hi = fit.intercept + *rmax;
  // a slowly varying E makes the ratio decay like log(j)/j, which an affine
  // fit in 1/j cannot see
  std::vector<double> ones(x.size(), 1.0), logs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) logs[i] = -std::log(x[i]) * x[i];
  r.decay_limit = stats::least_squares({ones, x, logs}, h)[0];
  r.unbounded = std::min(fit.intercept, r.decay_limit) < th.unbounded_below;
  const double inf = std::numeric_limits<double>::infinity();
  r.upper = r.unbounded || lo <= 0.0 ? inf : 1.0 + 1.0 / lo;
  r.lower = r.unbounded || hi <= 0.0 ? inf : 1.0 + 1.0 / hi;
  r.hausdorff_applicable = decreasing && r.loglog_ratio[r.j_last - 1] < th.applicability_max;

  switch (family.kind) {
    case Family::brownian:
      r.symbolic_upper = r.symbolic_lower = 2.0;
      r.symbolic_applicable = true;
      break;
    case Family::power_law:
      r.symbolic_upper = r.symbolic_lower = 1.0 + family.alpha / (1.0 - family.alpha);
      r.symbolic_applicable = true;
      break;
    case Family::harmonic:
      r.symbolic_upper = inf;
      r.symbolic_applicable = false;
      break;
    case Family::explicit_weights:
      if (family.theta0 > 0.0) {
        // finitely many atoms: E mu[0,l] ~ theta0^2 l
        r.symbolic_upper = r.symbolic_lower = 2.0;
        r.symbolic_applicable = true;
      }
      break;
  }
  return r;
}

std::vector<double> default_eps_grid(double diameter, std::size_t points) {
  if (!(diameter > 0.0) || points < 2) throw std::invalid_argument("default_eps_grid: bad arguments");
  std::vector<double> g(points);
  const double hi = diameter / 8.0, lo = diameter / 200.0;
  for (std::size_t i = 0; i < points; ++i)
    g[i] = hi * std::pow(lo / hi, static_cast<double>(i) / (points - 1));
  return g;
}

namespace {

double slope_of(const std::vector<double>& x, const std::vector<double>& y, std::size_t from, std::size_t to) {
  std::vector<double> xs(x.begin() + from, x.begin() + to), ys(y.begin() + from, y.begin() + to);
  return stats::linear_fit(xs, ys).slope;
}

void check_grid(const std::vector<double>& eps, double diameter) {
  if (eps.size() < 6) throw std::invalid_argument("eps grid needs at least 6 points");
  for (double e : eps)
    if (!(e > 0.0)) throw std::invalid_argument("eps grid must be positive");
  const double ratio = eps[1] / eps[0];
  for (std::size_t i = 1; i < eps.size(); ++i)
    if (std::abs(eps[i] / eps[i - 1] - ratio) > 1e-6 * ratio) throw std::invalid_argument("eps grid must be geometric");
  const double tol = 1e-9 * diameter;
  for (double e : eps)
    if (e < diameter / 200.0 - tol || e > diameter / 8.0 + tol)
      throw std::invalid_argument("eps grid must lie within [diameter/200, diameter/8]");
}

}  // namespace

BoxRegression minkowski_regression(const IcrtTree& tree, double l, const std::vector<double>& eps_grid) {
  check_grid(eps_grid, tree.diameter(l));
  BoxRegression r;
  r.eps = eps_grid;
  std::vector<double> x, y;
  for (double e : eps_grid) {
    const std::size_t n = ball_cover_count(tree, l, e);
    r.counts.push_back(n);
    if (n >= 2) {
      x.push_back(-std::log(e));
      y.push_back(std::log(static_cast<double>(n)));
    }
  }
  r.used = x.size();
  if (r.used < 3) throw std::runtime_error("minkowski_regression: fewer than 3 usable grid points");
  // order by scale so the half windows are the coarse and fine ends
  std::vector<std::size_t> idx(x.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> xs, ys;
  for (std::size_t i : idx) {
    xs.push_back(x[i]);
    ys.push_back(y[i]);
  }
  r.slope = stats::linear_fit(xs, ys).slope;
  const std::size_t half = (xs.size() + 1) / 2;
  const double a = slope_of(xs, ys, 0, half), b = slope_of(xs, ys, xs.size() - half, xs.size());
  r.band_lo = std::min({a, b, r.slope});
  r.band_hi = std::max({a, b, r.slope});
  return r;
}

LocalDimension local_dimension(const IcrtTree& tree, const MuRealization& mu, double l, std::size_t n_points,
                               const std::vector<double>& eps_grid, Rng& rng) {
  if (n_points < 1) throw std::invalid_argument("local_dimension: n_points must be >= 1");
  if (eps_grid.size() < 3) throw std::invalid_argument("local_dimension: need at least 3 radii");
  EmpiricalMeasure p(MeasureKind::mu_normalized, tree, mu, l);
  LocalDimension out;
  std::vector<double> x;
  for (double e : eps_grid) x.push_back(std::log(e));
  for (std::size_t i = 0; i < n_points; ++i) {
    const TreePoint c = p.sample_point(rng);
    out.coords.push_back(c.coord);
    std::vector<double> y;
    bool ok = true;
    for (double e : eps_grid) {
      const double m = p.ball_mass(c, e);
      if (!(m > 0.0)) ok = false;
      y.push_back(std::log(m));
    }
    if (ok && *std::max_element(y.begin(), y.end()) == *std::min_element(y.begin(), y.end()) &&
        y.front() >= 0.0)
      ok = false;  // every ball is the whole space
    if (!ok) {
      ++out.skipped;
      continue;
    }
    out.slopes.push_back(stats::linear_fit(x, y).slope);
  }
  if (!out.slopes.empty()) {
    out.median = stats::median(out.slopes);
    out.q25 = stats::quantile(out.slopes, 0.25);
    out.q75 = stats::quantile(out.slopes, 0.75);
  }
  return out;
}

}  // namespace icrt
