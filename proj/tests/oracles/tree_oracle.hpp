#pragma once

// Literal replay of the stick-breaking distance recursion and grid
// brute-force versions of projection, truncation distance and covers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "icrt/rng.hpp"

namespace oracle {

struct Sticks {
  std::vector<double> y;  // y[0] = 0, then Y_1..Y_N
  std::vector<double> z;  // z[n] = glue point of segment n+1 (z[0] = 0 unused)
  std::size_t n() const { return y.size() - 1; }
};

inline Sticks make_sticks(const std::vector<double>& cuts, const std::vector<double>& glue) {
  Sticks s;
  s.y.push_back(0.0);
  s.y.insert(s.y.end(), cuts.begin(), cuts.end());
  s.z.push_back(0.0);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s.z.push_back(glue[i]);
  return s;
}

// d_n(a, b) for a, b in [0, y_n]: d_1 is |a - b| on [0, y_1]; d_n extends
// d_{n-1} to (y_{n-1}, y_n] glued at z_{n-1}.
inline double d_rec(const Sticks& s, std::size_t n, double a, double b) {
  if (n <= 1) return std::abs(a - b);
  const double lo = s.y[n - 1];
  const bool an = a > lo, bn = b > lo;
  if (!an && !bn) return d_rec(s, n - 1, a, b);
  if (an && bn) return std::abs(a - b);
  if (an) std::swap(a, b);
  return d_rec(s, n - 1, a, s.z[n - 1]) + (b - lo);
}

inline double distance(const Sticks& s, double a, double b) { return d_rec(s, s.n(), a, b); }

// Grid made of all cuts and glue points up to `top`, the extra points, and
// `per` uniformly spaced points per segment.
inline std::vector<double> grid(const Sticks& s, double top, std::size_t per, std::vector<double> extra = {}) {
  std::vector<double> g{0.0};
  for (std::size_t n = 1; n <= s.n(); ++n) {
    // glue points of later segments can fall inside [0, top]
    if (s.z[n - 1] <= top) g.push_back(s.z[n - 1]);
    if (s.y[n - 1] >= top) continue;
    const double hi = std::min(s.y[n], top);
    for (std::size_t k = 1; k <= per; ++k) g.push_back(s.y[n - 1] + (hi - s.y[n - 1]) * k / per);
    g.push_back(hi);
  }
  for (double e : extra)
    if (e <= top) g.push_back(e);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

// d(x, T_l) as a minimum over grid points of T_l.
inline double distance_to_truncation(const Sticks& s, double x, const std::vector<double>& g_l) {
  double best = std::numeric_limits<double>::infinity();
  for (double g : g_l) best = std::min(best, distance(s, x, g));
  return best;
}

inline double hausdorff(const Sticks& s, double l1, double l2, std::size_t per) {
  const auto g1 = grid(s, l1, per, {l1});
  const auto g2 = grid(s, l2, per, {l2});
  double worst = 0.0;
  for (double x : g2) worst = std::max(worst, distance_to_truncation(s, x, g1));
  return worst;
}

// Random tree with n segments: lengths uniform in (0.05, 1.05], glue points
// uniform on [0, Y_i] with occasional exact hits on a cut, 0 or Y_i.
inline Sticks random_sticks(icrt::Rng& rng, std::size_t n, std::vector<double>* cuts = nullptr,
                            std::vector<double>* glue = nullptr) {
  std::vector<double> y, z;
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    t += 0.05 + rng.uniform();
    y.push_back(t);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    if (u < 0.1)
      z.push_back(y[rng.below(i + 1)]);
    else if (u < 0.15)
      z.push_back(0.0);
    else
      z.push_back(rng.uniform() * y[i]);
  }
  if (cuts) *cuts = y;
  if (glue) *glue = z;
  return make_sticks(y, z);
}

}  // namespace oracle
