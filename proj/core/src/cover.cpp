#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "icrt/rtree.hpp"

namespace icrt {

namespace {

// Greedy state of a processed subtree seen from its attachment point: either
// some points are uncovered, the farthest at distance `reach`, or everything
// is covered and the coverage extends `reach` beyond the point.
struct State {
  bool covered = false;
  double reach = 0.0;
};

State merge(State a, State b) {
  const double unc = std::max(a.covered ? -1.0 : a.reach, b.covered ? -1.0 : b.reach);
  const double cov = std::max(a.covered ? a.reach : -1.0, b.covered ? b.reach : -1.0);
  if (unc < 0.0) return {true, cov};
  if (cov >= unc) return {true, cov};
  return {false, unc};
}

// Move the state up an edge of length w, placing centers as late as possible.
State walk(State s, double w, double r, std::size_t& centers) {
  while (true) {
    if (s.covered) {
      if (w <= s.reach) return {true, s.reach - w};
      w -= s.reach;
      s = {false, 0.0};
      continue;
    }
    if (s.reach + w <= r) return {false, s.reach + w};
    ++centers;
    const double span = 2.0 * r - s.reach;  // covered length above the current point
    if (span >= w) return {true, span - w};
    w -= span;
    s = {false, 0.0};
  }
}

}  // namespace

std::size_t ball_cover_count(const IcrtTree& tree, double l, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("ball_cover_count: eps must be positive");
  if (!(l >= 0.0) || l > tree.extent()) throw std::out_of_range("ball_cover_count: l outside the tree");
  if (tree.segments() == 0) return 1;
  const std::size_t s = tree.segment_of(l);
  std::vector<State> at_attach(s + 1);
  std::size_t centers = 0;
  for (std::size_t n = s; n >= 1; --n) {
    const double bottom = tree.cut(n - 1);
    double pos = std::min(tree.cut(n), l);
    State st{false, 0.0};
    auto kids = tree.children(n);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      const std::size_t c = *it;
      if (c > s) continue;
      const double z = tree.attach(c);
      st = walk(st, pos - z, eps, centers);
      pos = z;
      st = merge(st, at_attach[c]);
    }
    st = walk(st, pos - bottom, eps, centers);
    at_attach[n] = st;
  }
  if (!at_attach[1].covered) ++centers;
  return centers;
}

std::size_t packing_count(const IcrtTree& tree, double l, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("packing_count: delta must be positive");
  if (!(l >= 0.0) || l > tree.extent()) throw std::out_of_range("packing_count: l outside the tree");
  if (tree.segments() == 0) return 1;
  const std::size_t s = tree.segment_of(l);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> chosen(s + 1);
  std::size_t count = 0;
  for (std::size_t n = 1; n <= s; ++n) {
    const double bottom = tree.cut(n - 1);
    const double top = std::min(tree.cut(n), l);
    // distance from the attachment point to the points chosen so far
    double d0 = inf;
    if (n == 1) {
      chosen[1].push_back(0.0);
      ++count;
    } else {
      const TreePoint base{tree.attach(n), tree.parent(n)};
      tree.for_each_in_ball(base, delta, bottom, [&](const BallPiece& p) {
        const auto& pts = chosen[p.segment];
        auto it = std::lower_bound(pts.begin(), pts.end(), p.lo);
        if (p.lo_open) it = std::upper_bound(pts.begin(), pts.end(), p.lo);
        const auto end = std::upper_bound(pts.begin(), pts.end(), p.hi);
        if (it == end) return;
        const double slope = p.hi > p.lo ? (p.d_hi - p.d_lo) / (p.hi - p.lo) : 0.0;
        const double x = slope >= 0.0 ? *it : *(end - 1);
        d0 = std::min(d0, p.d_lo + slope * (x - p.lo));
      });
    }
    double last = -inf;
    if (n == 1) last = 0.0;
    while (true) {
      const double from_base = d0 == inf ? bottom : bottom + (delta - d0);
      double t = std::nextafter(std::max(last + delta, from_base), inf);
      if (t <= bottom) t = std::nextafter(bottom, inf);
      if (t > top) break;
      chosen[n].push_back(t);
      ++count;
      last = t;
    }
  }
  return count;
}

CoverCount cover_and_packing(const IcrtTree& tree, double l, double eps) {
  return {ball_cover_count(tree, l, eps), packing_count(tree, l, 2.0 * eps)};
}

}  // namespace icrt
