#include "icrt/rtree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace icrt {

IcrtTree::IcrtTree() : y_{0.0}, parent_{0}, attach_{0.0}, attach_depth_{0.0}, hops_{0}, up_{{0}}, child_start_{0, 0} {}

IcrtTree IcrtTree::build(const CutSequence& cuts) { return build(cuts.cuts, cuts.glue); }

IcrtTree IcrtTree::build(std::span<const double> cuts, std::span<const double> glue) {
  if (glue.size() + 1 < cuts.size()) throw CutInvariantError("missing glue points", glue.size() + 1);
  IcrtTree t;
  const std::size_t N = cuts.size();
  t.n_ = N;
  t.y_.assign(N + 1, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    if (!std::isfinite(cuts[i]) || !(cuts[i] > t.y_[i])) throw CutInvariantError("cuts not strictly increasing", i + 1);
    t.y_[i + 1] = cuts[i];
  }
  for (std::size_t i = 0; i < std::min(glue.size(), N); ++i)
    if (!std::isfinite(glue[i]) || !(glue[i] >= 0.0) || !(glue[i] <= cuts[i]))
      throw CutInvariantError("glue point outside [0, Y_i]", i + 1);

  t.parent_.assign(N + 1, 0);
  t.attach_.assign(N + 1, 0.0);
  t.attach_depth_.assign(N + 1, 0.0);
  t.hops_.assign(N + 1, 0);
  for (std::size_t n = 2; n <= N; ++n) {
    const double z = glue[n - 2];
    const std::size_t p = t.segment_of(z);
    t.parent_[n] = p;
    t.attach_[n] = z;
    t.attach_depth_[n] = (z - t.y_[p - 1]) + t.attach_depth_[p];
    t.hops_[n] = t.hops_[p] + 1;
  }
  std::size_t levels = 1;
  while ((std::size_t{1} << levels) <= N) ++levels;
  t.up_.assign(levels, std::vector<std::size_t>(N + 1, 0));
  t.up_[0] = t.parent_;
  for (std::size_t k = 1; k < levels; ++k)
    for (std::size_t n = 1; n <= N; ++n) t.up_[k][n] = t.up_[k - 1][t.up_[k - 1][n]];

  t.child_start_.assign(N + 2, 0);
  for (std::size_t n = 2; n <= N; ++n) ++t.child_start_[t.parent_[n] + 1];
  for (std::size_t n = 1; n <= N + 1; ++n) t.child_start_[n] += t.child_start_[n - 1];
  t.child_list_.assign(N > 0 ? N - 1 : 0, 0);
  std::vector<std::size_t> fill(t.child_start_.begin(), t.child_start_.end() - 1);
  for (std::size_t n = 2; n <= N; ++n) t.child_list_[fill[t.parent_[n]]++] = n;
  for (std::size_t n = 1; n <= N; ++n) {
    auto b = t.child_list_.begin() + static_cast<std::ptrdiff_t>(t.child_start_[n]);
    auto e = t.child_list_.begin() + static_cast<std::ptrdiff_t>(t.child_start_[n + 1]);
    std::stable_sort(b, e, [&](std::size_t a, std::size_t c) { return t.attach_[a] < t.attach_[c]; });
  }
  return t;
}

std::span<const std::size_t> IcrtTree::children(std::size_t n) const {
  if (n == 0 || n > n_) return {};
  return {child_list_.data() + child_start_[n], child_start_[n + 1] - child_start_[n]};
}

std::size_t IcrtTree::segment_of(double coord) const {
  if (!(coord >= 0.0) || coord > y_[n_]) throw std::out_of_range("coordinate outside the tree");
  if (n_ == 0) return 0;
  if (coord == 0.0) return 1;
  return static_cast<std::size_t>(std::lower_bound(y_.begin() + 1, y_.end(), coord) - y_.begin());
}

TreePoint IcrtTree::point(double coord) const { return {coord, segment_of(coord)}; }

double IcrtTree::depth(const TreePoint& x) const {
  if (x.segment == 0) return 0.0;
  return (x.coord - y_[x.segment - 1]) + attach_depth_[x.segment];
}

std::size_t IcrtTree::ancestor(std::size_t n, std::size_t hops) const {
  for (std::size_t k = 0; hops; ++k, hops >>= 1)
    if (hops & 1) n = up_[k][n];
  return n;
}

std::size_t IcrtTree::lca(std::size_t a, std::size_t b) const {
  if (hops_[a] < hops_[b]) std::swap(a, b);
  a = ancestor(a, hops_[a] - hops_[b]);
  if (a == b) return a;
  for (std::size_t k = up_.size(); k-- > 0;) {
    if (up_[k][a] != up_[k][b]) {
      a = up_[k][a];
      b = up_[k][b];
    }
  }
  return parent_[a];
}

double IcrtTree::distance(const TreePoint& x, const TreePoint& y) const {
  if (x.segment == y.segment) return std::abs(x.coord - y.coord);
  const std::size_t c = lca(x.segment, y.segment);
  auto entry = [&](const TreePoint& p) {
    if (p.segment == c) return p.coord;
    return attach_[ancestor(p.segment, hops_[p.segment] - hops_[c] - 1)];
  };
  const double meet = std::min(entry(x), entry(y));
  const double dm = (meet - y_[c - 1]) + attach_depth_[c];
  return depth(x) + depth(y) - 2.0 * dm;
}

void IcrtTree::check_l(double l) const {
  if (!(l >= 0.0) || l > y_[n_]) throw std::out_of_range("truncation level outside [0, extent]");
}

TreePoint IcrtTree::project(const TreePoint& x, double l) const {
  check_l(l);
  if (n_ == 0) return x;
  const std::size_t s = segment_of(l);
  std::size_t a = x.segment;
  if (a <= s) return x.coord <= l ? x : TreePoint{l, s};
  for (std::size_t k = up_.size(); k-- > 0;)
    if (up_[k][a] > s) a = up_[k][a];
  const double e = attach_[a];
  return e <= l ? TreePoint{e, parent_[a]} : TreePoint{l, s};
}

double IcrtTree::hausdorff_truncation(double l1, double l2) const {
  if (l1 > l2) throw std::invalid_argument("hausdorff_truncation: l1 > l2");
  check_l(l2);
  if (!(l1 >= 0.0)) throw std::out_of_range("hausdorff_truncation: negative level");
  if (n_ == 0 || l1 == l2) return 0.0;
  const std::size_t s1 = segment_of(l1), s2 = segment_of(l2);
  std::vector<double> datt(s2 + 1, 0.0);
  auto dist_to_base = [&](double z, std::size_t p) {
    if (z <= l1) return 0.0;
    if (p == s1) return z - l1;
    return (z - y_[p - 1]) + datt[p];
  };
  double best = 0.0;
  for (std::size_t n = 1; n <= s2; ++n) {
    if (n >= 2) datt[n] = dist_to_base(attach_[n], parent_[n]);
    const double top = std::min(y_[n], l2);
    if (top > l1) best = std::max(best, dist_to_base(top, n));
  }
  return best;
}

double IcrtTree::diameter(double l) const {
  check_l(l);
  if (n_ == 0) return 0.0;
  const std::size_t s = segment_of(l);
  std::vector<TreePoint> ends{{0.0, 1}};
  for (std::size_t n = 1; n <= s; ++n) ends.push_back({std::min(y_[n], l), n});
  TreePoint far = ends[0];
  double best = -1.0;
  for (const auto& p : ends) {
    const double d = depth(p);
    if (d > best) {
      best = d;
      far = p;
    }
  }
  best = 0.0;
  for (const auto& p : ends) best = std::max(best, distance(far, p));
  return best;
}

void IcrtTree::for_each_in_ball(const TreePoint& center, double radius, double l,
                                const std::function<void(const BallPiece&)>& fn) const {
  if (!(radius >= 0.0)) throw std::invalid_argument("ball: negative radius");
  if (!(center.coord >= 0.0) || center.coord > y_[n_]) throw std::out_of_range("ball: center outside the tree");
  check_l(l);
  if (n_ == 0) {
    fn({0, 0.0, 0.0, 0.0, 0.0, false});
    return;
  }
  enum class From { center, bottom, child };
  struct Job {
    std::size_t seg;
    double e, de;
    From from;
    std::size_t child;
  };
  std::vector<Job> stack{{center.segment, center.coord, 0.0, From::center, 0}};
  while (!stack.empty()) {
    const Job j = stack.back();
    stack.pop_back();
    const std::size_t n = j.seg;
    const double r = radius - j.de;
    const double bottom = y_[n - 1];
    const bool visible = n == 1 || bottom < l;
    if (visible) {
      const double top = std::min(y_[n], l);
      const double a = std::max(bottom, j.e - r), b = std::min(top, j.e + r);
      const bool open = n > 1 && a == bottom;
      if (a <= b) {
        if (j.e <= a) {
          fn({n, a, b, j.de + (a - j.e), j.de + (b - j.e), open});
        } else if (j.e >= b) {
          fn({n, a, b, j.de + (j.e - a), j.de + (j.e - b), open});
        } else {
          fn({n, a, j.e, j.de + (j.e - a), j.de, open});
          fn({n, j.e, b, j.de, j.de + (b - j.e), true});
        }
      }
      auto kids = children(n);
      auto lo = std::lower_bound(kids.begin(), kids.end(), j.e - r,
                                 [&](std::size_t c, double v) { return attach_[c] < v; });
      for (auto it = lo; it != kids.end() && attach_[*it] <= j.e + r; ++it) {
        const std::size_t c = *it;
        if (c == j.child || y_[c - 1] >= l) continue;
        const double dc = j.de + std::abs(attach_[c] - j.e);
        if (dc <= radius) stack.push_back({c, y_[c - 1], dc, From::bottom, 0});
      }
    }
    if (n >= 2 && j.from != From::bottom) {
      const double dp = j.de + (j.e - bottom);
      if (dp <= radius) stack.push_back({parent_[n], attach_[n], dp, From::child, n});
    }
  }
}

std::string IcrtTree::to_dot(double l) const {
  check_l(l);
  std::ostringstream out;
  auto id = [](double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "\"%.17g\"", x);
    return std::string(buf);
  };
  out << "graph icrt {\n";
  if (n_ == 0) {
    out << "  " << id(0.0) << ";\n}\n";
    return out.str();
  }
  const std::size_t s = segment_of(l);
  for (std::size_t n = 1; n <= s; ++n) {
    const double top = std::min(y_[n], l);
    std::vector<double> stops;
    for (std::size_t c : children(n))
      if (c <= s && attach_[c] > y_[n - 1] && attach_[c] < top) stops.push_back(attach_[c]);
    stops.push_back(top);
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
    double from = attach_[n], from_depth = attach_depth_[n], base = y_[n - 1];
    if (n == 1) from = base = 0.0;
    for (double x : stops) {
      const double len = (x - base) + attach_depth_[n] - from_depth;
      out << "  " << id(from) << " -- " << id(x) << " [len=" << len << "];\n";
      from = x;
      from_depth = (x - base) + attach_depth_[n];
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace icrt
