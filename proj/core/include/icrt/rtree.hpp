#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "icrt/stickbreak.hpp"

namespace icrt {

struct TreePoint {
  double coord = 0.0;
  std::size_t segment = 0;  // 1-based; 0 only for the single-point tree
};

// A piece of a segment [lo, hi] on which the distance to a fixed center is
// linear, d_lo at lo and d_hi at hi. lo_open marks that coordinate lo belongs
// to the parent segment.
struct BallPiece {
  std::size_t segment;
  double lo, hi;
  double d_lo, d_hi;
  bool lo_open;
};

// The real tree obtained by gluing segment (Y_{n-1}, Y_n] at Z_{n-1}.
class IcrtTree {
 public:
  IcrtTree();
  static IcrtTree build(const CutSequence& cuts);
  static IcrtTree build(std::span<const double> cuts, std::span<const double> glue);

  std::size_t segments() const { return n_; }
  double extent() const { return y_[n_]; }
  // Y_n with Y_0 = 0.
  double cut(std::size_t n) const { return y_.at(n); }
  std::size_t parent(std::size_t n) const { return parent_.at(n); }
  double attach(std::size_t n) const { return attach_.at(n); }
  double attach_depth(std::size_t n) const { return attach_depth_.at(n); }
  // Children of segment n sorted by attach coordinate.
  std::span<const std::size_t> children(std::size_t n) const;

  // Segment containing the coordinate; throws std::out_of_range.
  std::size_t segment_of(double coord) const;
  TreePoint point(double coord) const;
  double depth(const TreePoint& x) const;
  double distance(const TreePoint& x, const TreePoint& y) const;
  double distance(double x, double y) const { return distance(point(x), point(y)); }
  // First point of coordinate <= l on the geodesic from x to 0.
  TreePoint project(const TreePoint& x, double l) const;
  // sup over T_{l2} of the distance to T_{l1}.
  double hausdorff_truncation(double l1, double l2) const;
  // Diameter of T_l.
  double diameter(double l) const;
  // Calls fn for every piece of T_l within distance radius of center.
  void for_each_in_ball(const TreePoint& center, double radius, double l,
                        const std::function<void(const BallPiece&)>& fn) const;

  std::string to_dot(double l) const;

 private:
  std::size_t ancestor(std::size_t n, std::size_t hops) const;
  std::size_t lca(std::size_t a, std::size_t b) const;
  void check_l(double l) const;

  std::size_t n_ = 0;
  std::vector<double> y_;             // y_[n] = Y_n
  std::vector<std::size_t> parent_;   // parent_[1] = 0
  std::vector<double> attach_;        // Z_{n-1}
  std::vector<double> attach_depth_;  // d(0, Z_{n-1})
  std::vector<std::size_t> hops_;     // number of ancestors
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::size_t> child_start_, child_list_;
};

struct CoverCount {
  std::size_t cover = 0;     // minimum number of closed eps-balls covering T_l
  std::size_t packing = 0;   // greedy maximal set with pairwise distances > 2 eps
};

// Minimum number of closed eps-balls (centers in T_l) covering T_l. Throws
// std::invalid_argument for eps <= 0.
std::size_t ball_cover_count(const IcrtTree& tree, double l, double eps);
// Size of a maximal set of points of T_l with pairwise distances > delta,
// chosen greedily in coordinate order.
std::size_t packing_count(const IcrtTree& tree, double l, double delta);
CoverCount cover_and_packing(const IcrtTree& tree, double l, double eps);

}  // namespace icrt
