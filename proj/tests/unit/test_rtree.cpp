#include <algorithm>
#include <cmath>
#include <regex>
#include <vector>

#include "doctest.h"
#include "icrt/rtree.hpp"
#include "oracles/tree_oracle.hpp"

using namespace icrt;

namespace {

struct Case {
  std::vector<double> cuts, glue;
  oracle::Sticks sticks;
  IcrtTree tree;
};

Case random_case(std::uint64_t seed, std::size_t n) {
  Case c;
  Rng rng = Rng::stream(seed, "tree", n);
  c.sticks = oracle::random_sticks(rng, n, &c.cuts, &c.glue);
  c.tree = IcrtTree::build(c.cuts, c.glue);
  return c;
}

// Points used for comparisons: the oracle grid plus random coordinates.
std::vector<double> probe_points(const Case& c, double top, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> extra;
  for (int k = 0; k < 20; ++k) extra.push_back(rng.uniform() * top);
  return oracle::grid(c.sticks, top, 3, extra);
}

}  // namespace

TEST_SUITE("rtree") {
  TEST_CASE("single segment and empty tree") {
    IcrtTree empty;
    CHECK(empty.segments() == 0);
    CHECK(empty.extent() == 0.0);
    CHECK(empty.distance(0.0, 0.0) == 0.0);
    CHECK(empty.diameter(0.0) == 0.0);
    CHECK_THROWS_AS(empty.point(0.1), std::out_of_range);

    const auto t = IcrtTree::build(std::vector<double>{2.0}, std::vector<double>{0.0});
    CHECK(t.distance(0.5, 1.75) == 1.25);
    CHECK(t.diameter(2.0) == 2.0);
    CHECK(t.hausdorff_truncation(0.5, 2.0) == 1.5);
  }

  TEST_CASE("hand-built tree") {
    // segment 2 = (1, 3] glued at 0.5, segment 3 = (3, 4] glued at 2
    const auto t = IcrtTree::build(std::vector<double>{1.0, 3.0, 4.0}, std::vector<double>{0.5, 2.0});
    CHECK(t.parent(2) == 1);
    CHECK(t.parent(3) == 2);
    CHECK(t.attach_depth(3) == doctest::Approx(1.5));
    CHECK(t.distance(1.0, 3.0) == doctest::Approx(0.5 + 2.0));
    CHECK(t.distance(4.0, 1.0) == doctest::Approx(1.0 + 1.0 + 0.5));
    CHECK(t.distance(4.0, 3.0) == doctest::Approx(1.0 + 1.0));
    CHECK(t.depth(t.point(4.0)) == doctest::Approx(2.5));
    CHECK(t.diameter(4.0) == doctest::Approx(2.5));
    CHECK(t.hausdorff_truncation(1.0, 4.0) == doctest::Approx(2.0));
    const auto p = t.project(t.point(3.5), 1.0);
    CHECK(p.coord == 0.5);
    CHECK(p.segment == 1);
    CHECK(t.segment_of(0.0) == 1);
    CHECK(t.segment_of(1.0) == 1);
    CHECK(t.segment_of(1.0000001) == 2);
    CHECK_THROWS_AS(t.point(4.5), std::out_of_range);
    CHECK_THROWS_AS(t.diameter(5.0), std::out_of_range);
    CHECK_THROWS_AS(t.hausdorff_truncation(2.0, 1.0), std::invalid_argument);
  }

  TEST_CASE("build rejects bad input") {
    CHECK_THROWS_AS(IcrtTree::build(std::vector<double>{1.0, 0.5}, std::vector<double>{0.0, 0.0}),
                    CutInvariantError);
    CHECK_THROWS_AS(IcrtTree::build(std::vector<double>{1.0, 2.0}, std::vector<double>{1.5, 0.0}),
                    CutInvariantError);
    CHECK_THROWS_AS(IcrtTree::build(std::vector<double>{1.0, 2.0, 3.0}, std::vector<double>{0.0}),
                    CutInvariantError);
  }

  TEST_CASE("distances match the recursion on random trees") {
    for (std::size_t n = 1; n <= 50; n += 7) {
      const auto c = random_case(21, n);
      const auto pts = probe_points(c, c.tree.extent(), n);
      for (std::size_t i = 0; i < pts.size(); i += 3)
        for (std::size_t j = 0; j < pts.size(); j += 2) {
          const double want = oracle::distance(c.sticks, pts[i], pts[j]);
          CHECK(std::abs(c.tree.distance(pts[i], pts[j]) - want) <= 1e-10);
        }
    }
  }

  TEST_CASE("metric axioms") {
    const auto c = random_case(5, 40);
    Rng rng(3);
    for (int k = 0; k < 2000; ++k) {
      const double a = rng.uniform() * c.tree.extent(), b = rng.uniform() * c.tree.extent(),
                   d = rng.uniform() * c.tree.extent();
      const double ab = c.tree.distance(a, b), bd = c.tree.distance(b, d), ad = c.tree.distance(a, d);
      CHECK(ab == c.tree.distance(b, a));
      CHECK(ad <= ab + bd + 1e-12);
      // four-point condition holds in a tree; here with 0 as the fourth point
      const double a0 = c.tree.distance(a, 0), b0 = c.tree.distance(b, 0), d0 = c.tree.distance(d, 0);
      const double s1 = ab + d0, s2 = ad + b0, s3 = bd + a0;
      std::vector<double> s{s1, s2, s3};
      std::sort(s.begin(), s.end());
      CHECK(s[2] - s[1] <= 1e-10);
    }
  }

  TEST_CASE("projection is the nearest point of the truncation") {
    const auto c = random_case(8, 30);
    Rng rng(4);
    for (int k = 0; k < 30; ++k) {
      const double l = rng.uniform() * c.tree.extent();
      const auto g = oracle::grid(c.sticks, l, 2, {l});
      for (int m = 0; m < 10; ++m) {
        const auto x = c.tree.point(rng.uniform() * c.tree.extent());
        const auto p = c.tree.project(x, l);
        CHECK(p.coord <= l);
        const double dp = c.tree.distance(x, p);
        // the nearest point of T_l is a cut, glue point or l itself, all on the grid
        const double want = x.coord <= l ? 0.0 : oracle::distance_to_truncation(c.sticks, x.coord, g);
        CHECK(std::abs(dp - want) <= 1e-10);
        // and it lies on the geodesic to the root
        CHECK(std::abs(c.tree.depth(x) - c.tree.depth(p) - dp) <= 1e-10);
      }
    }
  }

  TEST_CASE("hausdorff distance between truncations") {
    for (std::size_t n : {3u, 12u, 30u}) {
      const auto c = random_case(13, n);
      Rng rng(n);
      for (int k = 0; k < 10; ++k) {
        double l1 = rng.uniform() * c.tree.extent(), l2 = rng.uniform() * c.tree.extent();
        if (l1 > l2) std::swap(l1, l2);
        // the farthest point of T_l2 from T_l1 is a segment top or l2, all grid points
        const double want = oracle::hausdorff(c.sticks, l1, l2, 1);
        CHECK(std::abs(c.tree.hausdorff_truncation(l1, l2) - want) <= 1e-10);
      }
    }
  }

  TEST_CASE("diameter against all pairs of grid points") {
    for (std::size_t n : {2u, 9u, 25u}) {
      const auto c = random_case(17, n);
      for (double frac : {0.3, 0.77, 1.0}) {
        const double l = frac * c.tree.extent();
        const auto g = oracle::grid(c.sticks, l, 1, {l});
        double want = 0.0;
        for (double a : g)
          for (double b : g) want = std::max(want, oracle::distance(c.sticks, a, b));
        CHECK(std::abs(c.tree.diameter(l) - want) <= 1e-10);
      }
    }
  }

  TEST_CASE("ball pieces agree with pointwise distances") {
    const auto c = random_case(29, 25);
    Rng rng(6);
    for (int k = 0; k < 25; ++k) {
      const double l = (0.3 + 0.7 * rng.uniform()) * c.tree.extent();
      const auto center = c.tree.point(rng.uniform() * l);
      const double r = 3.0 * rng.uniform();
      std::vector<BallPiece> pieces;
      c.tree.for_each_in_ball(center, r, l, [&](const BallPiece& p) { pieces.push_back(p); });
      for (const auto& p : pieces) {
        CHECK(p.lo <= p.hi);
        CHECK(p.hi <= l);
        CHECK(std::abs(c.tree.distance(center, TreePoint{p.hi, p.segment}) - p.d_hi) <= 1e-10);
        if (!p.lo_open)
          CHECK(std::abs(c.tree.distance(center, TreePoint{p.lo, p.segment}) - p.d_lo) <= 1e-10);
      }
      for (int m = 0; m < 200; ++m) {
        const auto x = c.tree.point(rng.uniform() * l);
        const double d = c.tree.distance(center, x);
        bool inside = false;
        for (const auto& p : pieces)
          if (p.segment == x.segment && p.lo <= x.coord && x.coord <= p.hi) inside = true;
        if (d < r - 1e-9) CHECK(inside);
        if (d > r + 1e-9) CHECK_FALSE(inside);
      }
    }
  }

  TEST_CASE("dot export") {
    const auto c = random_case(31, 12);
    const double l = 0.6 * c.tree.extent();
    const std::string dot = c.tree.to_dot(l);
    CHECK(dot.rfind("graph icrt {", 0) == 0);
    const std::regex edge(R"re(\[len=([0-9.eE+-]+)\])re");
    double total = 0.0;
    for (auto it = std::sregex_iterator(dot.begin(), dot.end(), edge); it != std::sregex_iterator(); ++it)
      total += std::stod((*it)[1]);
    // edges partition T_l, so their lengths add up to l
    CHECK(total == doctest::Approx(l).epsilon(1e-5));
    CHECK(IcrtTree().to_dot(0.0) == "graph icrt {\n  \"0\";\n}\n");
  }

  TEST_CASE("children are sorted by attach point") {
    const auto c = random_case(2, 50);
    for (std::size_t n = 1; n <= c.tree.segments(); ++n) {
      const auto kids = c.tree.children(n);
      for (std::size_t k = 0; k < kids.size(); ++k) {
        CHECK(c.tree.parent(kids[k]) == n);
        if (k) CHECK(c.tree.attach(kids[k - 1]) <= c.tree.attach(kids[k]));
      }
    }
  }
}
