#pragma once

// Exact minimum ball cover on lattice trees by exhaustive search.
//
// Cuts and glue points are integers and eps is a multiple of 1/2. Candidate
// centers are the half-integer coordinates. Elements to cover are the
// midpoints of the quarter-length micro-edges: their distance to a candidate
// center is an odd multiple of 1/4, so a ball that reaches a midpoint reaches
// its whole micro-edge, and covering the midpoints covers the tree.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "tree_oracle.hpp"

namespace oracle {

class ExactCover {
 public:
  ExactCover(const Sticks& s, double l, double eps) {
    for (double c = 0.0; c <= l; c += 0.5) centers_.push_back(c);
    std::vector<double> elems;
    if (l == 0.0) elems.push_back(0.0);
    for (double e = 0.25; e < l; e += 0.5) elems.push_back(e);
    covers_.resize(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t c = 0; c < centers_.size(); ++c)
        if (distance(s, elems[i], centers_[c]) <= eps) covers_[i].push_back(c);
    by_center_.resize(centers_.size());
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t c : covers_[i]) by_center_[c].push_back(i);
    for (const auto& b : by_center_) widest_ = std::max(widest_, b.size());
  }

  std::size_t minimum(std::size_t upper) {
    best_ = upper;
    std::vector<int> count(covers_.size(), 0);
    search(count, 0);
    return best_;
  }

 private:
  void search(std::vector<int>& count, std::size_t used) {
    if (used >= best_) return;
    std::size_t pick = covers_.size(), fewest = centers_.size() + 1, open = 0;
    for (std::size_t i = 0; i < covers_.size(); ++i)
      if (count[i] == 0) {
        ++open;
        if (covers_[i].size() < fewest) {
          fewest = covers_[i].size();
          pick = i;
        }
      }
    if (pick == covers_.size()) {
      best_ = used;
      return;
    }
    // every further ball covers at most widest_ elements
    if (used + (open + widest_ - 1) / widest_ >= best_) return;
    for (std::size_t c : covers_[pick]) {
      for (std::size_t e : by_center_[c]) ++count[e];
      search(count, used + 1);
      for (std::size_t e : by_center_[c]) --count[e];
    }
  }

  std::vector<double> centers_;
  std::vector<std::vector<std::size_t>> covers_, by_center_;
  std::size_t best_ = 0, widest_ = 1;
};

// Integer lattice tree: lengths in {1, 2, 3}, glue points integers in [0, Y_i].
inline Sticks random_lattice_sticks(icrt::Rng& rng, std::size_t n, std::vector<double>& cuts,
                                    std::vector<double>& glue) {
  cuts.clear();
  glue.clear();
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    t += 1.0 + static_cast<double>(rng.below(3));
    cuts.push_back(t);
  }
  for (std::size_t i = 0; i < n; ++i) glue.push_back(static_cast<double>(rng.below(static_cast<std::uint64_t>(cuts[i]) + 1)));
  return make_sticks(cuts, glue);
}

}  // namespace oracle
