#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "icrt/measure.hpp"
#include "icrt/rng.hpp"
#include "icrt/rtree.hpp"
#include "icrt/stickbreak.hpp"

namespace icrt {

enum class MeasureKind { mu_normalized, length_normalized, cut_counting };

// Probability measure on T_l: mu_l / mu[0,l], Lebesgue / l, or the uniform
// distribution on the cuts Y_i <= l. Holds references; the tree and mu must
// outlive it.
class EmpiricalMeasure {
 public:
  EmpiricalMeasure(MeasureKind kind, const IcrtTree& tree, const MuRealization& mu, double l);

  MeasureKind kind() const { return kind_; }
  double level() const { return l_; }
  const IcrtTree& tree() const { return tree_; }
  // mu[0,l], l, or the number of cuts <= l.
  double normalizer() const { return total_; }

  double ball_mass(const TreePoint& center, double eps) const;
  TreePoint sample_point(Rng& rng) const;
  // Integral of max(0, 1 - d(anchor, .)).
  double integrate_bump(const TreePoint& anchor) const;
  // Largest mass carried by a single point.
  double max_point_mass() const;

 private:
  MeasureKind kind_;
  const IcrtTree& tree_;
  const MuRealization& mu_;
  double l_;
  double total_;
  std::size_t cut_count_;
};

struct TestFunction {
  enum class Kind { one, bump, saturating };
  Kind kind = Kind::one;
  double anchor = 0.0;  // coordinate of the anchor point

  static TestFunction one() { return {Kind::one, 0.0}; }
  // max(0, 1 - d(x, .))
  static TestFunction bump(double x) { return {Kind::bump, x}; }
  // min(d(x, .), 1)
  static TestFunction saturating(double x) { return {Kind::saturating, x}; }
  std::string name() const;
};

double integrate(const EmpiricalMeasure& m, const TestFunction& f);

struct ConvergenceRow {
  double l;
  std::size_t f_index;
  double mu_normalized, length_normalized, cut_counting;
};

struct ConvergenceTable {
  std::vector<double> l_grid;
  std::vector<TestFunction> functions;
  std::vector<ConvergenceRow> rows;           // row-major by l then function
  // max_f |p_{l_{k+1}}(f) - p_{l_k}(f)| per measure kind, k = 0..grid-2
  std::vector<double> step_mu, step_length, step_cut;
  // max_f |p_l(f) - p_l^cut(f)| per l
  std::vector<double> cut_gap;
  // largest single-point mass of p_l per l
  std::vector<double> max_atom;
};

ConvergenceTable convergence_diagnostic(const IcrtTree& tree, const MuRealization& mu,
                                        const std::vector<double>& l_grid,
                                        const std::vector<TestFunction>& f_set);

struct UrnTrajectory {
  std::size_t first = 0;          // a
  std::vector<double> subtree;    // A_i, i = a..N
  std::vector<double> total;      // M_i
  double ratio(std::size_t k) const { return subtree[k] / total[k]; }
  std::size_t size() const { return subtree.size(); }
};

// Subtree mass A_i = mu_{Y_i}(S) where S is the set of points projecting into
// the subtree of T_{Y_a} rooted at the bottom of segment `root`; root = 0
// selects the empty set and root = 1 all of T_{Y_a}.
UrnTrajectory urn_track(const CutSequence& cuts, const MuRealization& mu, std::size_t a, std::size_t root);

const char* to_string(MeasureKind k);

}  // namespace icrt
