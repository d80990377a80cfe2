#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "icrt/measure.hpp"
#include "icrt/params.hpp"
#include "icrt/rng.hpp"
#include "icrt/rtree.hpp"

namespace icrt {

struct DimensionThresholds {
  // reciprocal ratio log E / log l below this extrapolates to an unbounded dimension
  double unbounded_below = 0.02;
  // log log l / log E must end below this on the tail window
  double applicability_max = 0.5;
};

struct DimensionReport {
  // 1 + limsup / liminf of log l / log E mu[0,l], estimated on l = 2^j
  double upper = 0.0, lower = 0.0;
  bool unbounded = false;
  bool hausdorff_applicable = false;
  int j_first = 0, j_last = 0;              // tail window
  double reciprocal_limit = 0.0;            // extrapolated log E / log l, affine fit in 1/j
  double decay_limit = 0.0;                 // same with an extra log(j)/j term
  std::vector<double> ratio;                // log l / log E per j (NaN where E <= 1)
  std::vector<double> loglog_ratio;         // log log l / log E per j
  // closed forms where the family admits them (infinity for unbounded)
  std::optional<double> symbolic_upper, symbolic_lower;
  std::optional<bool> symbolic_applicable;
};

DimensionReport theoretical_dimensions(const ThetaFamily& family, int j_max, const DimensionThresholds& th = {});

struct BoxRegression {
  double slope = 0.0;
  double band_lo = 0.0, band_hi = 0.0;      // slopes on the leading / trailing half windows
  std::vector<double> eps;
  std::vector<std::size_t> counts;
  std::size_t used = 0;
};

// Geometric grid of `points` radii from diameter/8 down to diameter/200.
std::vector<double> default_eps_grid(double diameter, std::size_t points = 8);
BoxRegression minkowski_regression(const IcrtTree& tree, double l, const std::vector<double>& eps_grid);

struct LocalDimension {
  std::vector<double> coords;               // sampled point coordinates
  std::vector<double> slopes;               // per accepted point
  std::size_t skipped = 0;
  double median = 0.0, q25 = 0.0, q75 = 0.0;
};

LocalDimension local_dimension(const IcrtTree& tree, const MuRealization& mu, double l, std::size_t n_points,
                               const std::vector<double>& eps_grid, Rng& rng);

}  // namespace icrt
