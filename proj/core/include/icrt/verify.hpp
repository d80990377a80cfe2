#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "icrt/params.hpp"

namespace icrt {

struct CheckSpec {
  std::string lemma;
  ThetaFamily family = ThetaFamily::brownian();
  std::size_t atoms = 100000;         // truncation K for symbolic families
  std::vector<double> l_grid;         // scale grid; meaning depends on the check
  std::vector<int> k_grid{4, 5, 6, 7, 8};  // dyadic levels for the Hausdorff step bound
  std::vector<double> x_grid, y_grid; // distance domination pairs (all combinations)
  std::size_t reps = 1000;
  double alpha = 0.01;
  std::uint64_t seed = 1;
  unsigned workers = 1;

  // Urn parameters.
  double urn_a0 = 5.0, urn_m0 = 10.0;
  std::size_t urn_steps = 1000;
  std::vector<double> t_grid{0.2, 0.5, 1.0};

  // Strong LLN: weights "ones", "linear" or "geometric", success probability p.
  std::string weights = "ones";
  double p = 0.3;
  std::size_t steps = 100000;

  // Negative controls.
  bool corrupt_glue = false;          // equivalence: uniform glue instead of mu-weighted
  bool same_sampler = false;          // equivalence: the mu-driven sampler against itself
  double pizza_scale = 4.0;           // domination reference mean scale / mu[0,x]
  bool quenched = false;              // domination: one mu shared by all replications

  void check() const;                 // throws std::invalid_argument
};

enum class CheckVerdict { pass, fail, monitor, refused };

struct CheckResult {
  std::string lemma;
  CheckVerdict verdict = CheckVerdict::monitor;
  std::vector<std::pair<std::string, double>> stats;
  std::string detail;
  std::size_t reps = 0;
  std::uint64_t seed = 0;

  bool passed() const { return verdict == CheckVerdict::pass; }
  double stat(const std::string& name) const;
  // Single-line JSON object.
  std::string to_json() const;
};

CheckResult check_distance_domination(const CheckSpec& spec);
CheckResult check_hausdorff_step(const CheckSpec& spec);
CheckResult check_polya_concentration(const CheckSpec& spec);
CheckResult check_strong_lln(const CheckSpec& spec);
CheckResult check_construction_equivalence(const CheckSpec& spec);
CheckResult check_cut_count(const CheckSpec& spec);       // at most 2 l mu[0,l] cuts on [0,l]
CheckResult check_stick_length(const CheckSpec& spec);    // l_{i+1} <= 5 log(Y_i) / M_i
CheckResult check_segment_weight(const CheckSpec& spec);  // m_{i+1} <= log^2(Y_i) / Y_i
CheckResult check_mass_lln(const CheckSpec& spec);        // mu[0,l] ~ E mu[0,l]
CheckResult check_gap_law(const CheckSpec& spec);         // (Y_{i+1}-Y_i) mu[0,Y_i] <=st Exp(1)

// Dispatch on spec.lemma; throws std::invalid_argument for unknown ids.
CheckResult run_check(const CheckSpec& spec);
const std::vector<std::string>& lemma_ids();
// Resolves short aliases (pizza, equiv, ...); throws std::invalid_argument for unknown ids.
std::string canonical_lemma(const std::string& id);

const char* to_string(CheckVerdict v);

}  // namespace icrt
