#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "icrt/measure.hpp"
#include "icrt/params.hpp"
#include "icrt/rng.hpp"

namespace icrt {

struct StopRule {
  enum class Kind { cuts, horizon, covering };
  Kind kind = Kind::cuts;
  std::size_t max_cuts = 0;
  double length = 0.0;
  // horizon and covering rules continue until at least this many cuts exist
  std::size_t min_cuts = 0;

  // Stop after the N-th cut.
  static StopRule cuts(std::size_t n) { return {Kind::cuts, n, 0.0, 0}; }
  // Keep every cut <= L.
  static StopRule horizon(double L) { return {Kind::horizon, 0, L, 0}; }
  // Keep every cut < L and the first cut >= L, so the tree contains [0, L].
  static StopRule covering(double L, std::size_t min_cuts = 0) { return {Kind::covering, 0, L, min_cuts}; }
};

enum class Provenance { classical, mu_driven, external };

class CutInvariantError : public std::invalid_argument {
 public:
  CutInvariantError(const std::string& what, std::size_t index)
      : std::invalid_argument(what + " at index " + std::to_string(index)), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Cuts Y_1 < ... < Y_N and glue points Z_1..Z_N (Z_i <= Y_i). Vectors are
// 0-based: cuts[i] is Y_{i+1}. Segment n (1-based) is (Y_{n-1}, Y_n] and is
// glued at Z_{n-1}, with Y_0 = Z_0 = 0.
struct CutSequence {
  std::vector<double> cuts;
  std::vector<double> glue;
  std::vector<double> seg_length;   // l_n
  std::vector<double> seg_weight;   // m_n = mu(Y_{n-1}, Y_n]
  std::vector<double> cum_weight;   // M_n = mu[0, Y_n]
  Provenance provenance = Provenance::external;
  std::uint64_t seed = 0;
  std::optional<double> horizon;

  std::size_t size() const { return cuts.size(); }
  double extent() const { return cuts.empty() ? 0.0 : cuts.back(); }
  // Throws CutInvariantError naming the first offending (1-based) index.
  void check() const;
};

// Fills l_n and, when mu is given, m_n and M_n.
CutSequence make_cut_sequence(std::vector<double> cuts, std::vector<double> glue,
                              const MuRealization* mu = nullptr);

CutSequence sample_cuts_new(const MuRealization& mu, const StopRule& stop, Rng& rng);

struct ClassicalSample {
  MuRealization mu;   // theta0^2 dx + sum theta_i delta_{A_{i,0}}
  CutSequence cuts;
};

ClassicalSample sample_cuts_classical(const ThetaRealization& theta, const StopRule& stop, Rng& rng);

const char* to_string(Provenance p);

}  // namespace icrt
