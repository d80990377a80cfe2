#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace icrt {

enum class Family { brownian, power_law, harmonic, explicit_weights };

// Parameter point: theta_0 plus a non-increasing sequence of atom weights with
// theta_0^2 + sum theta_i^2 = 1.
struct ThetaFamily {
  Family kind = Family::brownian;
  double alpha = 0.0;            // power_law exponent in (1/2, 1)
  double theta0 = 1.0;           // explicit_weights only
  std::vector<double> weights;   // explicit_weights only

  static ThetaFamily brownian();
  static ThetaFamily power_law(double alpha);
  static ThetaFamily harmonic();
  // Throws std::invalid_argument if the list is unsorted, has non-positive
  // entries, or does not have unit square mass within 1e-12.
  static ThetaFamily explicit_weights(double theta0, std::vector<double> weights);

  // theta_0^2, the Lebesgue density of mu.
  double drift() const;
  // True for families whose atom weights are c * i^-alpha.
  bool symbolic_atoms() const;
  // Exponent of the symbolic weights (1 for harmonic).
  double exponent() const;
  // Normalization constant c of symbolic families.
  double normalization() const;
  std::string name() const;
};

enum class Tri { no, yes, unknown };

enum class TailKind { finite, divergent, unknown };

struct ThetaRealization {
  double theta0 = 0.0;
  std::vector<double> weights;
  double residual_square_mass = 0.0;
  TailKind residual_linear_mass = TailKind::finite;

  std::size_t size() const { return weights.size(); }
  double drift() const { return theta0 * theta0; }
};

ThetaRealization make_theta(const ThetaFamily& family, std::size_t K);

enum class Status { pass, fail, unknown };

struct ValidationItem {
  std::string name;
  Status status = Status::pass;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  bool ok() const;
  Status item(const std::string& name) const;
};

ValidationReport validate(const ThetaRealization& theta, const ThetaFamily& family);

// sum_{i >= start} i^-s for s > 1, start >= 1.
double zeta_tail(double s, std::size_t start);

const char* to_string(Status s);
const char* to_string(TailKind t);

}  // namespace icrt
