#pragma once

// Brute-force evaluation of E mu[0,l] and psi(l) for the symbolic families:
// N terms summed directly in long double, the remainder bracketed by Taylor
// polynomials of 1 - e^-x and e^-x - 1 + x whose power sums come from
// zeta(s) minus the partial sums accumulated in the same loop.

#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace oracle {

struct Bracket {
  long double lo = 0, hi = 0;
  double mid() const { return static_cast<double>((lo + hi) / 2); }
  double width() const { return static_cast<double>(hi - lo); }
};

// alpha = 1 is the harmonic family.
inline long double norm_constant(long double alpha) {
  return 1.0L / std::sqrt(boost::math::zeta(2 * alpha));
}

enum class Series { mass, psi };

inline Bracket series(long double alpha, long double l, Series what, std::size_t N = 10000000) {
  const long double c = norm_constant(alpha);
  long double direct = 0, p2 = 0, p3 = 0, p4 = 0;
  for (std::size_t i = N; i >= 1; --i) {
    const long double w = std::exp(-alpha * std::log(static_cast<long double>(i)));  // i^-alpha
    const long double th = c * w, x = th * l;
    if (what == Series::mass)
      direct += -th * std::expm1(-x);
    else
      direct += std::expm1(-x) + x;
    p2 += w * w;
    p3 += w * w * w;
    p4 += w * w * w * w;
  }
  const long double xN = c * std::exp(-alpha * std::log(static_cast<long double>(N))) * l;
  if (xN > 0.05L) throw std::invalid_argument("series oracle: N too small for this l");
  // sum_{i>N} i^-s
  const long double t2 = boost::math::zeta(2 * alpha) - p2;
  const long double t3 = boost::math::zeta(3 * alpha) - p3;
  const long double t4 = boost::math::zeta(4 * alpha) - p4;
  const long double c2 = c * c, c3 = c2 * c, c4 = c3 * c;
  Bracket b;
  if (what == Series::mass) {
    // theta (x - x^2/2) <= theta (1 - e^-x) <= theta (x - x^2/2 + x^3/6)
    const long double base = c2 * l * t2 - c3 * l * l / 2 * t3;
    b.lo = direct + base;
    b.hi = direct + base + c4 * l * l * l / 6 * t4;
  } else {
    // x^2/2 - x^3/6 <= e^-x - 1 + x <= x^2/2 - x^3/6 + x^4/24
    const long double base = c2 * l * l / 2 * t2 - c3 * l * l * l / 6 * t3;
    b.lo = direct + base;
    b.hi = direct + base + c4 * l * l * l * l / 24 * t4;
  }
  return b;
}

// X_m by bisection in log l against the series oracle.
inline double inverse_by_bisection(long double alpha, double m, std::size_t N = 1000000) {
  double lo = std::log(m), hi = lo + 1;
  while (series(alpha, std::exp(hi), Series::mass, N).mid() < m) hi += (hi - lo);
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (series(alpha, std::exp(mid), Series::mass, N).mid() < m ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace oracle
