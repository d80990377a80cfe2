#pragma once

#include "icrt/params.hpp"

namespace icrt::detail {

// Atom contributions to E mu[0,l] and psi(l)/l at l = exp(log_l).
double atom_expected_mass(const ThetaFamily& family, double log_l);
double atom_psi_over_l(const ThetaFamily& family, double log_l);

// e^-x - 1 + x, and (e^-x - 1 + x) / x, stable near 0.
double phi(double x);
double phi_over_x(double x);

}  // namespace icrt::detail
