#pragma once

#include <map>
#include <string>

namespace percolab {

/// The usual critical exponents plus the lattice dimension they refer to.
struct ExponentSet {
  double alpha, beta, gamma, delta, eta, nu, rho, Delta;
  int d;
};

/// Exact two-dimensional values (triangular-lattice universality class).
ExponentSet exact_2d_exponents();

/// Mean-field values (regular-tree percolation), quoted with d = 6.
ExponentSet mean_field_exponents();

/// Residuals of the scaling and hyperscaling relations; all zero for a
/// consistent exponent set.
///   scaling_gamma:      (2 - alpha) - (gamma + 2 beta)
///   scaling_delta:      (2 - alpha) - beta (delta + 1)
///   gap:                Delta - delta beta
///   fisher:             gamma - nu (2 - eta)
///   hyperscaling_rho:   d rho - (delta + 1)
///   hyperscaling_nu:    d nu - (2 - alpha)
std::map<std::string, double> check_scaling_relations(const ExponentSet& e);

}  // namespace percolab
