#include "percolab/scaling.hpp"

namespace percolab {

ExponentSet exact_2d_exponents() {
  return {-2.0 / 3.0, 5.0 / 36.0, 43.0 / 18.0, 91.0 / 5.0,
          5.0 / 24.0, 4.0 / 3.0,  48.0 / 5.0,  91.0 / 36.0, 2};
}

ExponentSet mean_field_exponents() {
  return {-1.0, 1.0, 1.0, 2.0, 0.0, 0.5, 0.5, 2.0, 6};
}

std::map<std::string, double> check_scaling_relations(const ExponentSet& e) {
  std::map<std::string, double> r;
  r["scaling_gamma"] = (2.0 - e.alpha) - (e.gamma + 2.0 * e.beta);
  r["scaling_delta"] = (2.0 - e.alpha) - e.beta * (e.delta + 1.0);
  r["gap"] = e.Delta - e.delta * e.beta;
  r["fisher"] = e.gamma - e.nu * (2.0 - e.eta);
  r["hyperscaling_rho"] = e.d * e.rho - (e.delta + 1.0);
  r["hyperscaling_nu"] = e.d * e.nu - (2.0 - e.alpha);
  return r;
}

}  // namespace percolab
