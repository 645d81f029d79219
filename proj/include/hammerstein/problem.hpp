#pragma once

#include <functional>
#include <string>

#include "hammerstein/cone.hpp"
#include "hammerstein/grid.hpp"
#include "hammerstein/interval.hpp"

namespace hammerstein {

/// Everything needed to instantiate the integral operator and its linear
/// comparison operators: kernel k(t,s), factor eta(s), nonlinearity f(t,y),
/// weight phi, window A, cone functional alpha, the continuity-modulus
/// weight omega0, and the growth bound phi_r(t,r) of the Caratheodory
/// condition.
struct ProblemSpec {
  std::function<double(double, double)> kernel;
  std::function<double(double)> eta;
  std::function<double(double, double)> nonlinearity;
  Weight weight;
  IntervalUnion window_A;
  ConeFunctional cone;
  std::function<double(double)> modulus_weight;
  std::function<double(double, double)> caratheodory_bound;
  std::string label;

  double kernel_eta(double t, double s) const { return kernel(t, s) * eta(s); }
};

}  // namespace hammerstein
