#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hammerstein/grid.hpp"

namespace hammerstein {

/// A function u in the weighted space, stored through its extension
/// u_tilde = u/phi: samples at the interior grid nodes plus the two limits
/// at -infinity and +infinity. Immutable after construction.
struct WeightedFunction {
  CompactGrid grid;
  std::vector<double> values_tilde;
  double value_at_minus_inf = 0.0;
  double value_at_plus_inf = 0.0;

  WeightedFunction(CompactGrid g, std::vector<double> values, double at_minus_inf,
                   double at_plus_inf)
      : grid(std::move(g)),
        values_tilde(std::move(values)),
        value_at_minus_inf(at_minus_inf),
        value_at_plus_inf(at_plus_inf) {
    if (values_tilde.size() != grid.size())
      throw std::invalid_argument("WeightedFunction: values/grid size mismatch");
    for (double v : values_tilde)
      if (!std::isfinite(v)) throw std::invalid_argument("WeightedFunction: non-finite value");
    if (!std::isfinite(value_at_minus_inf) || !std::isfinite(value_at_plus_inf))
      throw std::invalid_argument("WeightedFunction: non-finite infinity value");
  }
};

/// Constant extension c (u = c*phi) on the given grid.
inline WeightedFunction constant_tilde(const CompactGrid& g, double c) {
  return WeightedFunction(g, std::vector<double>(g.size(), c), c, c);
}

/// sup |u_tilde| over the grid samples and the two infinity values.
inline double phi_norm(const WeightedFunction& u) {
  double m = std::max(std::abs(u.value_at_minus_inf), std::abs(u.value_at_plus_inf));
  for (double v : u.values_tilde) m = std::max(m, std::abs(v));
  return m;
}

/// Piecewise-linear interpolant of u_tilde in the tau coordinate; the
/// boundary values at tau = +-1 are the infinity limits.
inline double interp_tilde(const WeightedFunction& u, double tau) {
  const std::vector<double>& xs = u.grid.nodes_tau;
  if (xs.empty()) throw std::invalid_argument("interp_tilde: empty grid");
  if (tau <= -1.0) return u.value_at_minus_inf;
  if (tau >= 1.0) return u.value_at_plus_inf;
  if (tau <= xs.front()) {
    const double t0 = -1.0, t1 = xs.front();
    const double a = (tau - t0) / (t1 - t0);
    return u.value_at_minus_inf + a * (u.values_tilde.front() - u.value_at_minus_inf);
  }
  if (tau >= xs.back()) {
    const double t0 = xs.back(), t1 = 1.0;
    const double a = (tau - t0) / (t1 - t0);
    return u.values_tilde.back() + a * (u.value_at_plus_inf - u.values_tilde.back());
  }
  const auto it = std::upper_bound(xs.begin(), xs.end(), tau);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double a = (tau - xs[lo]) / (xs[hi] - xs[lo]);
  return u.values_tilde[lo] + a * (u.values_tilde[hi] - u.values_tilde[lo]);
}

/// u(t) = phi(t) * u_tilde(tau(t)) at a finite t.
inline double evaluate_u(const WeightedFunction& u, double t, const Weight& weight) {
  if (!std::isfinite(t)) throw std::invalid_argument("evaluate_u: t must be finite");
  for (double e : weight.positivity_exceptions)
    if (std::abs(t - e) < kExclusionRadius)
      throw std::invalid_argument("evaluate_u: t coincides with a positivity exception of phi");
  return weight.evaluate(t) * interp_tilde(u, map_t_to_tau(t, u.grid.map_scale));
}

// Node-wise arithmetic; operands must share a grid.

inline WeightedFunction axpy(double a, const WeightedFunction& x, double b,
                             const WeightedFunction& y) {
  if (x.grid.size() != y.grid.size())
    throw std::invalid_argument("axpy: grid size mismatch");
  std::vector<double> v(x.values_tilde.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * x.values_tilde[i] + b * y.values_tilde[i];
  return WeightedFunction(x.grid, std::move(v),
                          a * x.value_at_minus_inf + b * y.value_at_minus_inf,
                          a * x.value_at_plus_inf + b * y.value_at_plus_inf);
}

inline WeightedFunction scaled(const WeightedFunction& x, double a) {
  std::vector<double> v(x.values_tilde.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * x.values_tilde[i];
  return WeightedFunction(x.grid, std::move(v), a * x.value_at_minus_inf,
                          a * x.value_at_plus_inf);
}

}  // namespace hammerstein
