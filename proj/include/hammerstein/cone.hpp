#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "hammerstein/interval.hpp"
#include "hammerstein/rng.hpp"
#include "hammerstein/weighted.hpp"

namespace hammerstein {

/// Default slack below which alpha(u) >= 0 is still counted as cone
/// membership; solutions can sit exactly on the cone boundary.
inline constexpr double kMembershipTolerance = 1e-9;

/// Cone functional alpha(u) = min_{t in A} u(t) - c * sup_t |u(t)|,
/// realized over grid samples (plus dense auxiliary samples of A).
struct ConeFunctional {
  IntervalUnion window_A;
  double coefficient_c = 1.0;
  std::string description;
  int aux_samples_per_interval = 65;
};

inline void validate_cone(const ConeFunctional& alpha) {
  validate_interval_union(alpha.window_A);
  if (!(alpha.coefficient_c > 0.0) || alpha.coefficient_c > 1.0)
    throw std::invalid_argument("ConeFunctional: coefficient c must lie in (0,1]");
}

/// alpha(u): min over samples of u on A minus c times the max of |u| over
/// the interior grid nodes. The window is always densified with equispaced
/// auxiliary points (interval endpoints included) so the min is resolved
/// even when few grid nodes fall inside A.
inline double cone_value(const ConeFunctional& alpha, const WeightedFunction& u,
                         const Weight& weight) {
  validate_cone(alpha);
  const CompactGrid& g = u.grid;
  const double t_lo = g.nodes_t.front(), t_hi = g.nodes_t.back();
  bool overlaps = false;
  for (const Interval& iv : alpha.window_A)
    if (iv.hi >= t_lo && iv.lo <= t_hi) overlaps = true;
  if (!overlaps)
    throw std::runtime_error("cone_value: window A lies outside the grid's resolved range");

  double min_A = std::numeric_limits<double>::infinity();
  auto visit = [&](double t) {
    const double v = weight.evaluate(t) * interp_tilde(u, map_t_to_tau(t, g.map_scale));
    if (v < min_A) min_A = v;
  };
  for (const Interval& iv : alpha.window_A) {
    const int m = std::max(2, alpha.aux_samples_per_interval);
    for (int i = 0; i < m; ++i) visit(iv.lo + iv.length() * i / (m - 1));
    for (std::size_t i = 0; i < g.size(); ++i)
      if (iv.contains(g.nodes_t[i]))
        min_A = std::min(min_A, weight.evaluate(g.nodes_t[i]) * u.values_tilde[i]);
  }

  double sup_abs = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    sup_abs = std::max(sup_abs, std::abs(weight.evaluate(g.nodes_t[i]) * u.values_tilde[i]));

  return min_A - alpha.coefficient_c * sup_abs;
}

struct PropertyReport {
  bool p1_passed = true;
  bool p2_passed = true;
  bool p3_passed = true;
  int n_samples = 0;
  std::uint64_t seed = 0;
  std::string witness;

  bool all_passed() const { return p1_passed && p2_passed && p3_passed; }
};

/// Sampled audit of the cone-functional properties: super-additivity,
/// positive homogeneity, and pointedness, on random pairs of functions with
/// i.i.d. node values in [-1,1]. Comparison slack is 1e-12 scaled by the
/// sampled magnitudes (the raw inequalities are exact in real arithmetic
/// over a fixed sample set; the slack absorbs rounding only).
inline PropertyReport check_p_properties(const ConeFunctional& alpha, const Weight& weight,
                                         const CompactGrid& grid, int n_samples,
                                         std::uint64_t seed) {
  if (n_samples < 100)
    throw std::invalid_argument("check_p_properties: n_samples must be >= 100");
  validate_cone(alpha);
  PropertyReport report;
  report.n_samples = n_samples;
  report.seed = seed;
  detail::Rng rng(seed);

  double phi_max = 0.0;
  for (double t : grid.nodes_t) phi_max = std::max(phi_max, weight.evaluate(t));

  auto random_function = [&]() {
    std::vector<double> v(grid.size());
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    const double vm = rng.uniform(-1.0, 1.0), vp = rng.uniform(-1.0, 1.0);
    return WeightedFunction(grid, std::move(v), vm, vp);
  };

  for (int k = 0; k < n_samples; ++k) {
    const WeightedFunction u = random_function();
    const WeightedFunction v = random_function();
    const double lambda = rng.uniform(0.0, 10.0);

    const double au = cone_value(alpha, u, weight);
    const double av = cone_value(alpha, v, weight);
    const double scale = std::max(1.0, phi_max * (2.0 + lambda));
    const double slack = 1e-12 * scale;

    const double a_sum = cone_value(alpha, axpy(1.0, u, 1.0, v), weight);
    if (report.p1_passed && a_sum < au + av - slack) {
      report.p1_passed = false;
      std::ostringstream os;
      os << "P1 violated at sample " << k << ": alpha(u+v)=" << a_sum
         << " < alpha(u)+alpha(v)=" << au + av;
      report.witness = os.str();
    }

    const double a_scaled = cone_value(alpha, scaled(u, lambda), weight);
    if (report.p2_passed && a_scaled < lambda * au - slack) {
      report.p2_passed = false;
      std::ostringstream os;
      os << "P2 violated at sample " << k << ": alpha(lambda*u)=" << a_scaled
         << " < lambda*alpha(u)=" << lambda * au << " (lambda=" << lambda << ")";
      report.witness = os.str();
    }

    const double a_neg = cone_value(alpha, scaled(u, -1.0), weight);
    if (au >= 0.0 && a_neg >= 0.0) {
      double max_abs_u = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i)
        max_abs_u = std::max(max_abs_u,
                             std::abs(weight.evaluate(grid.nodes_t[i]) * u.values_tilde[i]));
      if (report.p3_passed && max_abs_u > 1e-12 * std::max(1.0, phi_max)) {
        report.p3_passed = false;
        std::ostringstream os;
        os << "P3 violated at sample " << k << ": alpha(u)>=0 and alpha(-u)>=0 but max|u|="
           << max_abs_u;
        report.witness = os.str();
      }
    }
  }
  return report;
}

}  // namespace hammerstein
