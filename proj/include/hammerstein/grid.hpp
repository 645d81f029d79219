#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hammerstein/gauss.hpp"

namespace hammerstein {

/// Minimum distance kept between grid nodes and excluded points.
inline constexpr double kExclusionRadius = 1e-9;

/// Algebraic compactification of the real line: t = L*tau/(1-tau^2) maps
/// (-1,1) onto R, with tau = +-1 standing for +-infinity. The factored
/// forms below stay accurate near tau = +-1 and t = 0.
inline double map_tau_to_t(double tau, double map_scale) {
  return map_scale * tau / ((1.0 - tau) * (1.0 + tau));
}

inline double map_t_to_tau(double t, double map_scale) {
  const double a = t / map_scale;
  return 2.0 * a / (1.0 + std::sqrt(1.0 + 4.0 * a * a));
}

inline double map_jacobian(double tau, double map_scale) {
  const double d = (1.0 - tau) * (1.0 + tau);
  return map_scale * (1.0 + tau * tau) / (d * d);
}

/// Compactified grid over the extended real line. Interior nodes live in
/// tau coordinates in (-1,1) with their mapped real coordinates alongside;
/// the boundary points tau = +-1 are carried as infinity markers.
struct CompactGrid {
  double map_scale = 1.0;
  std::vector<double> nodes_tau;
  std::vector<double> nodes_t;
  bool includes_infinities = true;
  std::vector<double> excluded_points;

  std::size_t size() const { return nodes_tau.size(); }
};

/// Positive weight function phi. Zeros of phi must be listed as
/// positivity exceptions so grids can be built to avoid them.
struct Weight {
  std::function<double(double)> evaluate;
  std::string label;
  std::vector<double> positivity_exceptions;

  double operator()(double t) const { return evaluate(t); }
};

/// Throws unless phi is strictly positive and finite at every grid node.
inline void validate_weight_on_grid(const Weight& w, const CompactGrid& g) {
  for (double t : g.nodes_t) {
    const double p = w.evaluate(t);
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::runtime_error("weight '" + w.label + "' is not strictly positive at grid node t=" +
                               std::to_string(t));
  }
}

namespace detail {

// Panel boundaries in tau for the composite rule: dyadic refinement toward
// both endpoints, split at 0. A kink of |.| at the origin lands on a panel
// boundary; tail panels track the map's compression of large |t|.
inline std::vector<double> panel_boundaries(int n_nodes) {
  const int levels = std::min(5, std::max(1, n_nodes / 4));
  std::vector<double> pos;
  pos.push_back(0.0);
  for (int j = 1; j < levels; ++j) pos.push_back(1.0 - std::ldexp(1.0, -j));
  pos.push_back(1.0);
  std::vector<double> bounds;
  for (std::size_t i = pos.size(); i-- > 1;) bounds.push_back(-pos[i]);
  for (double b : pos) bounds.push_back(b);
  return bounds;
}

// Composite Gauss-Legendre nodes and tau-space weights on (-1,1),
// n nodes total spread as evenly as possible across the panels.
inline std::pair<std::vector<double>, std::vector<double>> composite_tau_rule(int n_nodes) {
  const std::vector<double> bounds = panel_boundaries(n_nodes);
  const int panels = static_cast<int>(bounds.size()) - 1;
  const int q = n_nodes / panels;
  const int r = n_nodes % panels;
  std::vector<double> tau, wtau;
  tau.reserve(n_nodes);
  wtau.reserve(n_nodes);
  for (int p = 0; p < panels; ++p) {
    const int count = q + (p < r ? 1 : 0);
    if (count == 0) continue;
    const auto [x, w] = gauss_legendre(count);
    const double half = 0.5 * (bounds[p + 1] - bounds[p]);
    const double mid = 0.5 * (bounds[p + 1] + bounds[p]);
    for (int i = 0; i < count; ++i) {
      tau.push_back(mid + half * x[i]);
      wtau.push_back(half * w[i]);
    }
  }
  return {tau, wtau};
}

}  // namespace detail

/// Builds the compactified grid: composite Gauss-Legendre tau-nodes through
/// the algebraic map, shifted minimally away from any excluded point.
inline CompactGrid build_grid(double map_scale, int n_interior,
                              const std::vector<double>& excluded = {}) {
  if (!std::isfinite(map_scale) || !(map_scale > 0.0))
    throw std::invalid_argument("build_grid: map_scale must be positive and finite");
  if (n_interior < 8) throw std::invalid_argument("build_grid: n_interior must be >= 8");

  CompactGrid g;
  g.map_scale = map_scale;
  g.excluded_points = excluded;
  auto [tau, wtau] = detail::composite_tau_rule(n_interior);
  (void)wtau;

  auto conflicted = [&](double t) {
    for (double e : excluded)
      if (std::abs(t - e) < kExclusionRadius) return true;
    return false;
  };

  for (std::size_t i = 0; i < tau.size(); ++i) {
    double ti = map_tau_to_t(tau[i], map_scale);
    if (conflicted(ti)) {
      const double left_gap = (i > 0) ? tau[i] - tau[i - 1] : tau[i] + 1.0;
      const double right_gap = (i + 1 < tau.size()) ? tau[i + 1] - tau[i] : 1.0 - tau[i];
      const double cap = 0.5 * std::min(left_gap, right_gap);
      double step = std::max(2.0 * kExclusionRadius / map_jacobian(tau[i], map_scale), 1e-15);
      bool resolved = false;
      while (step <= cap && !resolved) {
        for (double candidate : {tau[i] + step, tau[i] - step}) {
          const double tc = map_tau_to_t(candidate, map_scale);
          if (!conflicted(tc)) {
            tau[i] = candidate;
            ti = tc;
            resolved = true;
            break;
          }
        }
        step *= 2.0;
      }
      if (!resolved)
        throw std::runtime_error("build_grid: cannot shift node away from excluded point");
    }
    g.nodes_tau.push_back(tau[i]);
    g.nodes_t.push_back(ti);
  }

  for (std::size_t i = 1; i < g.nodes_tau.size(); ++i)
    if (!(g.nodes_tau[i] > g.nodes_tau[i - 1]))
      throw std::runtime_error("build_grid: tau nodes not strictly increasing");
  return g;
}

}  // namespace hammerstein
