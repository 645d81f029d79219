#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hammerstein/gauss.hpp"
#include "hammerstein/grid.hpp"
#include "hammerstein/interval.hpp"

namespace hammerstein {

enum class DomainTag { real_line, compact_union };

/// Quadrature rule in real coordinates. For real-line rules the nodes are a
/// compactified grid's mapped nodes and the weights carry the map Jacobian.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  DomainTag domain_tag = DomainTag::real_line;
  int order = 0;
  IntervalUnion intervals;  // populated for compact_union rules

  std::size_t size() const { return nodes.size(); }
};

/// Rule over the whole real line sharing the grid's nodes: tau-space
/// Legendre weights times the map Jacobian at each (possibly shifted) node.
inline QuadratureRule real_line_rule(const CompactGrid& grid) {
  if (grid.size() == 0) throw std::invalid_argument("real_line_rule: empty grid");
  QuadratureRule rule;
  rule.domain_tag = DomainTag::real_line;
  rule.order = static_cast<int>(grid.size());
  auto [tau, wtau] = detail::composite_tau_rule(rule.order);
  rule.nodes = grid.nodes_t;
  rule.weights.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    rule.weights[i] = wtau[i] * map_jacobian(grid.nodes_tau[i], grid.map_scale);
  return rule;
}

/// Per-interval Gauss-Legendre rule over a disjoint union of compact
/// intervals, concatenated in ascending order.
inline QuadratureRule compact_rule(const IntervalUnion& intervals, int points_per_interval) {
  validate_interval_union(intervals);
  if (points_per_interval < 4)
    throw std::invalid_argument("compact_rule: points_per_interval must be >= 4");
  QuadratureRule rule;
  rule.domain_tag = DomainTag::compact_union;
  rule.order = points_per_interval;
  rule.intervals = sorted_union(intervals);
  const auto [x, w] = detail::gauss_legendre(points_per_interval);
  for (const Interval& iv : rule.intervals) {
    const double half = 0.5 * iv.length();
    const double mid = 0.5 * (iv.lo + iv.hi);
    for (int i = 0; i < points_per_interval; ++i) {
      rule.nodes.push_back(mid + half * x[i]);
      rule.weights.push_back(half * w[i]);
    }
  }
  return rule;
}

/// Weighted sum of the integrand over the rule nodes, summed left to right.
/// A non-finite evaluation aborts with the offending node index.
inline double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v))
      throw std::runtime_error("integrate: non-finite integrand at node index " +
                               std::to_string(i) + " (t=" + std::to_string(rule.nodes[i]) + ")");
    acc += rule.weights[i] * v;
  }
  return acc;
}

}  // namespace hammerstein
