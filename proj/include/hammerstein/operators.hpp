#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hammerstein/problem.hpp"
#include "hammerstein/quadrature.hpp"
#include "hammerstein/weighted.hpp"

namespace hammerstein {

enum class OperatorTag { L1, L2, L2_window, Lbar };

/// Dense Nystrom discretization of a linear integral operator. Rows are
/// indexed by row_points (grid nodes, or the window rule's nodes for the
/// restricted forms); columns by the quadrature rule. For the weighted
/// operators, matrix * u_tilde approximates (L u)/phi at the row points.
struct NystromOperator {
  Eigen::MatrixXd matrix;
  std::vector<double> row_points;
  QuadratureRule rule;
  OperatorTag tag = OperatorTag::L1;

  bool square() const { return matrix.rows() == matrix.cols(); }
};

namespace detail {

inline void check_entry_finite(double v, double t, double s) {
  if (!std::isfinite(v))
    throw std::runtime_error("operator assembly: non-finite kernel value at (t=" +
                             std::to_string(t) + ", s=" + std::to_string(s) + ")");
}

}  // namespace detail

/// |k eta| in weighted coordinates over the real-line rule.
/// matrix[i][j] = |k(t_i,s_j) eta(s_j)| phi(s_j) w_j / phi(t_i).
inline NystromOperator assemble_L1(const ProblemSpec& p, const CompactGrid& grid,
                                   const QuadratureRule& rule) {
  if (rule.domain_tag != DomainTag::real_line)
    throw std::invalid_argument("assemble_L1: rule must cover the real line");
  validate_weight_on_grid(p.weight, grid);
  NystromOperator op;
  op.tag = OperatorTag::L1;
  op.row_points = grid.nodes_t;
  op.rule = rule;
  const auto n = static_cast<Eigen::Index>(grid.size());
  const auto m = static_cast<Eigen::Index>(rule.size());
  op.matrix.resize(n, m);
  std::vector<double> phi_s(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) phi_s[j] = p.weight.evaluate(rule.nodes[j]);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ti = grid.nodes_t[static_cast<std::size_t>(i)];
    const double phi_t = p.weight.evaluate(ti);
    for (Eigen::Index j = 0; j < m; ++j) {
      const double sj = rule.nodes[static_cast<std::size_t>(j)];
      const double ke = p.kernel_eta(ti, sj);
      detail::check_entry_finite(ke, ti, sj);
      op.matrix(i, j) = std::abs(ke) * phi_s[static_cast<std::size_t>(j)] *
                        rule.weights[static_cast<std::size_t>(j)] / phi_t;
    }
  }
  return op;
}

/// Positive part (k eta)^+ over the window rule; rows span the full grid.
inline NystromOperator assemble_L2(const ProblemSpec& p, const CompactGrid& grid,
                                   const QuadratureRule& rule_A) {
  if (rule_A.domain_tag != DomainTag::compact_union)
    throw std::invalid_argument("assemble_L2: rule must be a compact rule over the window");
  validate_weight_on_grid(p.weight, grid);
  NystromOperator op;
  op.tag = OperatorTag::L2;
  op.row_points = grid.nodes_t;
  op.rule = rule_A;
  const auto n = static_cast<Eigen::Index>(grid.size());
  const auto m = static_cast<Eigen::Index>(rule_A.size());
  op.matrix.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ti = grid.nodes_t[static_cast<std::size_t>(i)];
    const double phi_t = p.weight.evaluate(ti);
    for (Eigen::Index j = 0; j < m; ++j) {
      const double sj = rule_A.nodes[static_cast<std::size_t>(j)];
      const double ke = p.kernel_eta(ti, sj);
      detail::check_entry_finite(ke, ti, sj);
      op.matrix(i, j) = std::max(ke, 0.0) * p.weight.evaluate(sj) *
                        rule_A.weights[static_cast<std::size_t>(j)] / phi_t;
    }
  }
  return op;
}

/// Square restriction of the positive-part operator to the window's own
/// quadrature nodes; this is the composition that carries the nonzero
/// spectrum of the rectangular form.
inline NystromOperator assemble_L2_on_window(const ProblemSpec& p, const QuadratureRule& rule_A) {
  if (rule_A.domain_tag != DomainTag::compact_union)
    throw std::invalid_argument("assemble_L2_on_window: rule must be a compact rule");
  NystromOperator op;
  op.tag = OperatorTag::L2_window;
  op.row_points = rule_A.nodes;
  op.rule = rule_A;
  const auto m = static_cast<Eigen::Index>(rule_A.size());
  op.matrix.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double ti = rule_A.nodes[static_cast<std::size_t>(i)];
    const double phi_t = p.weight.evaluate(ti);
    for (Eigen::Index j = 0; j < m; ++j) {
      const double sj = rule_A.nodes[static_cast<std::size_t>(j)];
      const double ke = p.kernel_eta(ti, sj);
      detail::check_entry_finite(ke, ti, sj);
      op.matrix(i, j) = std::max(ke, 0.0) * p.weight.evaluate(sj) *
                        rule_A.weights[static_cast<std::size_t>(j)] / phi_t;
    }
  }
  return op;
}

/// Unweighted operator on the window: entries k(t_i,s_j) eta(s_j) w_j on
/// the window rule's nodes. Requires k*eta >= 0 on A x A.
inline NystromOperator assemble_Lbar(const ProblemSpec& p, const QuadratureRule& rule_A) {
  if (rule_A.domain_tag != DomainTag::compact_union)
    throw std::invalid_argument("assemble_Lbar: rule must be a compact rule");
  NystromOperator op;
  op.tag = OperatorTag::Lbar;
  op.row_points = rule_A.nodes;
  op.rule = rule_A;
  const auto m = static_cast<Eigen::Index>(rule_A.size());
  op.matrix.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double ti = rule_A.nodes[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m; ++j) {
      const double sj = rule_A.nodes[static_cast<std::size_t>(j)];
      const double ke = p.kernel_eta(ti, sj);
      detail::check_entry_finite(ke, ti, sj);
      if (ke < -1e-12)
        throw std::runtime_error("assemble_Lbar: sign condition violated, k*eta=" +
                                 std::to_string(ke) + " at (t=" + std::to_string(ti) +
                                 ", s=" + std::to_string(sj) + ")");
      op.matrix(i, j) = std::max(ke, 0.0) * rule_A.weights[static_cast<std::size_t>(j)];
    }
  }
  return op;
}

namespace detail {

// Linear extrapolation in tau of the two outermost samples to tau = +-1.
inline double extrapolate_to_boundary(double tau0, double v0, double tau1, double v1,
                                      double tau_end) {
  if (tau1 == tau0) return v1;
  return v1 + (v1 - v0) * (tau_end - tau1) / (tau1 - tau0);
}

// Builds a weighted function from row samples, filling the infinity values
// by linear extrapolation in tau from the two outermost rows.
inline WeightedFunction from_row_values(const CompactGrid& grid, std::vector<double> values) {
  const std::size_t n = values.size();
  double vm = 0.0, vp = 0.0;
  if (n >= 2) {
    vm = extrapolate_to_boundary(grid.nodes_tau[1], values[1], grid.nodes_tau[0], values[0], -1.0);
    vp = extrapolate_to_boundary(grid.nodes_tau[n - 2], values[n - 2], grid.nodes_tau[n - 1],
                                 values[n - 1], 1.0);
  } else if (n == 1) {
    vm = vp = values[0];
  }
  return WeightedFunction(grid, std::move(values), vm, vp);
}

}  // namespace detail

/// One application of the Hammerstein operator in weighted coordinates:
/// (Tu)/phi sampled at the grid rows, with u read through the piecewise
/// linear interpolant at the rule nodes and the infinity values filled by
/// extrapolation in tau.
inline WeightedFunction apply_T(const ProblemSpec& p, const WeightedFunction& u,
                                const QuadratureRule& rule) {
  if (rule.domain_tag != DomainTag::real_line)
    throw std::invalid_argument("apply_T: rule must cover the real line");
  const CompactGrid& grid = u.grid;
  std::vector<double> f_vals(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double sj = rule.nodes[j];
    const double us = p.weight.evaluate(sj) * interp_tilde(u, map_t_to_tau(sj, grid.map_scale));
    const double fv = p.nonlinearity(sj, us);
    if (!std::isfinite(fv))
      throw std::runtime_error("apply_T: non-finite nonlinearity value at s=" +
                               std::to_string(sj));
    f_vals[j] = fv * rule.weights[j];
  }
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ti = grid.nodes_t[i];
    double acc = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) acc += p.kernel_eta(ti, rule.nodes[j]) * f_vals[j];
    out[i] = acc / p.weight.evaluate(ti);
  }
  return detail::from_row_values(grid, std::move(out));
}

}  // namespace hammerstein
