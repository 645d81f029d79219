#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>

#include "hammerstein/operators.hpp"
#include "hammerstein/rng.hpp"

namespace hammerstein {

/// Dominant-eigenvalue estimate for a nonnegative matrix: the radius, its
/// reciprocal characteristic value, the nonnegative eigenvector (max entry
/// 1), and the Collatz-Wielandt bracket evaluated at that eigenvector.
struct SpectralEstimate {
  double radius = 0.0;
  double char_value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd eigenvector;
  double cw_lower = 0.0;
  double cw_upper = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// min and max of (M v)_i / v_i over a strictly positive test vector;
/// these bracket the matrix spectral radius.
inline std::pair<double, double> collatz_wielandt_bounds(const NystromOperator& op,
                                                         const Eigen::VectorXd& v) {
  if (!op.square()) throw std::invalid_argument("collatz_wielandt_bounds: matrix must be square");
  if (v.size() != op.matrix.rows())
    throw std::invalid_argument("collatz_wielandt_bounds: dimension mismatch");
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!(v(i) > 0.0))
      throw std::invalid_argument("collatz_wielandt_bounds: test vector must be strictly positive");
  const Eigen::VectorXd w = op.matrix * v;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double r = w(i) / v(i);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

/// Power iteration with sup-norm normalization. Starts from the all-ones
/// vector with a seeded perturbation of magnitude 1e-3; convergence is
/// declared when the Collatz-Wielandt ratio spread over the support drops
/// below tol * radius. The returned radius is the bracket midpoint at the
/// returned eigenvector, so cw_lower <= radius <= cw_upper by construction.
inline SpectralEstimate power_iteration(const NystromOperator& op, double tol, int max_iter,
                                        std::uint64_t seed) {
  if (!op.square()) throw std::invalid_argument("power_iteration: matrix must be square");
  if (!(tol > 0.0)) throw std::invalid_argument("power_iteration: tol must be positive");
  const Eigen::Index n = op.matrix.rows();

  SpectralEstimate est;
  detail::Rng rng(seed);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 1e-3 * rng.uniform01();
  v /= v.maxCoeff();

  auto zero_result = [&](int iters) {
    est.radius = 0.0;
    est.char_value = std::numeric_limits<double>::infinity();
    est.eigenvector = v;
    est.cw_lower = 0.0;
    est.cw_upper = 0.0;
    est.iterations = iters;
    est.converged = true;
    return est;
  };

  if (op.matrix.size() == 0 || op.matrix.maxCoeff() == 0.0) return zero_result(0);

  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::VectorXd w = op.matrix * v;
    const double wmax = w.maxCoeff();
    if (wmax == 0.0) return zero_result(it);

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (v(i) > 0.0) {
        const double r = w(i) / v(i);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    }
    est.iterations = it;
    est.cw_lower = lo;
    est.cw_upper = hi;
    est.radius = 0.5 * (lo + hi);
    est.char_value = est.radius > 0.0 ? 1.0 / est.radius
                                      : std::numeric_limits<double>::infinity();
    est.eigenvector = v;
    if (hi - lo <= tol * std::max(hi, std::numeric_limits<double>::min())) {
      est.converged = true;
      return est;
    }
    v = w / wmax;
  }
  est.converged = false;
  return est;
}

/// M~ = 1 / inf over the window of the window integral of k*eta, the
/// infimum resolved by equispaced probe points per interval. Throws when
/// the sign condition fails or the infimum is not positive.
inline double m_tilde(const ProblemSpec& p, const QuadratureRule& rule_A,
                      int probe_points_per_interval = 257) {
  if (rule_A.domain_tag != DomainTag::compact_union)
    throw std::invalid_argument("m_tilde: rule must be a compact rule over the window");
  if (probe_points_per_interval < 2)
    throw std::invalid_argument("m_tilde: need at least 2 probe points per interval");

  double inf_val = std::numeric_limits<double>::infinity();
  for (const Interval& iv : rule_A.intervals) {
    for (int i = 0; i < probe_points_per_interval; ++i) {
      const double t = iv.lo + iv.length() * i / (probe_points_per_interval - 1);
      double acc = 0.0;
      for (std::size_t j = 0; j < rule_A.size(); ++j) {
        const double ke = p.kernel_eta(t, rule_A.nodes[j]);
        if (!std::isfinite(ke))
          throw std::runtime_error("m_tilde: non-finite kernel value at t=" + std::to_string(t));
        if (ke < -1e-12)
          throw std::runtime_error("m_tilde: sign condition violated at (t=" + std::to_string(t) +
                                   ", s=" + std::to_string(rule_A.nodes[j]) + ")");
        acc += ke * rule_A.weights[j];
      }
      inf_val = std::min(inf_val, acc);
    }
  }
  if (!(inf_val > 1e-14))
    throw std::runtime_error("m_tilde: window integral infimum is not positive (value " +
                             std::to_string(inf_val) + ")");
  return 1.0 / inf_val;
}

}  // namespace hammerstein
