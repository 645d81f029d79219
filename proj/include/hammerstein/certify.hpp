#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "hammerstein/conditions.hpp"
#include "hammerstein/operators.hpp"
#include "hammerstein/spectral.hpp"

namespace hammerstein {

/// Signed gaps behind the two existence conditions; +inf when the
/// corresponding limit is infinite.
struct CertificateMargins {
  double mu1_minus_f_sup_0 = 0.0;    // first clause of T1
  double f_inf_inf_minus_mu2 = 0.0;  // second clause of T1
  double mu1_minus_f_sup_inf = 0.0;  // first clause of T2
  double f_inf_0_minus_mu2 = 0.0;    // second clause of T2
};

/// Existence certificate: hypothesis audit, spectral values, nonlinearity
/// limits, and the T1/T2 verdict with margins. When the window hypothesis
/// C6 fails the certificate is skipped and only the condition report is
/// meaningful.
struct Certificate {
  bool available = false;
  std::string skip_reason;

  double r_L1 = 0.0;
  double r_L2 = 0.0;
  double r_Lbar = 0.0;
  double mu_L1 = std::numeric_limits<double>::infinity();
  double mu_L2 = std::numeric_limits<double>::infinity();
  double m_tilde_value = 0.0;
  SpectralEstimate est_L1, est_L2, est_Lbar;

  LimitEstimates f_limits;
  bool t1_holds = false;
  bool t2_holds = false;
  CertificateMargins margins;
  // Active index-theorem hypotheses:
  // [0] f_sup_0 < mu1, [1] f_sup_inf < mu1, [2] mu2 < f_inf_0, [3] mu2 < f_inf_inf
  std::array<bool, 4> index_cases{};
  ConditionReport condition_report;
};

struct CertifyConfig {
  int nodes_per_window_interval = 64;
  double tol_spectral = 1e-10;
  int max_iter = 10000;
  std::uint64_t seed = 42;
  double strict_tol = 1e-9;  // slack for the strict inequalities
  SamplingConfig sampling;
  LimitConfig limits;
};

namespace detail {

// gap of "limit < bound": +inf when the limit is 0-class or the bound wins
// by an infinite amount; -inf when the limit is infinite.
inline double upper_gap(double bound, const LimitEstimate& lim) {
  if (lim.is_infinite()) return -std::numeric_limits<double>::infinity();
  return bound - lim.value;
}

// gap of "limit > bound": +inf when the limit is infinite.
inline double lower_gap(const LimitEstimate& lim, double bound) {
  if (lim.is_infinite()) return std::numeric_limits<double>::infinity();
  return lim.value - bound;
}

}  // namespace detail

/// Runs the full audit pipeline and evaluates the T1/T2 existence
/// conditions with a strictness tolerance on finite margins.
inline Certificate existence_certificate(const ProblemSpec& p, const CompactGrid& grid,
                                         const QuadratureRule& rule,
                                         const CertifyConfig& cfg = {}) {
  Certificate cert;
  cert.condition_report = check_conditions(p, grid, rule, cfg.sampling);

  if (cert.condition_report.c(6) == ConditionStatus::failed) {
    cert.available = false;
    cert.skip_reason =
        "C6 failed: the window characteristic value mu(L2) is unavailable, certificate skipped";
    return cert;
  }

  const QuadratureRule rule_A = compact_rule(p.window_A, cfg.nodes_per_window_interval);
  cert.est_L1 = power_iteration(assemble_L1(p, grid, rule), cfg.tol_spectral, cfg.max_iter,
                                cfg.seed);
  cert.est_L2 = power_iteration(assemble_L2_on_window(p, rule_A), cfg.tol_spectral, cfg.max_iter,
                                cfg.seed);
  cert.est_Lbar = power_iteration(assemble_Lbar(p, rule_A), cfg.tol_spectral, cfg.max_iter,
                                  cfg.seed);
  cert.r_L1 = cert.est_L1.radius;
  cert.r_L2 = cert.est_L2.radius;
  cert.r_Lbar = cert.est_Lbar.radius;
  cert.mu_L1 = cert.est_L1.char_value;
  cert.mu_L2 = cert.est_L2.char_value;
  cert.m_tilde_value = m_tilde(p, rule_A);
  cert.f_limits = estimate_limits(p, grid, p.window_A, cfg.limits);

  cert.margins.mu1_minus_f_sup_0 = detail::upper_gap(cert.mu_L1, cert.f_limits.f_sup_0);
  cert.margins.f_inf_inf_minus_mu2 = detail::lower_gap(cert.f_limits.f_inf_inf, cert.mu_L2);
  cert.margins.mu1_minus_f_sup_inf = detail::upper_gap(cert.mu_L1, cert.f_limits.f_sup_inf);
  cert.margins.f_inf_0_minus_mu2 = detail::lower_gap(cert.f_limits.f_inf_0, cert.mu_L2);

  cert.index_cases[0] = cert.margins.mu1_minus_f_sup_0 > cfg.strict_tol;
  cert.index_cases[1] = cert.margins.mu1_minus_f_sup_inf > cfg.strict_tol;
  cert.index_cases[2] = cert.margins.f_inf_0_minus_mu2 > cfg.strict_tol;
  cert.index_cases[3] = cert.margins.f_inf_inf_minus_mu2 > cfg.strict_tol;

  cert.t1_holds = cert.index_cases[0] && cert.index_cases[3];
  cert.t2_holds = cert.index_cases[1] && cert.index_cases[2];
  cert.available = true;
  return cert;
}

struct OrderingReport {
  bool passed = false;
  double gap_m_tilde_mu2 = 0.0;   // m_tilde - mu2
  double gap_mu2_mu1 = 0.0;       // mu2 - mu1
  double gap_r1_lower_bound = 0.0;  // r1 - 1/(2 m_tilde)
};

/// Checks m_tilde >= mu(L2) >= mu(L1) and r(L1) >= 1/(2 m_tilde), each with
/// relative slack 1e-6.
inline OrderingReport ordering_check(double mu1, double mu2, double m_tilde_value, double r1) {
  if (!(mu1 > 0.0) || !(mu2 > 0.0) || !(m_tilde_value > 0.0) || !(r1 > 0.0) ||
      !std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(m_tilde_value) ||
      !std::isfinite(r1))
    throw std::invalid_argument("ordering_check: inputs must be positive and finite");
  OrderingReport rep;
  rep.gap_m_tilde_mu2 = m_tilde_value - mu2;
  rep.gap_mu2_mu1 = mu2 - mu1;
  rep.gap_r1_lower_bound = r1 - 1.0 / (2.0 * m_tilde_value);
  const double slack = 1e-6;
  rep.passed = rep.gap_m_tilde_mu2 >= -slack * m_tilde_value &&
               rep.gap_mu2_mu1 >= -slack * mu2 &&
               rep.gap_r1_lower_bound >= -slack * r1;
  return rep;
}

/// phi-norm of u - T u.
inline double residual(const ProblemSpec& p, const WeightedFunction& u,
                       const QuadratureRule& rule) {
  return phi_norm(axpy(1.0, u, -1.0, apply_T(p, u, rule)));
}

struct SolveResult {
  WeightedFunction solution;
  double residual = 0.0;
  double cone_value = 0.0;
  int iterations = 0;
  bool converged = false;
  double damping_used = 1.0;
  bool restarted = false;
  bool trivial = false;
};

/// Power-iteration eigenvector of L1 as a weighted function, normalized to
/// phi-norm 1; the customary starting iterate for the solver.
inline WeightedFunction eigenvector_init(const ProblemSpec& p, const CompactGrid& grid,
                                         const QuadratureRule& rule, double tol = 1e-10,
                                         int max_iter = 10000, std::uint64_t seed = 42) {
  const SpectralEstimate est = power_iteration(assemble_L1(p, grid, rule), tol, max_iter, seed);
  std::vector<double> vals(est.eigenvector.data(), est.eigenvector.data() + est.eigenvector.size());
  WeightedFunction u = detail::from_row_values(grid, std::move(vals));
  const double nrm = phi_norm(u);
  return nrm > 0.0 ? scaled(u, 1.0 / nrm) : u;
}

/// Damped Picard iteration u <- (1-d) u + d T(u). Stops when the residual
/// drops below tol. A collapse of the iterate toward the trivial fixed
/// point triggers one restart from 10x the initial amplitude with halved
/// damping; a second collapse ends the run flagged trivial.
inline SolveResult picard_solve(const ProblemSpec& p, const WeightedFunction& u0, double damping,
                                double tol, int max_iter, const QuadratureRule& rule) {
  if (!(damping > 0.0) || damping > 1.0)
    throw std::invalid_argument("picard_solve: damping must lie in (0,1]");
  if (!(tol > 0.0)) throw std::invalid_argument("picard_solve: tol must be positive");

  constexpr double kCollapse = 1e-10;
  SolveResult out{u0};
  out.damping_used = damping;
  WeightedFunction u = u0;

  for (int it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    const WeightedFunction tu = apply_T(p, u, rule);
    out.residual = phi_norm(axpy(1.0, u, -1.0, tu));

    if (phi_norm(u) < kCollapse) {
      if (!out.restarted) {
        out.restarted = true;
        out.damping_used = 0.5 * out.damping_used;
        u = scaled(u0, 10.0);
        continue;
      }
      out.trivial = true;
      out.converged = out.residual < tol;
      break;
    }
    if (out.residual < tol) {
      out.converged = true;
      break;
    }
    u = axpy(1.0 - out.damping_used, u, out.damping_used, tu);
  }

  out.solution = u;
  out.trivial = out.trivial || phi_norm(u) < kCollapse;
  out.cone_value = cone_value(p.cone, u, p.weight);
  return out;
}

}  // namespace hammerstein
