#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hammerstein/catalog.hpp"
#include "hammerstein/certify.hpp"
#include "hammerstein/config.hpp"
#include "hammerstein/report.hpp"

namespace hammerstein {

// Exit codes of the batch pipelines.
inline constexpr int kExitCertificate = 0;   // certificate fired / run succeeded
inline constexpr int kExitError = 1;         // runtime error
inline constexpr int kExitNoCertificate = 2; // conditions pass, no T1/T2
inline constexpr int kExitConditionFail = 3; // some hypothesis failed
inline constexpr int kExitTrivial = 4;       // solver collapsed to the trivial fixed point

namespace detail {

struct Instance {
  catalog::CatalogEntry entry;
  ProblemSpec problem;
  CompactGrid grid;
  QuadratureRule rule;
  std::string weight_choice;
};

inline Instance make_instance(const RunSpec& spec) {
  Instance inst;
  inst.entry = catalog::get(spec.problem);
  catalog::Params prm;
  prm.weight_choice = spec.weight_choice;
  prm.amplitude = spec.amplitude;
  prm.decay = spec.decay;
  prm.window_lo = spec.window_lo;
  prm.window_hi = spec.window_hi;
  inst.problem = catalog::instantiate(spec.problem, prm);
  inst.weight_choice = inst.problem.weight.label;
  inst.grid = build_grid(spec.map_scale, spec.n_nodes, inst.problem.weight.positivity_exceptions);
  inst.rule = real_line_rule(inst.grid);
  return inst;
}

inline CertifyConfig certify_config(const RunSpec& spec) {
  CertifyConfig cfg;
  cfg.nodes_per_window_interval = spec.nodes_per_A_interval;
  cfg.tol_spectral = spec.tol_spectral;
  cfg.max_iter = spec.max_iter;
  cfg.seed = spec.seed;
  cfg.sampling.seed = spec.seed;
  return cfg;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  out << content;
}

inline Json config_json(const RunSpec& spec, const std::string& weight_choice) {
  Json j = Json::object();
  j.set("problem", Json::string(spec.problem));
  j.set("weight_choice", Json::string(weight_choice));
  j.set("n_nodes", Json::integer(spec.n_nodes));
  j.set("nodes_per_A_interval", Json::integer(spec.nodes_per_A_interval));
  j.set("tol_spectral", Json::number(spec.tol_spectral));
  j.set("tol_solve", Json::number(spec.tol_solve));
  j.set("max_iter", Json::integer(spec.max_iter));
  j.set("damping", Json::number(spec.damping));
  j.set("seed", Json::integer(static_cast<long long>(spec.seed)));
  j.set("map_scale", Json::number(spec.map_scale));
  j.set("u0_amplitude", Json::number(spec.u0_amplitude));
  j.set("amplitude", Json::number(spec.amplitude));
  j.set("decay", Json::number(spec.decay));
  return j;
}

inline Json conditions_json(const ConditionReport& rep) {
  Json j = Json::object();
  for (int k = 1; k <= 10; ++k)
    j.set("C" + std::to_string(k), Json::string(to_string(rep.c(k))));
  j.set("all_passed", Json::boolean(rep.all_passed()));
  Json w = Json::array();
  for (const ConditionWitness& cw : rep.witnesses) {
    Json e = Json::object();
    e.set("condition", Json::string(cw.condition));
    e.set("detail", Json::string(cw.detail));
    e.set("values", Json::number_array(cw.values.begin(), cw.values.end()));
    w.push(std::move(e));
  }
  j.set("witnesses", std::move(w));
  Json notes = Json::array();
  for (const std::string& n : rep.notes) notes.push(Json::string(n));
  j.set("notes", std::move(notes));
  return j;
}

inline Json estimate_json(const SpectralEstimate& est) {
  Json j = Json::object();
  j.set("radius", Json::number(est.radius));
  j.set("char_value", Json::number(est.char_value));
  j.set("cw_lower", Json::number(est.cw_lower));
  j.set("cw_upper", Json::number(est.cw_upper));
  j.set("iterations", Json::integer(est.iterations));
  j.set("converged", Json::boolean(est.converged));
  return j;
}

inline Json limit_json(const LimitEstimate& e) {
  Json j = Json::object();
  const char* cls = e.cls == LimitClass::finite     ? "finite"
                    : e.cls == LimitClass::infinite ? "infinite"
                    : e.cls == LimitClass::zero     ? "zero"
                                                    : "unresolved";
  j.set("class", Json::string(cls));
  j.set("value", Json::number(e.value));
  j.set("drift", Json::number(e.drift));
  j.set("probe_x", Json::number_array(e.probe_x.begin(), e.probe_x.end()));
  j.set("probe_values", Json::number_array(e.probe_values.begin(), e.probe_values.end()));
  return j;
}

inline Json limits_json(const LimitEstimates& l) {
  Json j = Json::object();
  j.set("f_sup_0", limit_json(l.f_sup_0));
  j.set("f_inf_0", limit_json(l.f_inf_0));
  j.set("f_sup_inf", limit_json(l.f_sup_inf));
  j.set("f_inf_inf", limit_json(l.f_inf_inf));
  return j;
}

inline Json certificate_json(const Certificate& cert) {
  Json j = Json::object();
  j.set("available", Json::boolean(cert.available));
  if (!cert.available) {
    j.set("skip_reason", Json::string(cert.skip_reason));
    j.set("verdict", Json::string("skipped"));
    return j;
  }
  j.set("t1_holds", Json::boolean(cert.t1_holds));
  j.set("t2_holds", Json::boolean(cert.t2_holds));
  const char* verdict = cert.t1_holds && cert.t2_holds ? "T1+T2"
                        : cert.t1_holds               ? "T1"
                        : cert.t2_holds               ? "T2"
                                                      : "none";
  j.set("verdict", Json::string(verdict));
  Json m = Json::object();
  m.set("mu1_minus_f_sup_0", Json::number(cert.margins.mu1_minus_f_sup_0));
  m.set("f_inf_inf_minus_mu2", Json::number(cert.margins.f_inf_inf_minus_mu2));
  m.set("mu1_minus_f_sup_inf", Json::number(cert.margins.mu1_minus_f_sup_inf));
  m.set("f_inf_0_minus_mu2", Json::number(cert.margins.f_inf_0_minus_mu2));
  j.set("margins", std::move(m));
  Json cases = Json::array();
  for (bool b : cert.index_cases) cases.push(Json::boolean(b));
  j.set("index_cases", std::move(cases));
  return j;
}

inline std::string human_summary(const RunSpec& spec, const Certificate& cert) {
  std::ostringstream os;
  os << "problem: " << spec.problem << "\n";
  os << "conditions:";
  for (int k = 1; k <= 10; ++k)
    os << " C" << k << "=" << to_string(cert.condition_report.c(k));
  os << "\n";
  for (const ConditionWitness& w : cert.condition_report.witnesses)
    os << "  witness " << w.condition << ": " << w.detail << "\n";
  if (!cert.available) {
    os << "certificate: skipped (" << cert.skip_reason << ")\n";
    return os.str();
  }
  os << "r(L1) = " << cert.r_L1 << "  [" << cert.est_L1.cw_lower << ", " << cert.est_L1.cw_upper
     << "]\n";
  os << "r(L2|A) = " << cert.r_L2 << "  r(Lbar) = " << cert.r_Lbar << "\n";
  os << "mu(L1) = " << cert.mu_L1 << "  mu(L2) = " << cert.mu_L2
     << "  M~ = " << cert.m_tilde_value << "\n";
  auto lim = [](const LimitEstimate& e) {
    return e.is_infinite() ? std::string("inf")
                           : (std::ostringstream{} << e.value).str();
  };
  os << "f_sup_0 = " << lim(cert.f_limits.f_sup_0) << "  f_inf_0 = " << lim(cert.f_limits.f_inf_0)
     << "  f_sup_inf = " << lim(cert.f_limits.f_sup_inf)
     << "  f_inf_inf = " << lim(cert.f_limits.f_inf_inf) << "\n";
  os << "T1 holds: " << (cert.t1_holds ? "yes" : "no")
     << "   T2 holds: " << (cert.t2_holds ? "yes" : "no") << "\n";
  return os.str();
}

inline std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

/// Full audit pipeline: conditions, spectral values, limits, certificate.
/// Writes report.json and report.txt into the output directory. Exit 0 when
/// the certificate fires, 2 when it does not, 3 on condition failure,
/// 1 on runtime error.
inline int run_analyze(const RunSpec& spec) {
  try {
    const detail::Instance inst = detail::make_instance(spec);
    const Certificate cert =
        existence_certificate(inst.problem, inst.grid, inst.rule, detail::certify_config(spec));

    const int exit_code = cert.condition_report.any_failed() ? kExitConditionFail
                          : cert.available && (cert.t1_holds || cert.t2_holds)
                              ? kExitCertificate
                              : kExitNoCertificate;

    Json j = Json::object();
    j.set("kind", Json::string("analyze"));
    j.set("config", detail::config_json(spec, inst.weight_choice));
    j.set("conditions", detail::conditions_json(cert.condition_report));
    if (cert.available) {
      Json sp = Json::object();
      sp.set("L1", detail::estimate_json(cert.est_L1));
      sp.set("L2_window", detail::estimate_json(cert.est_L2));
      sp.set("Lbar", detail::estimate_json(cert.est_Lbar));
      sp.set("m_tilde", Json::number(cert.m_tilde_value));
      j.set("spectral", std::move(sp));
      j.set("limits", detail::limits_json(cert.f_limits));
    } else {
      j.set("spectral", Json::null());
      j.set("limits", Json::null());
    }
    j.set("certificate", detail::certificate_json(cert));
    j.set("exit_code", Json::integer(exit_code));

    const std::filesystem::path dir(spec.output_dir);
    std::filesystem::create_directories(dir);
    detail::write_file(dir / "report.json", j.dump());
    detail::write_file(dir / "report.txt", detail::human_summary(spec, cert));
    return exit_code;
  } catch (const std::exception& e) {
    std::cerr << "analyze failed: " << e.what() << "\n";
    return kExitError;
  }
}

/// Picard solve from the L1 eigenvector start. Writes solution.csv and
/// solve.json. Exit 0 on a nontrivial converged solution, 4 on trivial
/// collapse, 1 otherwise.
inline int run_solve(const RunSpec& spec) {
  try {
    const detail::Instance inst = detail::make_instance(spec);
    WeightedFunction u0 = eigenvector_init(inst.problem, inst.grid, inst.rule, spec.tol_spectral,
                                           spec.max_iter, spec.seed);
    u0 = scaled(u0, spec.u0_amplitude);
    const SolveResult res =
        picard_solve(inst.problem, u0, spec.damping, spec.tol_solve, spec.max_iter, inst.rule);

    const int exit_code = res.trivial ? kExitTrivial
                          : res.converged ? kExitCertificate
                                          : kExitError;

    std::ostringstream csv;
    csv << "t,tau,u,u_tilde\n";
    csv << "-inf,-1,nan," << detail::csv_number(res.solution.value_at_minus_inf) << "\n";
    for (std::size_t i = 0; i < inst.grid.size(); ++i) {
      const double t = inst.grid.nodes_t[i];
      const double ut = res.solution.values_tilde[i];
      csv << detail::csv_number(t) << "," << detail::csv_number(inst.grid.nodes_tau[i]) << ","
          << detail::csv_number(inst.problem.weight.evaluate(t) * ut) << ","
          << detail::csv_number(ut) << "\n";
    }
    csv << "inf,1,nan," << detail::csv_number(res.solution.value_at_plus_inf) << "\n";

    Json j = Json::object();
    j.set("kind", Json::string("solve"));
    j.set("config", detail::config_json(spec, inst.weight_choice));
    j.set("residual", Json::number(res.residual));
    j.set("iterations", Json::integer(res.iterations));
    j.set("converged", Json::boolean(res.converged));
    j.set("cone_value", Json::number(res.cone_value));
    j.set("phi_norm", Json::number(phi_norm(res.solution)));
    j.set("damping_used", Json::number(res.damping_used));
    j.set("restarted", Json::boolean(res.restarted));
    j.set("trivial", Json::boolean(res.trivial));
    j.set("exit_code", Json::integer(exit_code));

    const std::filesystem::path dir(spec.output_dir);
    std::filesystem::create_directories(dir);
    detail::write_file(dir / "solution.csv", csv.str());
    detail::write_file(dir / "solve.json", j.dump());
    return exit_code;
  } catch (const std::exception& e) {
    std::cerr << "solve failed: " << e.what() << "\n";
    return kExitError;
  }
}

/// Spectral summary: radii, characteristic values, brackets, M~, and
/// node-doubling deltas. Writes spectral.json. Exit 0, or 1 on error.
inline int run_spectral(const RunSpec& spec) {
  try {
    const detail::Instance inst = detail::make_instance(spec);
    const QuadratureRule rule_A = compact_rule(inst.problem.window_A, spec.nodes_per_A_interval);

    const SpectralEstimate e1 = power_iteration(assemble_L1(inst.problem, inst.grid, inst.rule),
                                                spec.tol_spectral, spec.max_iter, spec.seed);
    const SpectralEstimate e2 = power_iteration(assemble_L2_on_window(inst.problem, rule_A),
                                                spec.tol_spectral, spec.max_iter, spec.seed);
    const SpectralEstimate eb = power_iteration(assemble_Lbar(inst.problem, rule_A),
                                                spec.tol_spectral, spec.max_iter, spec.seed);
    const double mt = m_tilde(inst.problem, rule_A);

    const CompactGrid grid2 =
        build_grid(spec.map_scale, spec.n_nodes * 2, inst.problem.weight.positivity_exceptions);
    const SpectralEstimate e1d =
        power_iteration(assemble_L1(inst.problem, grid2, real_line_rule(grid2)),
                        spec.tol_spectral, spec.max_iter, spec.seed);

    const OrderingReport ord =
        ordering_check(e1.char_value, e2.char_value, mt, e1.radius);

    Json j = Json::object();
    j.set("kind", Json::string("spectral"));
    j.set("config", detail::config_json(spec, inst.weight_choice));
    j.set("L1", detail::estimate_json(e1));
    j.set("L2_window", detail::estimate_json(e2));
    j.set("Lbar", detail::estimate_json(eb));
    j.set("m_tilde", Json::number(mt));
    Json dbl = Json::object();
    dbl.set("r_L1_doubled", Json::number(e1d.radius));
    dbl.set("r_L1_delta_rel",
            Json::number(std::abs(e1d.radius - e1.radius) / std::max(e1.radius, 1e-300)));
    j.set("doubling", std::move(dbl));
    Json o = Json::object();
    o.set("passed", Json::boolean(ord.passed));
    o.set("gap_m_tilde_mu2", Json::number(ord.gap_m_tilde_mu2));
    o.set("gap_mu2_mu1", Json::number(ord.gap_mu2_mu1));
    o.set("gap_r1_lower_bound", Json::number(ord.gap_r1_lower_bound));
    j.set("ordering", std::move(o));

    const std::filesystem::path dir(spec.output_dir);
    std::filesystem::create_directories(dir);
    detail::write_file(dir / "spectral.json", j.dump());
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "spectral failed: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace hammerstein
