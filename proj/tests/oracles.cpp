#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracles {

using std::numbers::pi;

double r_L1_closed_form() {
  const double q = std::exp(-pi / 2.0);
  return 2.0 * (1.0 + q) / ((1.0 - q) * 1.25);
}

double r_L2_closed_form() {
  return (std::numbers::sqrt2 / 5.0) * (std::exp(-3.0 * pi / 8.0) + 3.0 * std::exp(-pi / 8.0));
}

double m_tilde_inv_closed_form() {
  return std::numbers::sqrt2 * std::exp(-3.0 * pi / 8.0) * (std::exp(pi / 4.0) - 1.0);
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b, double fb,
               double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, double a, double fa, double b, double fb,
              double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  if (depth > 48 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return refine(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
         refine(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  return refine(f, a, fa, b, fb, m, fm, simpson(f, a, fa, b, fb, m, fm), tol, 0);
}

double solution_coefficient_I(double tol) {
  const auto integrand = [](double s) {
    const double si = std::abs(std::sin(s));
    return std::exp(-0.5 * s) * si * si * std::sqrt(si);
  };
  double total = 0.0;
  for (int k = 0;; ++k) {
    const double a = k * pi, b = (k + 1) * pi;
    const double piece = adaptive_simpson(integrand, a, b, tol);
    total += piece;
    if (std::exp(-0.5 * b) < 1e-16) break;
  }
  return 2.0 * total;
}

}  // namespace oracles
