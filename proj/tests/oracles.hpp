#pragma once

#include <functional>

// Independent reference values and integrators used by the tests only.
// Nothing here goes through the library's quadrature machinery.
namespace oracles {

// Closed forms for the bundled sine/exponential problem, evaluated from
// their formulas (decay 1/2, window [pi/4, 3pi/4]).
double r_L1_closed_form();        // int_R e^{-|s|/2} |sin s| ds
double r_L2_closed_form();        // int_{pi/4}^{3pi/4} e^{-s/2} sin s ds
double m_tilde_inv_closed_form(); // sqrt2 e^{-3pi/8} (e^{pi/4} - 1)

// Frozen high-precision evaluations of the same formulas; the *_closed_form
// functions are checked against these in the test suites.
inline constexpr double kR1 = 2.4397897901153024;
inline constexpr double kR2 = 0.66003035280754732;
inline constexpr double kMTildeInv = 0.51953671652083892;
inline constexpr double kMTilde = 1.9247917773678454;
inline constexpr double kMu1 = 0.40987137664542027;
inline constexpr double kMu2 = 1.5150818378978119;
inline constexpr double kSolutionI = 1.7136251709522995;   // 2 int_0^inf e^{-s/2}|sin s|^{5/2} ds
inline constexpr double kSolutionCoeff = 2.9365112265212976;  // kSolutionI^2

// Recursive adaptive Simpson refinement.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

// I = 2 int_0^inf e^{-s/2} |sin s|^{5/2} ds by adaptive refinement over
// period panels; independent of the library rules.
double solution_coefficient_I(double tol = 1e-12);

}  // namespace oracles
