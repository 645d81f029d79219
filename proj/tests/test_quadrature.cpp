#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "hammerstein/quadrature.hpp"
#include "oracles.hpp"

using namespace hammerstein;
using std::numbers::pi;

namespace {
double exp_tail(double s) { return std::exp(-0.5 * std::abs(s)); }
}

TEST_CASE("real line rule integrates reference functions") {
  const CompactGrid g = build_grid(1.0, 400);
  const QuadratureRule rule = real_line_rule(g);
  REQUIRE(rule.size() == g.size());

  CHECK_THAT(integrate(rule, exp_tail), Catch::Matchers::WithinAbs(4.0, 1e-10));
  CHECK_THAT(integrate(rule, [](double s) { return std::exp(-s * s); }),
             Catch::Matchers::WithinAbs(std::sqrt(pi), 1e-10));
  CHECK_THAT(integrate(rule, [](double s) { return s * std::exp(-s * s); }),
             Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("node doubling is stable on the exponential tail") {
  const double v1 = integrate(real_line_rule(build_grid(1.0, 400)), exp_tail);
  const double v2 = integrate(real_line_rule(build_grid(1.0, 800)), exp_tail);
  CHECK(std::abs(v2 - v1) < 1e-10);
}

TEST_CASE("kinked oscillatory integrand matches its closed form") {
  // int e^{-|s|/2} |sin s| ds; the rank-one eigenvalue oracle
  CHECK_THAT(oracles::r_L1_closed_form(), Catch::Matchers::WithinRel(oracles::kR1, 1e-15));
  const QuadratureRule rule = real_line_rule(build_grid(1.0, 400));
  const double v = integrate(rule, [](double s) { return exp_tail(s) * std::abs(std::sin(s)); });
  CHECK_THAT(v, Catch::Matchers::WithinRel(oracles::kR1, 1e-4));
}

TEST_CASE("compact rules") {
  SECTION("sine over the window") {
    const QuadratureRule r = compact_rule({{pi / 4, 3 * pi / 4}}, 32);
    CHECK_THAT(integrate(r, [](double s) { return std::sin(s); }),
               Catch::Matchers::WithinAbs(std::numbers::sqrt2, 1e-12));
  }
  SECTION("polynomial exactness at Gauss degree") {
    const QuadratureRule r = compact_rule({{0.0, 1.0}}, 4);
    CHECK_THAT(integrate(r, [](double s) { return s * s * s; }),
               Catch::Matchers::WithinAbs(0.25, 1e-15));
    // degree 2*4-1 = 7 still exact
    CHECK_THAT(integrate(r, [](double s) { return std::pow(s, 7); }),
               Catch::Matchers::WithinRel(0.125, 1e-13));
  }
  SECTION("union of intervals") {
    const QuadratureRule r = compact_rule({{0.0, 1.0}, {2.0, 3.0}}, 8);
    CHECK_THAT(integrate(r, [](double) { return 1.0; }), Catch::Matchers::WithinAbs(2.0, 1e-14));
    for (double w : r.weights) CHECK(w > 0.0);
    for (double n : r.nodes) CHECK(union_contains(r.intervals, n));
  }
  SECTION("rejects bad input") {
    CHECK_THROWS_AS(compact_rule({{0.0, 1.0}, {0.5, 2.0}}, 8), std::invalid_argument);
    CHECK_THROWS_AS(compact_rule({{1.0, 1.0}}, 8), std::invalid_argument);
    CHECK_THROWS_AS(compact_rule({{0.0, 1.0}}, 3), std::invalid_argument);
    CHECK_THROWS_AS(compact_rule({}, 8), std::invalid_argument);
  }
}

TEST_CASE("positive weights and monotonicity of integrate") {
  const QuadratureRule rule = real_line_rule(build_grid(1.0, 128));
  for (double w : rule.weights) CHECK(w > 0.0);
  const double v = integrate(rule, [](double s) { return std::abs(std::cos(3 * s)) * exp_tail(s); });
  CHECK(v >= 0.0);
}

TEST_CASE("integrate aborts on non-finite evaluations") {
  const QuadratureRule rule = real_line_rule(build_grid(1.0, 16));
  CHECK_THROWS_WITH(integrate(rule, [](double) { return std::nan(""); }),
                    Catch::Matchers::ContainsSubstring("node index 0"));
  CHECK_THROWS_AS(integrate(rule, [&](double s) { return s == rule.nodes[3] ? HUGE_VAL : 1.0; }),
                  std::runtime_error);
}
