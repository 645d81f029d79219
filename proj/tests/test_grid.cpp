#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "hammerstein/grid.hpp"

using namespace hammerstein;

TEST_CASE("algebraic map basics") {
  CHECK(map_tau_to_t(0.0, 1.0) == 0.0);
  CHECK_THAT(map_tau_to_t(0.5, 1.0), Catch::Matchers::WithinRel(0.5 / 0.75, 1e-15));
  CHECK(map_tau_to_t(1.0 - 1e-12, 1.0) > 1e11);  // pole at tau = 1
  CHECK(map_tau_to_t(-0.5, 2.0) == -map_tau_to_t(0.5, 2.0));
}

TEST_CASE("map inverse round trips") {
  for (double t : {-1234.5, -3.2, -1e-3, 1e-3, 0.7, 42.0, 9.9e4})
    CHECK_THAT(map_tau_to_t(map_t_to_tau(t, 1.0), 1.0), Catch::Matchers::WithinRel(t, 1e-14));
  CHECK(map_t_to_tau(0.0, 1.0) == 0.0);
}

TEST_CASE("build_grid rejects bad arguments") {
  CHECK_THROWS_AS(build_grid(1.0, 7), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(0.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(-2.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(std::nan(""), 100), std::invalid_argument);
}

TEST_CASE("grid nodes are strictly increasing and round trip") {
  const CompactGrid g = build_grid(1.0, 400);
  REQUIRE(g.size() == 400);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g.nodes_tau[i] > -1.0);
    CHECK(g.nodes_tau[i] < 1.0);
    if (i > 0) {
      CHECK(g.nodes_tau[i] > g.nodes_tau[i - 1]);
      CHECK(g.nodes_t[i] > g.nodes_t[i - 1]);
    }
    const double back = map_tau_to_t(map_t_to_tau(g.nodes_t[i], 1.0), 1.0);
    CHECK_THAT(back, Catch::Matchers::WithinRel(g.nodes_t[i], 1e-12));
  }
}

TEST_CASE("grid avoids excluded points") {
  const CompactGrid plain = build_grid(1.0, 64);
  // force a conflict at an existing node
  const double target = plain.nodes_t[20];
  const CompactGrid g = build_grid(1.0, 64, {target});
  REQUIRE(g.size() == 64);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(g.nodes_t[i] - target) >= kExclusionRadius);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.nodes_tau[i] > g.nodes_tau[i - 1]);
}

TEST_CASE("weight validation on grids") {
  const Weight abs_t{[](double t) { return std::abs(t); }, "abs_t", {0.0}};
  const CompactGrid g = build_grid(1.0, 128, abs_t.positivity_exceptions);
  CHECK_NOTHROW(validate_weight_on_grid(abs_t, g));

  const Weight broken{[](double t) { return t; }, "signed", {}};
  CHECK_THROWS_AS(validate_weight_on_grid(broken, g), std::runtime_error);
}
