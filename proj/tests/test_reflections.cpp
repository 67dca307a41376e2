#include "doctest.h"
#include "modlie/errors.hpp"
#include "modlie/reflections.hpp"
#include "reference_tables.hpp"

using namespace modlie;

TEST_CASE("single reflections") {
  const auto r = odd_reflect(registry(1), 2);
  CHECK(equivalent(r, registry(2)).has_value());
  CHECK(equivalent(odd_reflect(r, 2), registry(1)).has_value());
  CHECK_THROWS_AS(odd_reflect(registry(1), 0), NotIsotropic);
  CHECK_THROWS_AS(odd_reflect(registry(1), 5), IndexOutOfRange);
  try {
    odd_reflect(registry(1), 1);
    FAIL("expected NotIsotropic");
  } catch (const NotIsotropic& e) {
    CHECK(std::string(e.what()).find("not appropriate") != std::string::npos);
  }
}

TEST_CASE("reflection is an involution up to equivalence") {
  for (int k = 1; k <= 7; ++k) {
    const auto s = registry(k);
    for (std::size_t i = 0; i < 5; ++i) {
      if (!s.is_isotropic(i)) continue;
      CAPTURE(k);
      CAPTURE(i);
      const auto r = odd_reflect(s, i);
      CHECK(r.is_isotropic(i));
      CHECK(equivalent(odd_reflect(r, i), s).has_value());
    }
  }
}

TEST_CASE("reflected matrices are diagonal-normalised Cartan matrices") {
  for (int k = 1; k <= 7; ++k) {
    const auto s = registry(k);
    for (std::size_t i = 0; i < 5; ++i) {
      if (!s.is_isotropic(i)) continue;
      const auto r = odd_reflect(s, i);
      for (std::size_t j = 0; j < 5; ++j) CHECK((r(j, j) == 0 || r(j, j) == 2));
    }
  }
}

TEST_CASE("orbit of the registry") {
  const auto g = orbit(registry(1));
  CHECK(g.nodes.size() == 7);
  for (const auto& s : registry_all()) CHECK(g.find(s).has_value());
  const auto g3 = orbit(registry(3));
  CHECK(g3.nodes.size() == 7);
  for (const auto& node : g.nodes) CHECK(g3.find(node.representative).has_value());
  const auto dot = to_dot(g);
  CHECK(dot.rfind("digraph", 0) == 0);
}

TEST_CASE("orbit of a rank-1 isotropic matrix") {
  const auto g = orbit(CartanSpec::from_rows(5, {{0}}));
  CHECK(g.nodes.size() == 1);
}

TEST_CASE("reflection table") {
  const auto t = reflection_table(orbit(registry(1)), registry_all());
  REQUIRE(t.cells.size() == 7);
  for (std::size_t r = 0; r < 7; ++r) {
    for (std::size_t i = 0; i < 5; ++i) {
      const int want = reference::kReflectionTable[r][i];
      if (want == 0) {
        CHECK_FALSE(t.cells[r][i].has_value());
      } else {
        REQUIRE(t.cells[r][i].has_value());
        CHECK(*t.cells[r][i] == static_cast<std::size_t>(want));
      }
    }
  }
  const auto text = to_text(t);
  CHECK(text.find("\n1)    -  -  2  3  4\n") != std::string::npos);
  const auto j = to_json(t);
  CHECK(j["cells"][0][0].is_null());
  CHECK(j["cells"][0][2] == 2);
  // The table reads the same whichever seed the orbit starts from.
  const auto t6 = reflection_table(orbit(registry(6)), registry_all());
  CHECK(t6.cells == t.cells);
}
