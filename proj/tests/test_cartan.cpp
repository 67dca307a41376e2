#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "modlie/cartan.hpp"
#include "modlie/errors.hpp"
#include "reference_tables.hpp"

using namespace modlie;

namespace {

// Simultaneous row/column permutation plus random rescaling of isotropic
// rows.
CartanSpec scramble(const CartanSpec& s, std::mt19937& rng) {
  EquivalenceWitness w;
  w.permutation.resize(s.size());
  std::iota(w.permutation.begin(), w.permutation.end(), 0);
  std::shuffle(w.permutation.begin(), w.permutation.end(), rng);
  for (std::size_t a = 0; a < s.size(); ++a) {
    const bool iso = s.is_isotropic(w.permutation[a]);
    w.row_scale.push_back(iso ? 1 + rng() % (s.prime() - 1) : 1);
  }
  return apply(w, s);
}

}  // namespace

TEST_CASE("registry") {
  const auto s1 = registry(1);
  CHECK(s1 == CartanSpec::from_rows(5, {{2, 0, -1, 0, 0},
                                        {0, 2, 0, 0, -1},
                                        {-1, 0, 0, 1, 1},
                                        {0, 0, 1, 0, -2},
                                        {0, -1, 1, -2, 0}}));
  CHECK(s1.parity() == std::vector<Parity>{Parity::Even, Parity::Even, Parity::Odd,
                                           Parity::Odd, Parity::Odd});
  const auto s5 = registry(5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(s5(i, i) == (i == 0 ? 0u : 2u));
  CHECK_THROWS_AS(registry(8), UnknownId);
  CHECK_THROWS_AS(registry(0), UnknownId);
  CHECK(registry_all().size() == 7);
  for (const auto& s : registry_all()) {
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK((s.parity(i) == Parity::Odd) == (s(i, i) == 0));
    }
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(CartanSpec::from_rows(5, {{1}}), InvalidCartan);
  CHECK_THROWS_AS(CartanSpec(FpMatrix::from_rows(5, {{2}}), {Parity::Odd}), InvalidCartan);
  CHECK_THROWS_AS(CartanSpec(FpMatrix::from_rows(5, {{0}}), {Parity::Even}), InvalidCartan);
  CHECK_THROWS_AS(CartanSpec(FpMatrix(5, 2, 3)), InvalidCartan);
  CHECK_NOTHROW(CartanSpec::from_rows(7, {{2, -1}, {-1, 2}}));
}

TEST_CASE("inverses match the published tables") {
  for (int k = 1; k <= 7; ++k) {
    const auto inv = invert_mod_p(registry(k));
    CHECK(registry(k).matrix() * inv == FpMatrix::identity(5, 5));
    for (std::size_t r = 0; r < 5; ++r) {
      for (std::size_t c = 0; c < 5; ++c) {
        CHECK(inv(r, c) == static_cast<Residue>(reference::kInverses[k - 1][r][c]));
      }
    }
  }
  CHECK_THROWS_AS(invert_mod_p(CartanSpec::from_rows(5, {{0, 1}, {0, 0}})), SingularMatrix);
}

TEST_CASE("canonical form is idempotent and permutation invariant") {
  std::mt19937 rng(2024);
  for (const auto& s : registry_all()) {
    const auto c = canonical_form(s);
    CHECK(canonical_form(c) == c);
    for (int t = 0; t < 30; ++t) CHECK(canonical_form(scramble(s, rng)) == c);
  }
  // All 120 plain permutations of matrix 1.
  const auto s = registry(1);
  std::vector<std::size_t> perm{0, 1, 2, 3, 4};
  const auto c = canonical_form(s);
  do {
    EquivalenceWitness w{perm, std::vector<Residue>(5, 1)};
    CHECK(canonical_form(apply(w, s)) == c);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("canonical form on random small matrices") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    FpMatrix m(7, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m.set(i, j, i == j ? ((rng() & 1) ? 2 : 0) : static_cast<std::int64_t>(rng() % 7));
      }
    }
    const CartanSpec s(m);
    const auto c = canonical_form(s);
    CHECK(canonical_form(c) == c);
    const auto t = scramble(s, rng);
    CHECK(canonical_form(t) == c);
    CHECK(equivalent(s, t).has_value());
  }
}

TEST_CASE("registry matrices are pairwise inequivalent") {
  const auto all = registry_all();
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = 0; b < all.size(); ++b) {
      CHECK(equivalent(all[a], all[b]).has_value() == (a == b));
      CHECK((canonical_form(all[a]) == canonical_form(all[b])) == (a == b));
    }
  }
}

TEST_CASE("equivalence witnesses") {
  const auto s = registry(1);
  auto self = equivalent(s, s);
  REQUIRE(self.has_value());
  CHECK(self->is_identity());

  EquivalenceWitness swap{{1, 0, 2, 3, 4}, {1, 1, 1, 1, 1}};
  const auto t = apply(swap, s);
  auto w = equivalent(s, t);
  REQUIRE(w.has_value());
  CHECK(apply(*w, s) == t);
  CHECK(w->permutation == std::vector<std::size_t>{1, 0, 2, 3, 4});

  std::mt19937 rng(99);
  for (int k = 1; k <= 7; ++k) {
    const auto u = scramble(registry(k), rng);
    auto v = equivalent(registry(k), u);
    REQUIRE(v.has_value());
    CHECK(apply(*v, registry(k)) == u);
  }
  CHECK_FALSE(equivalent(registry(3), registry(7)).has_value());
  CHECK_FALSE(equivalent(registry(1), CartanSpec::from_rows(5, {{2}})).has_value());
  CHECK_THROWS_AS(equivalent(CartanSpec::from_rows(5, {{2}}), CartanSpec::from_rows(7, {{2}})),
                  ModulusMismatch);
}

TEST_CASE("dynkin diagrams") {
  const auto g = to_dynkin(registry(1));
  REQUIRE(g.nodes.size() == 5);
  for (const auto& node : g.nodes) {
    CHECK((node.kind == NodeKind::IsotropicGrey) == (node.index >= 3));
  }
  // Edges 1-3, 2-5, 3-4, 3-5, 4-5; A_34 = A_43 = A_35 = A_53 = 1.
  std::size_t dotted = 0;
  for (const auto& e : g.edges) {
    const bool one_one = e.i == 3 && (e.j == 4 || e.j == 5);
    CHECK((e.style == EdgeStyle::Dotted) == one_one);
    dotted += one_one ? 1 : 0;
  }
  CHECK(dotted == 2);
  CHECK(g.edges.size() == 5);
  const auto dot = to_dot(g);
  CHECK(dot.find("n3 -- n4") != std::string::npos);
  CHECK(dot.find("n3 -- n4 [style=dotted]") != std::string::npos);

  const auto g3 = to_dynkin(registry(3));
  for (const auto& node : g3.nodes) {
    CHECK((node.kind == NodeKind::IsotropicGrey) == (node.index == 4));
  }
  const auto diag = CartanSpec::from_rows(5, {{2, 0, 0}, {0, 0, 0}, {0, 0, 2}});
  CHECK(to_dynkin(diag).edges.empty());
  CHECK(to_ascii(to_dynkin(registry(3))).find("isotropic: 4\n") != std::string::npos);
}

TEST_CASE("json round trip") {
  for (const auto& s : registry_all()) {
    CHECK(cartan_from_json(nlohmann::json::parse(to_json(s).dump())) == s);
  }
  const auto j = to_json(registry(1));
  CHECK(j["p"] == 5);
  CHECK(j["matrix"][0][2] == -1);
  CHECK(j["parity"][2] == "odd");
  CHECK_THROWS_AS(cartan_from_json(nlohmann::json::parse(R"({"p": 5})")), InvalidCartan);
  CHECK_THROWS_AS(cartan_from_json(nlohmann::json::parse(R"({"p": 5, "matrix": [[2, 0]]})")),
                  InvalidCartan);
  CHECK_THROWS_AS(cartan_from_json(nlohmann::json::parse(R"({"p": 4, "matrix": [[2]]})")),
                  InvalidCartan);
  const auto sl2 = cartan_from_json(nlohmann::json::parse(R"({"p": 5, "matrix": [[2]]})"));
  CHECK(sl2.parity(0) == Parity::Even);
}
