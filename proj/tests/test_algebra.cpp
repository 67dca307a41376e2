#include <random>

#include "doctest.h"
#include "modlie/algebra.hpp"
#include "modlie/errors.hpp"
#include "modlie/relations.hpp"
#include "reference_tables.hpp"

using namespace modlie;

namespace {

int sign_of(const AlgebraModel& m, std::size_t a, std::size_t b) {
  return parity_bit(m.parity(a)) * parity_bit(m.parity(b)) ? -1 : 1;
}

FpVector as_dense(const AlgebraModel& m, const SparseVector& v) {
  auto out = m.zero();
  for (const auto& [k, c] : v) out[k] = c;
  return out;
}

WeightVector add(WeightVector a, const WeightVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

// Super Jacobi on basis triples:
// [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]].
std::size_t jacobi_failures(const AlgebraModel& m, std::size_t samples,
                            unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> d(0, m.dimension() - 1);
  PrimeField f(m.prime());
  std::size_t failures = 0;
  for (std::size_t t = 0; t < samples; ++t) {
    const auto a = d(rng), b = d(rng), c = d(rng);
    const auto ea = m.basis_vector(a), eb = m.basis_vector(b), ec = m.basis_vector(c);
    auto lhs = m.bracket(ea, m.bracket(eb, ec));
    auto rhs = m.bracket(m.bracket(ea, eb), ec);
    auto third = m.bracket(eb, m.bracket(ea, ec));
    if (sign_of(m, a, b) < 0) third.scale(f.neg(1));
    rhs += third;
    if (!(lhs == rhs)) ++failures;
  }
  return failures;
}

}  // namespace

TEST_CASE("weight_of") {
  CHECK(weight_of({2, 2, 3, 3, 4}, registry(1)) == FpVector::from_integers(5, {1, 0, 0, 0, 0}));
  CHECK(weight_of({5, 2, 6, 3, 4}, registry(5)) == FpVector::from_integers(5, {4, 0, 0, 0, 0}));
  const auto s = registry(3);
  for (std::size_t i = 0; i < 5; ++i) {
    WeightVector u(5, 0);
    u[i] = 1;
    CHECK(weight_of(u, s) == s.matrix().column(i));
  }
}

TEST_CASE("small cases") {
  const auto even = AlgebraModel::build(CartanSpec::from_rows(5, {{2}}));
  CHECK(superdimension(even) == Superdimension{3, 0});
  const auto odd = AlgebraModel::build(CartanSpec::from_rows(5, {{0}}));
  CHECK(superdimension(odd) == Superdimension{1, 2});
  const auto sl3 = AlgebraModel::build(CartanSpec::from_rows(5, {{2, -1}, {-1, 2}}));
  CHECK(superdimension(sl3) == Superdimension{8, 0});
  CHECK(positive_roots(sl3).size() == 3);
  CHECK(maximal_root(sl3).weight == WeightVector{1, 1});
  // Non-simply-laced B2 over GF(7): dim 10.
  const auto b2 = AlgebraModel::build(CartanSpec::from_rows(7, {{2, -2}, {-1, 2}}));
  CHECK(superdimension(b2) == Superdimension{10, 0});
  // sl(1|2) type: one even, one isotropic root.
  const auto sl12 = AlgebraModel::build(CartanSpec::from_rows(5, {{2, -1}, {-1, 0}}));
  CHECK(superdimension(sl12) == Superdimension{4, 4});
}

TEST_CASE("build errors") {
  CHECK_THROWS_AS(AlgebraModel::build(CartanSpec::from_rows(5, {{2, -2}, {-2, 2}})),
                  SingularCartanMatrix);
  // G2 needs height 5; a cap of 4 leaves a nonzero level above it.
  const auto g2 = CartanSpec::from_rows(7, {{2, -3}, {-1, 2}});
  CHECK_THROWS_AS(AlgebraModel::build(g2, 4), NonTerminated);
  CHECK(superdimension(AlgebraModel::build(g2, 5)) == Superdimension{14, 0});
  CHECK_NOTHROW(AlgebraModel::build(registry(1), 21));
  CHECK_THROWS_AS(AlgebraModel::build(registry(1), 13), NonTerminated);
}

TEST_CASE("registry algebras") {
  for (int k = 1; k <= 7; ++k) {
    CAPTURE(k);
    const auto m = AlgebraModel::build(registry(k));
    CHECK(superdimension(m) == Superdimension{55, 32});
    const auto roots = positive_roots(m);
    CHECK(roots.size() == 41);
    std::size_t even = 0;
    for (const auto& r : roots) {
      CHECK(r.multiplicity == 1);
      if (r.parity == Parity::Even) ++even;
    }
    CHECK(even == 25);
    const auto top = maximal_root(m);
    const auto& ref = reference::kMaximalRoots[k - 1];
    CHECK(top.weight == WeightVector(ref.begin(), ref.end()));
    CHECK(top.cartan_eigenvalues ==
          FpVector::from_integers(5, {k == 5 ? 4 : 1, 0, 0, 0, 0}));
    for (std::size_t i = 0; i < 5; ++i) {
      WeightVector u(5, 0);
      u[i] = 1;
      const auto* c = m.find_component(u);
      REQUIRE(c != nullptr);
      CHECK(c->dim == 1);
      CHECK(c->parity == registry(k).parity(i));
    }
  }
}

TEST_CASE("evaluate_bracket examples") {
  const auto m = AlgebraModel::build(registry(1));
  CHECK(evaluate_bracket(m, parse("[x4,[x3,x5]] - [x5,[x3,x4]]")).is_zero());
  CHECK(evaluate_bracket(m, parse("[x3,x3]")).is_zero());
  const auto e = evaluate_bracket(m, parse("[x1,x3]"));
  CHECK_FALSE(e.is_zero());
  CHECK(e.weight == WeightVector{1, 0, 1, 0, 0});
  CHECK(m.find_component({1, 0, 1, 0, 0}) != nullptr);
  CHECK(m.find_component({1, 1, 0, 0, 0}) == nullptr);
  CHECK_THROWS_AS(evaluate_bracket(m, parse("[x1,x3] + x2")), MixedWeight);
  CHECK_THROWS_AS(evaluate_bracket(m, parse("[x1,x6]")), IndexOutOfRange);
}

TEST_CASE("structure constants respect the grading and super antisymmetry") {
  for (int k : {1, 5}) {
    const auto m = AlgebraModel::build(registry(k));
    PrimeField f(5);
    for (std::size_t a = 0; a < m.dimension(); ++a) {
      for (std::size_t b = 0; b < m.dimension(); ++b) {
        const auto& ab = m.bracket(a, b);
        const auto w = add(m.weight(a), m.weight(b));
        const int par = (parity_bit(m.parity(a)) + parity_bit(m.parity(b))) % 2;
        for (const auto& [g, c] : ab) {
          CHECK(c != 0);
          if (m.weight(g) != w) FAIL("weight grading broken");
          if (parity_bit(m.parity(g)) != par) FAIL("parity grading broken");
        }
        auto ba = as_dense(m, m.bracket(b, a));
        if (sign_of(m, a, b) > 0) ba.scale(f.neg(1));
        if (!(as_dense(m, ab) == ba)) FAIL("super antisymmetry broken");
      }
    }
  }
}

TEST_CASE("super Jacobi identity on sampled triples") {
  for (int k = 1; k <= 7; ++k) {
    const auto m = AlgebraModel::build(registry(k));
    CHECK(jacobi_failures(m, 1500, 100 + k) == 0);
  }
  const auto sl12 = AlgebraModel::build(CartanSpec::from_rows(5, {{2, -1}, {-1, 0}}));
  CHECK(jacobi_failures(sl12, 1000, 1) == 0);
}

TEST_CASE("no radical: every positive element is detected by some lowering") {
  const auto m = AlgebraModel::build(registry(2));
  for (const auto& c : m.components()) {
    if (c.height == 1) continue;
    for (std::size_t k = 0; k < c.dim; ++k) {
      const auto x = m.basis_vector(m.positive_index(c.offset + k));
      bool detected = false;
      for (std::size_t i = 0; i < m.rank() && !detected; ++i) {
        detected = !m.bracket(m.basis_vector(m.f(i)), x).is_zero();
      }
      CHECK(detected);
    }
  }
}

TEST_CASE("relabelling generators permutes the root system") {
  const auto s = registry(4);
  const std::vector<std::size_t> perm{4, 2, 0, 3, 1};
  EquivalenceWitness w{perm, {1, 1, 1, 1, 1}};
  const auto t = apply(w, s);
  const auto ms = AlgebraModel::build(s);
  const auto mt = AlgebraModel::build(t);
  CHECK(superdimension(ms) == superdimension(mt));
  for (const auto& r : positive_roots(mt)) {
    WeightVector back(5, 0);
    for (std::size_t a = 0; a < 5; ++a) back[perm[a]] = r.weight[a];
    const auto* c = ms.find_component(back);
    REQUIRE(c != nullptr);
    CHECK(c->dim == static_cast<std::size_t>(r.multiplicity));
  }
}

TEST_CASE("json report") {
  const auto j = to_json(AlgebraModel::build(registry(1)));
  CHECK(j["superdimension"]["even"] == 55);
  CHECK(j["superdimension"]["odd"] == 32);
  CHECK(j["roots"].size() == 41);
  CHECK(j["maximal_root"]["coeffs"] == nlohmann::json({2, 2, 3, 3, 4}));
}
