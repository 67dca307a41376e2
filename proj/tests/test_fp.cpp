#include <random>

#include "doctest.h"
#include "modlie/cartan.hpp"
#include "modlie/errors.hpp"
#include "modlie/fp.hpp"
#include "reference_tables.hpp"

using namespace modlie;

namespace {

FpMatrix random_matrix(std::mt19937& rng, std::uint32_t p, std::size_t r,
                       std::size_t c, int zero_bias) {
  std::uniform_int_distribution<int> d(0, static_cast<int>(p) - 1 + zero_bias);
  FpMatrix m(p, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      int v = d(rng);
      m.set(i, j, v >= static_cast<int>(p) ? 0 : static_cast<Residue>(v));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeField f(5);
  CHECK(f.reduce(-4) == 1);
  CHECK(f.add(3, 4) == 2);
  CHECK(f.sub(1, 3) == 3);
  CHECK(f.mul(3, 4) == 2);
  CHECK(f.inv(2) == 3);
  CHECK(f.signed_lift(3) == -2);
  CHECK(f.signed_lift(2) == 2);
  CHECK(f.signed_lift(4) == -1);
  CHECK_THROWS_AS(PrimeField(6), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
  CHECK(is_prime(101));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("mixing moduli is detected") {
  FpScalar a(2, 5), b(2, 7);
  CHECK_THROWS_AS(a + b, ModulusMismatch);
  FpMatrix m5 = FpMatrix::identity(5, 2), m7 = FpMatrix::identity(7, 2);
  CHECK_THROWS_AS(m5 * m7, ModulusMismatch);
}

TEST_CASE("rank examples") {
  CHECK(rank(FpMatrix::identity(5, 5)) == 5);
  CHECK(rank(FpMatrix(5, 3, 4)) == 0);
  CHECK(rank(registry(1).matrix()) == 5);
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(FpMatrix::identity(5, 4)).empty());
  CHECK(kernel_basis(FpMatrix(5, 2, 3)).size() == 3);

  const auto row = FpMatrix::from_rows(5, {{2, 0, -1, 0, 0}});
  const auto ker = kernel_basis(row);
  REQUIRE(ker.size() == 4);
  for (const auto& v : ker) CHECK((row * v).is_zero());
  FpMatrix basis = FpMatrix::from_columns(5, 5, ker);
  CHECK(rank(basis) == 4);
}

TEST_CASE("rank-nullity and kernel annihilation on random matrices") {
  std::mt19937 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 31u}) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
      const auto m = random_matrix(rng, p, r, c, trial % 4);
      const auto ker = kernel_basis(m);
      CHECK(rank(m) + ker.size() == c);
      for (const auto& v : ker) CHECK((m * v).is_zero());
      if (!ker.empty()) CHECK(rank(FpMatrix::from_columns(p, c, ker)) == ker.size());
    }
  }
}

TEST_CASE("row echelon is reduced and deterministic") {
  std::mt19937 rng(3);
  const auto m = random_matrix(rng, 5, 6, 8, 2);
  const auto a = row_echelon(m);
  const auto b = row_echelon(m);
  CHECK(a.reduced == b.reduced);
  CHECK(a.pivot_columns == b.pivot_columns);
  for (std::size_t k = 0; k < a.rank(); ++k) {
    const auto c = a.pivot_columns[k];
    for (std::size_t r = 0; r < a.reduced.rows(); ++r) {
      CHECK(a.reduced(r, c) == (r == k ? 1u : 0u));
    }
  }
}

TEST_CASE("inversion") {
  CHECK(invert(FpMatrix::identity(5, 5)) == FpMatrix::identity(5, 5));
  CHECK_THROWS_AS(invert(FpMatrix(5, 3, 3)), SingularMatrix);
  CHECK_THROWS_AS(invert(FpMatrix(5, 2, 3)), std::invalid_argument);
  for (int k : {1, 7}) {
    const auto inv = invert(registry(k).matrix());
    for (std::size_t r = 0; r < 5; ++r) {
      for (std::size_t c = 0; c < 5; ++c) {
        CHECK(inv(r, c) == static_cast<Residue>(reference::kInverses[k - 1][r][c]));
      }
    }
    CHECK(inv * registry(k).matrix() == FpMatrix::identity(5, 5));
  }
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_matrix(rng, 7, 4, 4, 1);
    if (rank(m) < 4) {
      CHECK_THROWS_AS(invert(m), SingularMatrix);
    } else {
      const auto x = invert(m);
      CHECK(m * x == FpMatrix::identity(7, 4));
      CHECK(x * m == FpMatrix::identity(7, 4));
    }
  }
}

TEST_CASE("solve") {
  const auto b = FpVector::from_integers(5, {1, -2, 3});
  CHECK(solve(FpMatrix::identity(5, 3), b) == b);
  CHECK_FALSE(solve(FpMatrix(5, 3, 3), b).has_value());
  const auto x = solve(registry(1).matrix(), FpVector::unit(5, 5, 0));
  REQUIRE(x.has_value());
  CHECK(*x == FpVector::from_integers(5, {2, 2, 3, 3, 4}));
}

TEST_CASE("signed lift view") {
  const auto v = FpVector::from_integers(5, {-4, 3, 0, 7});
  CHECK(v.residues() == std::vector<Residue>{1, 3, 0, 2});
  CHECK(v.signed_lift() == std::vector<std::int64_t>{1, -2, 0, 2});
}
