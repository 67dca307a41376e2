#ifndef MODLIE_FP_HPP
#define MODLIE_FP_HPP

// Exact arithmetic and dense linear algebra over a prime field GF(p).
//
// Residues are stored canonically in [0, p).  The modulus is carried by
// every value; combining values over different primes throws
// ModulusMismatch.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "modlie/errors.hpp"

namespace modlie {

using Residue = std::uint32_t;

bool is_prime(std::uint64_t n);

// Field operations on raw residues.  Hot loops use this directly; the
// FpScalar/FpVector/FpMatrix types wrap it for the public surface.
class PrimeField {
 public:
  // Throws std::invalid_argument unless p is a prime below 2^31.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t prime() const noexcept { return p_; }

  Residue reduce(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  // a*b + c
  Residue fma(Residue a, Residue b, Residue c) const noexcept {
    return static_cast<Residue>(
        (static_cast<std::uint64_t>(a) * b + c) % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const noexcept;
  // Throws std::domain_error on zero.
  Residue inv(Residue a) const;

  // Representative in (-p/2, p/2].
  std::int64_t signed_lift(Residue a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

class FpScalar {
 public:
  FpScalar(std::int64_t value, std::uint32_t p)
      : p_(p), value_(PrimeField(p).reduce(value)) {}

  Residue value() const noexcept { return value_; }
  std::uint32_t prime() const noexcept { return p_; }
  std::int64_t signed_lift() const noexcept {
    return value_ > p_ / 2 ? static_cast<std::int64_t>(value_) - p_ : value_;
  }
  bool is_zero() const noexcept { return value_ == 0; }

  FpScalar operator-() const { return FpScalar(p_ - value_, p_); }
  FpScalar inverse() const;

  friend FpScalar operator+(const FpScalar& a, const FpScalar& b);
  friend FpScalar operator-(const FpScalar& a, const FpScalar& b);
  friend FpScalar operator*(const FpScalar& a, const FpScalar& b);
  friend FpScalar operator/(const FpScalar& a, const FpScalar& b);
  friend bool operator==(const FpScalar&, const FpScalar&) = default;

 private:
  std::uint32_t p_;
  Residue value_;
};

std::ostream& operator<<(std::ostream& os, const FpScalar& s);

class FpVector {
 public:
  FpVector(std::uint32_t p, std::size_t size);
  FpVector(std::uint32_t p, std::vector<Residue> entries);
  // Entries are arbitrary integers, reduced on construction.
  static FpVector from_integers(std::uint32_t p,
                                std::span<const std::int64_t> values);
  static FpVector from_integers(std::uint32_t p,
                                std::initializer_list<std::int64_t> values);
  static FpVector unit(std::uint32_t p, std::size_t size, std::size_t index);

  std::uint32_t prime() const noexcept { return p_; }
  std::size_t size() const noexcept { return v_.size(); }
  Residue operator[](std::size_t i) const { return v_[i]; }
  Residue& operator[](std::size_t i) { return v_[i]; }
  const std::vector<Residue>& residues() const noexcept { return v_; }
  std::vector<std::int64_t> signed_lift() const;
  bool is_zero() const noexcept;

  FpVector& operator+=(const FpVector& o);
  FpVector& operator-=(const FpVector& o);
  FpVector& scale(Residue c);

  friend bool operator==(const FpVector&, const FpVector&) = default;

 private:
  std::uint32_t p_;
  std::vector<Residue> v_;
};

std::ostream& operator<<(std::ostream& os, const FpVector& v);

class FpMatrix {
 public:
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);
  // Entries are arbitrary integers, reduced on construction.
  static FpMatrix from_rows(std::uint32_t p,
                            const std::vector<std::vector<std::int64_t>>& rows);
  static FpMatrix identity(std::uint32_t p, std::size_t n);
  // Matrix whose columns are the given vectors (all of length `rows`).
  static FpMatrix from_columns(std::uint32_t p, std::size_t rows,
                               std::span<const FpVector> columns);

  std::uint32_t prime() const noexcept { return p_; }
  PrimeField field() const { return PrimeField(p_); }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Residue operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  Residue& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, std::int64_t value);

  FpVector row(std::size_t r) const;
  FpVector column(std::size_t c) const;
  FpMatrix transpose() const;
  std::vector<std::vector<std::int64_t>> signed_lift() const;
  std::vector<std::vector<std::int64_t>> residue_rows() const;

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
  friend FpVector operator*(const FpMatrix& a, const FpVector& v);
  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  std::uint32_t p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

std::ostream& operator<<(std::ostream& os, const FpMatrix& m);

// Reduced row echelon form.  Pivots are chosen as the first nonzero entry
// in a column-major scan of the unreduced block, so results are
// reproducible.
struct RowEchelon {
  FpMatrix reduced;
  std::vector<std::size_t> pivot_columns;  // ascending
  std::size_t rank() const noexcept { return pivot_columns.size(); }
};

RowEchelon row_echelon(FpMatrix m);

std::size_t rank(const FpMatrix& m);

// Basis of {v : m v = 0}; one vector per non-pivot column, with a 1 in that
// column.
std::vector<FpVector> kernel_basis(const FpMatrix& m);

// Throws SingularMatrix when m is not invertible, std::invalid_argument when
// m is not square.
FpMatrix invert(const FpMatrix& m);

// Some x with m x = b, or nullopt when the system is inconsistent.
std::optional<FpVector> solve(const FpMatrix& m, const FpVector& b);

}  // namespace modlie

#endif  // MODLIE_FP_HPP
