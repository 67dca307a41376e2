#include "modlie/fp.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace modlie {

namespace {

void require_same_prime(std::uint32_t a, std::uint32_t b, const char* where) {
  if (a != b) {
    throw ModulusMismatch(std::string(where) + ": operands over GF(" +
                          std::to_string(a) + ") and GF(" + std::to_string(b) +
                          ")");
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw std::invalid_argument("modulus " + std::to_string(p) +
                                " is not a prime below 2^31");
  }
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
  Residue result = 1 % p_;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Residue PrimeField::inv(Residue a) const {
  if (a == 0) throw std::domain_error("inverse of zero in GF(p)");
  return pow(a, p_ - 2);
}

// ---------------------------------------------------------------------------

FpScalar FpScalar::inverse() const {
  return FpScalar(PrimeField(p_).inv(value_), p_);
}

FpScalar operator+(const FpScalar& a, const FpScalar& b) {
  require_same_prime(a.p_, b.p_, "FpScalar +");
  return FpScalar(static_cast<std::int64_t>(a.value_) + b.value_, a.p_);
}

FpScalar operator-(const FpScalar& a, const FpScalar& b) {
  require_same_prime(a.p_, b.p_, "FpScalar -");
  return FpScalar(static_cast<std::int64_t>(a.value_) - b.value_, a.p_);
}

FpScalar operator*(const FpScalar& a, const FpScalar& b) {
  require_same_prime(a.p_, b.p_, "FpScalar *");
  return FpScalar(static_cast<std::int64_t>(
                      static_cast<std::uint64_t>(a.value_) * b.value_ % a.p_),
                  a.p_);
}

FpScalar operator/(const FpScalar& a, const FpScalar& b) {
  require_same_prime(a.p_, b.p_, "FpScalar /");
  return a * b.inverse();
}

std::ostream& operator<<(std::ostream& os, const FpScalar& s) {
  return os << s.value();
}

// ---------------------------------------------------------------------------

FpVector::FpVector(std::uint32_t p, std::size_t size) : p_(p), v_(size, 0) {
  PrimeField{p};
}

FpVector::FpVector(std::uint32_t p, std::vector<Residue> entries)
    : p_(p), v_(std::move(entries)) {
  for (auto r : v_) {
    if (r >= p_) throw std::invalid_argument("FpVector: residue out of range");
  }
}

FpVector FpVector::from_integers(std::uint32_t p,
                                 std::span<const std::int64_t> values) {
  PrimeField f(p);
  FpVector out(p, values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.v_[i] = f.reduce(values[i]);
  return out;
}

FpVector FpVector::from_integers(std::uint32_t p,
                                 std::initializer_list<std::int64_t> values) {
  return from_integers(p, std::span<const std::int64_t>(values.begin(),
                                                        values.size()));
}

FpVector FpVector::unit(std::uint32_t p, std::size_t size, std::size_t index) {
  FpVector out(p, size);
  out.v_.at(index) = 1 % p;
  return out;
}

std::vector<std::int64_t> FpVector::signed_lift() const {
  PrimeField f(p_);
  std::vector<std::int64_t> out;
  out.reserve(v_.size());
  for (auto r : v_) out.push_back(f.signed_lift(r));
  return out;
}

bool FpVector::is_zero() const noexcept {
  for (auto r : v_) {
    if (r != 0) return false;
  }
  return true;
}

FpVector& FpVector::operator+=(const FpVector& o) {
  require_same_prime(p_, o.p_, "FpVector +=");
  if (o.size() != size()) throw std::invalid_argument("FpVector +=: size");
  PrimeField f(p_);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] = f.add(v_[i], o.v_[i]);
  return *this;
}

FpVector& FpVector::operator-=(const FpVector& o) {
  require_same_prime(p_, o.p_, "FpVector -=");
  if (o.size() != size()) throw std::invalid_argument("FpVector -=: size");
  PrimeField f(p_);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] = f.sub(v_[i], o.v_[i]);
  return *this;
}

FpVector& FpVector::scale(Residue c) {
  PrimeField f(p_);
  c %= p_;
  for (auto& r : v_) r = f.mul(r, c);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const FpVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os << ')';
}

// ---------------------------------------------------------------------------

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  PrimeField{p};
}

FpMatrix FpMatrix::from_rows(
    std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  FpMatrix m(p, rows.size(), ncols);
  PrimeField f(p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) {
      throw std::invalid_argument("FpMatrix::from_rows: ragged rows");
    }
    for (std::size_t c = 0; c < ncols; ++c) m(r, c) = f.reduce(rows[r][c]);
  }
  return m;
}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::from_columns(std::uint32_t p, std::size_t rows,
                                std::span<const FpVector> columns) {
  FpMatrix m(p, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    require_same_prime(p, columns[c].prime(), "FpMatrix::from_columns");
    if (columns[c].size() != rows) {
      throw std::invalid_argument("FpMatrix::from_columns: length mismatch");
    }
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

void FpMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  (*this)(r, c) = PrimeField(p_).reduce(value);
}

FpVector FpMatrix::row(std::size_t r) const {
  std::vector<Residue> out(data_.begin() + r * cols_,
                           data_.begin() + (r + 1) * cols_);
  return FpVector(p_, std::move(out));
}

FpVector FpMatrix::column(std::size_t c) const {
  FpVector out(p_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

std::vector<std::vector<std::int64_t>> FpMatrix::signed_lift() const {
  PrimeField f(p_);
  std::vector<std::vector<std::int64_t>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out[r].push_back(f.signed_lift((*this)(r, c)));
    }
  }
  return out;
}

std::vector<std::vector<std::int64_t>> FpMatrix::residue_rows() const {
  std::vector<std::vector<std::int64_t>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r].push_back((*this)(r, c));
  }
  return out;
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  require_same_prime(a.p_, b.p_, "FpMatrix *");
  if (a.cols_ != b.rows_) throw std::invalid_argument("FpMatrix *: shapes");
  PrimeField f(a.p_);
  FpMatrix out(a.p_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Residue aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        out(i, j) = f.fma(aik, b(k, j), out(i, j));
      }
    }
  }
  return out;
}

FpVector operator*(const FpMatrix& a, const FpVector& v) {
  require_same_prime(a.p_, v.prime(), "FpMatrix * FpVector");
  if (a.cols_ != v.size()) throw std::invalid_argument("FpMatrix *: shapes");
  PrimeField f(a.p_);
  FpVector out(a.p_, a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    Residue acc = 0;
    for (std::size_t k = 0; k < a.cols_; ++k) acc = f.fma(a(i, k), v[k], acc);
    out[i] = acc;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const FpMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << m(r, c);
    }
    os << '\n';
  }
  return os;
}

// ---------------------------------------------------------------------------

RowEchelon row_echelon(FpMatrix m) {
  const PrimeField f(m.prime());
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t r = pivot_row;
    while (r < m.rows() && m(r, c) == 0) ++r;
    if (r == m.rows()) continue;
    if (r != pivot_row) {
      for (std::size_t k = 0; k < m.cols(); ++k) {
        std::swap(m(r, k), m(pivot_row, k));
      }
    }
    const Residue inv = f.inv(m(pivot_row, c));
    for (std::size_t k = c; k < m.cols(); ++k) {
      m(pivot_row, k) = f.mul(m(pivot_row, k), inv);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == pivot_row || m(i, c) == 0) continue;
      const Residue factor = f.neg(m(i, c));
      for (std::size_t k = c; k < m.cols(); ++k) {
        m(i, k) = f.fma(factor, m(pivot_row, k), m(i, k));
      }
    }
    pivots.push_back(c);
    ++pivot_row;
  }
  return RowEchelon{std::move(m), std::move(pivots)};
}

std::size_t rank(const FpMatrix& m) { return row_echelon(m).rank(); }

std::vector<FpVector> kernel_basis(const FpMatrix& m) {
  const auto ech = row_echelon(m);
  const PrimeField f(m.prime());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_columns) is_pivot[c] = true;

  std::vector<FpVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    FpVector v(m.prime(), m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r) {
      v[ech.pivot_columns[r]] = f.neg(ech.reduced(r, free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

FpMatrix invert(const FpMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("invert: matrix not square");
  const std::size_t n = m.rows();
  FpMatrix aug(m.prime(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto ech = row_echelon(std::move(aug));
  if (ech.rank() < n || (n > 0 && ech.pivot_columns[n - 1] != n - 1)) {
    throw SingularMatrix("invert: matrix is singular over GF(" +
                         std::to_string(m.prime()) + ")");
  }
  FpMatrix out(m.prime(), n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out(r, c) = ech.reduced(r, n + c);
  }
  return out;
}

std::optional<FpVector> solve(const FpMatrix& m, const FpVector& b) {
  require_same_prime(m.prime(), b.prime(), "solve");
  if (b.size() != m.rows()) throw std::invalid_argument("solve: shapes");
  FpMatrix aug(m.prime(), m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const auto ech = row_echelon(std::move(aug));
  if (!ech.pivot_columns.empty() && ech.pivot_columns.back() == m.cols()) {
    return std::nullopt;
  }
  FpVector x(m.prime(), m.cols());
  for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r) {
    x[ech.pivot_columns[r]] = ech.reduced(r, m.cols());
  }
  return x;
}

}  // namespace modlie
