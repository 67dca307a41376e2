#include "modlie/bracket_expr.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "modlie/errors.hpp"

namespace modlie {

BracketExpr BracketExpr::generator(std::size_t index) {
  if (index == 0) throw std::invalid_argument("generator indices are 1-based");
  BracketExpr e;
  e.kind_ = Kind::Generator;
  e.index_ = index;
  return e;
}

BracketExpr BracketExpr::bracket(BracketExpr left, BracketExpr right) {
  BracketExpr e;
  e.kind_ = Kind::Bracket;
  e.children_.push_back(std::move(left));
  e.children_.push_back(std::move(right));
  return e;
}

BracketExpr BracketExpr::scaled(std::int64_t coeff, BracketExpr inner) {
  if (coeff == 0) throw std::invalid_argument("zero coefficient in expression");
  if (inner.kind_ == Kind::Sum) {
    for (auto& term : inner.children_) term = scaled(coeff, std::move(term));
    return inner;
  }
  if (inner.kind_ == Kind::Scaled) {
    coeff *= inner.coeff_;
    BracketExpr operand = std::move(inner.children_.front());
    return scaled(coeff, std::move(operand));
  }
  if (coeff == 1) return inner;
  BracketExpr e;
  e.kind_ = Kind::Scaled;
  e.coeff_ = coeff;
  e.children_.push_back(std::move(inner));
  return e;
}

BracketExpr BracketExpr::sum(std::vector<BracketExpr> terms) {
  if (terms.empty()) throw std::invalid_argument("empty sum");
  BracketExpr e;
  e.kind_ = Kind::Sum;
  for (auto& t : terms) {
    if (t.kind_ == Kind::Sum) {
      for (auto& inner : t.children_) e.children_.push_back(std::move(inner));
    } else {
      e.children_.push_back(std::move(t));
    }
  }
  if (e.children_.size() == 1) {
    BracketExpr only = std::move(e.children_.front());
    return only;
  }
  return e;
}

std::size_t BracketExpr::max_index() const {
  if (kind_ == Kind::Generator) return index_;
  std::size_t m = 0;
  for (const auto& c : children_) m = std::max(m, c.max_index());
  return m;
}

int BracketExpr::height() const {
  switch (kind_) {
    case Kind::Generator:
      return 1;
    case Kind::Bracket:
      return left().height() + right().height();
    case Kind::Scaled:
      return operand().height();
    case Kind::Sum: {
      const int h = children_.front().height();
      for (const auto& t : children_) {
        if (t.height() != h) {
          throw MixedWeight("sum mixes terms of heights " + std::to_string(h) +
                            " and " + std::to_string(t.height()));
        }
      }
      return h;
    }
  }
  return 0;
}

WeightVector BracketExpr::weight(std::size_t n) const {
  switch (kind_) {
    case Kind::Generator: {
      if (index_ > n) {
        throw IndexOutOfRange("generator x" + std::to_string(index_) +
                              " out of range for rank " + std::to_string(n));
      }
      WeightVector w(n, 0);
      w[index_ - 1] = 1;
      return w;
    }
    case Kind::Bracket: {
      auto w = left().weight(n);
      const auto r = right().weight(n);
      for (std::size_t i = 0; i < n; ++i) w[i] += r[i];
      return w;
    }
    case Kind::Scaled:
      return operand().weight(n);
    case Kind::Sum: {
      const auto w = children_.front().weight(n);
      for (const auto& t : children_) {
        if (t.weight(n) != w) {
          throw MixedWeight("sum mixes terms of different weights: " +
                            to_string(*this));
        }
      }
      return w;
    }
  }
  return {};
}

namespace {

template <typename CoeffFn>
void print(const BracketExpr& e, std::string& out, const CoeffFn& coeff_of) {
  using Kind = BracketExpr::Kind;
  switch (e.kind()) {
    case Kind::Generator:
      out += 'x';
      out += std::to_string(e.index());
      return;
    case Kind::Bracket:
      out += '[';
      print(e.left(), out, coeff_of);
      out += ',';
      print(e.right(), out, coeff_of);
      out += ']';
      return;
    case Kind::Scaled: {
      const std::int64_t c = coeff_of(e.coeff());
      if (c == -1) {
        out += '-';
      } else if (c != 1) {
        out += std::to_string(c);
      }
      print(e.operand(), out, coeff_of);
      return;
    }
    case Kind::Sum: {
      bool first = true;
      for (const auto& t : e.children()) {
        if (first) {
          print(t, out, coeff_of);
          first = false;
          continue;
        }
        if (t.kind() == Kind::Scaled && coeff_of(t.coeff()) < 0) {
          const std::int64_t c = -coeff_of(t.coeff());
          out += " - ";
          if (c != 1) out += std::to_string(c);
          print(t.operand(), out, coeff_of);
        } else {
          out += " + ";
          print(t, out, coeff_of);
        }
      }
      return;
    }
  }
}

}  // namespace

std::string to_string(const BracketExpr& e) {
  std::string out;
  print(e, out, [](std::int64_t c) { return c; });
  return out;
}

std::string to_string_mod(const BracketExpr& e, std::uint32_t p) {
  std::string out;
  const auto mod = static_cast<std::int64_t>(p);
  print(e, out, [mod](std::int64_t c) { return ((c % mod) + mod) % mod; });
  return out;
}

}  // namespace modlie
