#ifndef MODLIE_BRACKET_EXPR_HPP
#define MODLIE_BRACKET_EXPR_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace modlie {

using WeightVector = std::vector<int>;

// Bracket expression in the positive Chevalley generators x_1..x_n.
//
// Coefficients are kept as the integers they were written with and reduced
// mod p only when evaluated.  Construction normalises the tree: sums are
// flattened, a scaled sum distributes over its terms, nested scalings
// multiply out and a coefficient of 1 disappears.
class BracketExpr {
 public:
  enum class Kind { Generator, Bracket, Scaled, Sum };

  static BracketExpr generator(std::size_t index);  // 1-based
  static BracketExpr bracket(BracketExpr left, BracketExpr right);
  // Throws std::invalid_argument on a zero coefficient.
  static BracketExpr scaled(std::int64_t coeff, BracketExpr e);
  // Throws std::invalid_argument on an empty term list.
  static BracketExpr sum(std::vector<BracketExpr> terms);

  Kind kind() const noexcept { return kind_; }
  std::size_t index() const noexcept { return index_; }
  std::int64_t coeff() const noexcept { return coeff_; }
  // Bracket: {left, right}; Scaled: {operand}; Sum: terms.
  const std::vector<BracketExpr>& children() const noexcept { return children_; }
  const BracketExpr& left() const { return children_.at(0); }
  const BracketExpr& right() const { return children_.at(1); }
  const BracketExpr& operand() const { return children_.at(0); }

  // Largest generator index referenced.
  std::size_t max_index() const;
  // Number of generator occurrences of a monomial; the common height of a
  // homogeneous sum.  Throws MixedWeight on inhomogeneous sums.
  int height() const;
  // Throws MixedWeight when a sum mixes weights and IndexOutOfRange when a
  // generator index exceeds n.
  WeightVector weight(std::size_t n) const;

  friend bool operator==(const BracketExpr&, const BracketExpr&) = default;

 private:
  BracketExpr() = default;

  Kind kind_ = Kind::Generator;
  std::size_t index_ = 0;
  std::int64_t coeff_ = 1;
  std::vector<BracketExpr> children_;
};

// Canonical text in the relation grammar, coefficients as written:
// "[x4,[x3,x5]] - [x5,[x3,x4]]".  parse(to_string(e)) == e.
std::string to_string(const BracketExpr& e);
// Same, with every coefficient replaced by its residue in [0, p).
std::string to_string_mod(const BracketExpr& e, std::uint32_t p);

}  // namespace modlie

#endif  // MODLIE_BRACKET_EXPR_HPP
