#ifndef MODLIE_RELATIONS_HPP
#define MODLIE_RELATIONS_HPP

// Relations between the positive Chevalley generators: the text grammar,
// Serre relations, the built-in el(5;5) relation lists, verification
// against a built algebra, and discovery of defining relations.
//
// Grammar (whitespace insignificant):
//   expr   := term (('+' | '-') term)*      a leading sign is allowed
//   term   := [integer ['*']] factor
//   factor := 'x' index | '[' expr ',' expr ']'

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "modlie/algebra.hpp"
#include "modlie/bracket_expr.hpp"
#include "modlie/cartan.hpp"

namespace modlie {

// Throws SyntaxError (with the 0-based offset of the offending character).
BracketExpr parse(std::string_view text);
// parse() followed by a bind check against rank n; throws IndexOutOfRange.
BracketExpr parse(std::string_view text, std::size_t n);

struct Relation {
  std::string label;
  BracketExpr expr;
};

struct RelationSet {
  std::string provenance;  // "paper:k", "serre", "discovered", "file:..."
  std::vector<Relation> relations;
};

// For even i and each j != i: ad(x_i)^(1 + m_ij)(x_j), m_ij the residue of
// -A_ij in [0, p).  For isotropic i: [x_i, x_i] and [x_i, x_j] for every
// j != i with A_ij == 0.  Throws InvalidCartan for other diagonals.
RelationSet serre_relations(const CartanSpec& s);

// The non-Serre relations listed for el(5;5) with matrix id (1..7),
// coefficients as printed.  Throws UnknownId.
RelationSet paper_relations(int id);

// Relation file: one relation per line, '#' starts a comment.  Throws
// SyntaxError with the line number in the message.
RelationSet parse_relation_file(std::string_view contents,
                                std::string provenance);

struct VerificationEntry {
  std::string label;
  WeightVector weight;
  int height = 0;
  bool zero = false;
  std::optional<std::vector<Residue>> residual;  // set when nonzero
  std::optional<std::string> error;              // e.g. MixedWeight
};

struct VerificationReport {
  std::vector<VerificationEntry> entries;  // input order

  bool all_zero() const;
};

VerificationReport verify(const AlgebraModel& m, const RelationSet& r);
VerificationReport verify(const CartanSpec& s, const RelationSet& r,
                          std::size_t max_height = kDefaultMaxHeight);

// [{label, weight, zero, residual?}]
nlohmann::ordered_json to_json(const VerificationReport& r);

// ---------------------------------------------------------------------------
// Discovery

// Per-weight bookkeeping.  free_dim = model_dim + ideal_dim + new_dim.
struct WeightStats {
  WeightVector weight;
  std::size_t free_dim = 0;   // super Lyndon words of this weight
  std::size_t model_dim = 0;  // rank of the evaluation map
  std::size_t ideal_dim = 0;  // consequences of lower-height relations
  std::size_t new_dim = 0;    // genuinely new relations
};

class Discovery {
 public:
  const RelationSet& relations() const noexcept { return relations_; }
  const std::vector<WeightStats>& stats() const noexcept { return stats_; }
  std::size_t up_to_height() const noexcept { return up_to_height_; }

  // True iff expr (of height <= up_to_height) lies in the span of the
  // discovered relations and their consequences, i.e. vanishes in the model.
  bool contains(const BracketExpr& expr) const;
  // True iff expr lies in the ideal generated by the relations found at
  // strictly lower heights.
  bool in_lower_ideal(const BracketExpr& expr) const;

 private:
  friend Discovery discover(const AlgebraModel&, std::size_t);

  bool member(const BracketExpr& expr, bool include_new) const;

  std::size_t n_ = 0;
  std::uint32_t p_ = 0;
  std::vector<Parity> parity_;
  std::size_t up_to_height_ = 0;
  RelationSet relations_;
  std::vector<WeightStats> stats_;
  // Word-coordinate spans of the lower ideal and of ideal + new relations.
  std::map<WeightVector, std::vector<std::map<std::vector<int>, Residue>>>
      ideal_span_;
  std::map<WeightVector, std::vector<std::map<std::vector<int>, Residue>>>
      relation_span_;
};

inline constexpr std::size_t kMaxDiscoveryHeight = 8;

// Height by height, the kernel of the evaluation map from the free Lie
// superalgebra on x_1..x_n (super Lyndon basis) onto the model, modulo the
// ideal generated by the relations of lower height.  New relations are
// reported in Lyndon-word coordinates.  Throws HeightLimitExceeded above
// kMaxDiscoveryHeight.
Discovery discover(const AlgebraModel& m, std::size_t up_to_height);

// Super Lyndon words of a given content: Lyndon words plus squares of odd
// Lyndon words, as standard-bracketed expressions.  0-based letters in
// `word`, 1-based generators in the expression.
struct LyndonElement {
  std::vector<int> word;
  bool square = false;  // [u, u] for odd Lyndon u = word
  BracketExpr bracket;
};
std::vector<LyndonElement> super_lyndon_basis(const WeightVector& content,
                                              const std::vector<Parity>& parity);

}  // namespace modlie

#endif  // MODLIE_RELATIONS_HPP
