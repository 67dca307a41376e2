#ifndef MODLIE_CARTAN_HPP
#define MODLIE_CARTAN_HPP

// Cartan matrices with parities over GF(p): validation, the built-in
// registry of the seven el(5;5) matrices, equivalence up to relabelling and
// rescaling of isotropic rows, canonical forms and Dynkin-diagram export.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "modlie/fp.hpp"

namespace modlie {

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline int parity_bit(Parity p) noexcept { return p == Parity::Odd ? 1 : 0; }
inline Parity parity_from_bit(int bit) noexcept {
  return (bit & 1) ? Parity::Odd : Parity::Even;
}
const char* to_string(Parity p) noexcept;

// A Cartan matrix A (with [h_i, e_j] = A_ij e_j) and the parities of the
// simple roots.  Every diagonal entry is 0 (isotropic, odd) or 2 (even);
// anything else is rejected with InvalidCartan.
class CartanSpec {
 public:
  // Parity inferred from the diagonal: odd iff A_ii == 0.
  explicit CartanSpec(FpMatrix matrix);
  CartanSpec(FpMatrix matrix, std::vector<Parity> parity);

  static CartanSpec from_rows(std::uint32_t p,
                              const std::vector<std::vector<std::int64_t>>& rows);

  std::uint32_t prime() const noexcept { return matrix_.prime(); }
  std::size_t size() const noexcept { return matrix_.rows(); }
  const FpMatrix& matrix() const noexcept { return matrix_; }
  Residue operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }
  const std::vector<Parity>& parity() const noexcept { return parity_; }
  Parity parity(std::size_t i) const { return parity_.at(i); }
  bool is_isotropic(std::size_t i) const {
    return matrix_(i, i) == 0 && parity_.at(i) == Parity::Odd;
  }
  std::size_t isotropic_count() const;

  // Row-major residues followed by the parity bits; the ordering key of
  // canonical_form.
  std::vector<std::uint32_t> key() const;

  friend bool operator==(const CartanSpec&, const CartanSpec&) = default;

 private:
  void validate() const;

  FpMatrix matrix_;
  std::vector<Parity> parity_;
};

std::ostream& operator<<(std::ostream& os, const CartanSpec& s);

inline constexpr int kRegistrySize = 7;

// The matrices 1)..7) of el(5;5) over GF(5).  Throws UnknownId outside 1..7.
CartanSpec registry(int id);
std::vector<CartanSpec> registry_all();

// target(a, b) = row_scale[a] * source(perm[a], perm[b]) and
// target.parity[a] = source.parity[perm[a]].  row_scale is 1 on rows that
// are not isotropic in the source.
struct EquivalenceWitness {
  std::vector<std::size_t> permutation;
  std::vector<Residue> row_scale;

  bool is_identity() const;
};

CartanSpec apply(const EquivalenceWitness& w, const CartanSpec& source);

// Lexicographically minimal key over all index permutations combined with
// nonzero rescalings of isotropic rows.  Idempotent.
CartanSpec canonical_form(const CartanSpec& s);

// Exhaustive witness search: a witness taking s1 to s2, or nullopt.
// Throws ModulusMismatch on different primes; returns nullopt on different
// sizes.
std::optional<EquivalenceWitness> equivalent(const CartanSpec& s1,
                                             const CartanSpec& s2);

// Inverse of the Cartan matrix over GF(p); throws SingularMatrix.
FpMatrix invert_mod_p(const CartanSpec& s);

// ---------------------------------------------------------------------------
// Dynkin diagrams

enum class NodeKind : std::uint8_t { EvenWhite, IsotropicGrey };
enum class EdgeStyle : std::uint8_t { Plain, Dotted };

struct DynkinNode {
  std::size_t index;  // 1-based
  NodeKind kind;
};

struct DynkinEdge {
  std::size_t i;  // 1-based, i < j
  std::size_t j;
  std::int64_t a_ij;  // signed lifts
  std::int64_t a_ji;
  EdgeStyle style;
};

struct DynkinGraph {
  std::vector<DynkinNode> nodes;
  std::vector<DynkinEdge> edges;
};

// Edge iff A_ij or A_ji is nonzero; dotted iff A_ij == A_ji == 1 as residues
// (the mod-5 shorthand for four segments, 1 = -4).
DynkinGraph to_dynkin(const CartanSpec& s);
std::string to_dot(const DynkinGraph& g, const std::string& name = "dynkin");
std::string to_ascii(const DynkinGraph& g);

// ---------------------------------------------------------------------------
// JSON: {"p": 5, "n": 5, "matrix": [[...]], "parity": ["even", ...]}

nlohmann::ordered_json to_json(const CartanSpec& s);
// Residues are normalised on load; parity defaults to odd iff A_ii == 0.
// Throws InvalidCartan on malformed documents.
CartanSpec cartan_from_json(const nlohmann::json& doc);

}  // namespace modlie

#endif  // MODLIE_CARTAN_HPP
