#ifndef MODLIE_ALGEBRA_HPP
#define MODLIE_ALGEBRA_HPP

// The contragredient Lie superalgebra g(A) of a Cartan matrix over GF(p).
//
// The positive part is generated height by height from e_1..e_n.  A
// candidate [e_i, b] is identified with the tuple of its lowerings
// ([f_1, -], ..., [f_n, -]); two candidates are equal in g(A) iff their
// lowering tuples agree, so each weight component is the column space of
// the stacked lowering matrix.  This quotients out the radical without
// imposing any Serre relation.  The negative part is the image of the
// positive part under the automorphism
//
//   e_i -> f_i,  f_i -> (-1)^{p_i} e_i,  h_i -> -h_i,
//
// and is never built separately.
//
// Conventions: [h_i, e_j] = A_ij e_j, [h_i, f_j] = -A_ij f_j,
// [e_i, f_j] = delta_ij h_i.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "modlie/bracket_expr.hpp"
#include "modlie/cartan.hpp"
#include "modlie/fp.hpp"

namespace modlie {

inline constexpr std::size_t kDefaultMaxHeight = 64;

int height(const WeightVector& w);
Parity weight_parity(const WeightVector& w, const CartanSpec& s);
// A c mod p: the eigenvalues of h_1..h_n on any vector of weight c.
FpVector weight_of(const WeightVector& c, const CartanSpec& s);

struct RootDatum {
  WeightVector weight;
  std::size_t multiplicity;
  Parity parity;
  FpVector cartan_eigenvalues;

  int height() const { return modlie::height(weight); }
};

struct Superdimension {
  std::size_t even = 0;
  std::size_t odd = 0;

  friend bool operator==(const Superdimension&, const Superdimension&) = default;
};

std::ostream& operator<<(std::ostream& os, const Superdimension& s);

// Sparse vector over the global basis of g(A), sorted by index.
using SparseVector = std::vector<std::pair<std::uint32_t, Residue>>;

class AlgebraModel {
 public:
  enum class Part : std::uint8_t { Negative, Cartan, Positive };

  // A positive-root space.  Its basis occupies positive indices
  // [offset, offset + dim).
  struct Component {
    WeightVector weight;
    int height;
    Parity parity;
    std::size_t offset;
    std::size_t dim;
  };

  struct BasisElement {
    Part part;
    // Component of the positive element (or of its mirror); unused for h_i.
    std::size_t component;
    // Canonical word: [e_i, child] (or [f_i, child] on the negative side).
    // For e_i, f_i and h_i the generator index and no child.
    std::size_t generator;
    std::optional<std::size_t> child;  // global index
    Parity parity;
  };

  // Throws SingularCartanMatrix when A (of size > 1) is not invertible mod p and
  // NonTerminated when height max_height still carries a nonzero component.
  static AlgebraModel build(const CartanSpec& spec,
                            std::size_t max_height = kDefaultMaxHeight);

  const CartanSpec& spec() const noexcept { return spec_; }
  std::uint32_t prime() const noexcept { return spec_.prime(); }
  std::size_t rank() const noexcept { return spec_.size(); }
  std::size_t dimension() const noexcept { return basis_.size(); }
  std::size_t positive_dimension() const noexcept { return positive_count_; }

  const std::vector<Component>& components() const noexcept { return components_; }
  const Component* find_component(const WeightVector& w) const;
  const BasisElement& basis_element(std::size_t g) const { return basis_.at(g); }

  // Global indices: negatives [0, N), Cartan [N, N + n), positives
  // [N + n, 2N + n), N = positive_dimension().  The negative element at k
  // mirrors the positive element at k.
  std::size_t positive_index(std::size_t k) const { return positive_count_ + rank() + k; }
  std::size_t negative_index(std::size_t k) const { return k; }
  std::size_t e(std::size_t i) const;  // 0-based generator index
  std::size_t f(std::size_t i) const;
  std::size_t h(std::size_t i) const { return positive_count_ + i; }

  // Weight of a basis element: c for positives, -c for negatives, 0 for h.
  WeightVector weight(std::size_t g) const;
  Parity parity(std::size_t g) const { return basis_.at(g).parity; }

  FpVector zero() const { return FpVector(prime(), dimension()); }
  FpVector basis_vector(std::size_t g) const {
    return FpVector::unit(prime(), dimension(), g);
  }

  // Structure constants [b_g, b_k].
  const SparseVector& bracket(std::size_t g, std::size_t k) const {
    return table_[g * dimension() + k];
  }
  // Bilinear extension to arbitrary elements.
  FpVector bracket(const FpVector& x, const FpVector& y) const;

  // Coordinates of a positive element in the basis of component c.
  FpVector component_coordinates(const FpVector& x, const Component& c) const;

 private:
  explicit AlgebraModel(CartanSpec spec) : spec_(std::move(spec)) {}

  void finalize(const std::vector<std::vector<SparseVector>>& raise,
                const std::vector<std::vector<SparseVector>>& lower,
                const std::vector<std::size_t>& generator_positions);

  CartanSpec spec_;
  std::vector<Component> components_;
  std::map<WeightVector, std::size_t> component_of_;
  std::vector<BasisElement> basis_;
  std::vector<std::size_t> generator_position_;  // positive index of e_i
  std::size_t positive_count_ = 0;
  std::vector<SparseVector> table_;
};

// All weights with a nonzero component, sorted by (height, lexicographic).
std::vector<RootDatum> positive_roots(const AlgebraModel& m);
Superdimension superdimension(const AlgebraModel& m);
// Throws NoUniqueMaximum when several roots share the top height.
RootDatum maximal_root(const AlgebraModel& m);

struct Evaluation {
  WeightVector weight;
  FpVector element;      // global coordinates
  FpVector coordinates;  // in the weight component's basis; empty if no root
  bool is_zero() const { return element.is_zero(); }
};

// Evaluates an expression in x_i = e_i.  Throws MixedWeight on
// inhomogeneous sums and IndexOutOfRange on x_k with k > n.
Evaluation evaluate_bracket(const AlgebraModel& m, const BracketExpr& expr);

// {superdimension, roots: [{coeffs, height, multiplicity, parity,
// weight_mod_p}], maximal_root}
nlohmann::ordered_json to_json(const AlgebraModel& m);

}  // namespace modlie

#endif  // MODLIE_ALGEBRA_HPP
