#ifndef MODLIE_REFLECTIONS_HPP
#define MODLIE_REFLECTIONS_HPP

// Odd reflections at isotropic simple roots, their orbits up to
// equivalence, and the reflection table of an orbit.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "modlie/algebra.hpp"
#include "modlie/cartan.hpp"

namespace modlie {

// Cartan matrix of the reflected system of simple roots, read off inside the
// built algebra:
//   e'_i = f_i, f'_i = e_i;
//   e'_j = [e_i, e_j], f'_j = [f_i, f_j] when A_ij or A_ji is nonzero;
//   e'_j = e_j, f'_j = f_j otherwise;
//   h'_j = [e'_j, f'_j] and [h'_j, e'_k] = B_jk e'_k.
// Even rows are rescaled to B_jj = 2; isotropic rows are left as computed.
// `root` is 0-based.  Throws NotIsotropic unless root is isotropic.
CartanSpec odd_reflect(const AlgebraModel& model, std::size_t root);
CartanSpec odd_reflect(const CartanSpec& spec, std::size_t root,
                       std::size_t max_height = kDefaultMaxHeight);

struct OrbitNode {
  CartanSpec representative;  // the matrix as first reached
  CartanSpec canonical;
};

struct OrbitEdge {
  std::size_t from;
  std::size_t root;  // 0-based, in the indexing of `from`'s representative
  std::size_t to;
};

struct OrbitGraph {
  std::vector<OrbitNode> nodes;  // discovery order, seed first
  std::vector<OrbitEdge> edges;

  std::optional<std::size_t> find(const CartanSpec& s) const;
  std::optional<std::size_t> target(std::size_t from, std::size_t root) const;
};

// Breadth-first closure under odd reflections, nodes identified by
// canonical_form.
OrbitGraph orbit(const CartanSpec& seed,
                 std::size_t max_height = kDefaultMaxHeight);

std::string to_dot(const OrbitGraph& g);

struct ReflectionTable {
  // Row r describes class r + 1; its simple roots are indexed as in
  // representatives[r].
  std::vector<CartanSpec> classes;          // canonical forms
  std::vector<CartanSpec> representatives;  // the numbering matrices
  // cells[r][i]: 1-based class number, or nullopt when root i of the row's
  // representative is not isotropic.
  std::vector<std::vector<std::optional<std::size_t>>> cells;
  // Witness taking the orbit node's representative to the numbering matrix.
  std::vector<EquivalenceWitness> witnesses;
};

// Numbers the orbit's classes by matching them against `numbering` (class
// k + 1 is the class of numbering[k]); remaining classes follow in discovery
// order.  Throws std::invalid_argument if a numbering matrix lies outside
// the orbit.
ReflectionTable reflection_table(const OrbitGraph& g,
                                 const std::vector<CartanSpec>& numbering);

// Rows like "1)  -  -  2  3  4".
std::string to_text(const ReflectionTable& t);
// {"classes": [...], "cells": [[null, null, 2, 3, 4], ...]}
nlohmann::ordered_json to_json(const ReflectionTable& t);

}  // namespace modlie

#endif  // MODLIE_REFLECTIONS_HPP
