#include "modlie/reflections.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace modlie {

CartanSpec odd_reflect(const AlgebraModel& model, std::size_t root) {
  const CartanSpec& a = model.spec();
  const std::size_t n = a.size();
  if (root >= n) {
    throw IndexOutOfRange("root index " + std::to_string(root + 1) +
                          " out of range for rank " + std::to_string(n));
  }
  if (!a.is_isotropic(root)) {
    throw NotIsotropic("reflection in root " + std::to_string(root + 1) +
                       " is not appropriate because A_ii != 0");
  }
  const PrimeField f(a.prime());
  const std::size_t i = root;

  std::vector<FpVector> e_new;
  std::vector<FpVector> f_new;
  std::vector<WeightVector> w_new;
  std::vector<Parity> parity_new;
  for (std::size_t j = 0; j < n; ++j) {
    WeightVector w(n, 0);
    if (j == i) {
      e_new.push_back(model.basis_vector(model.f(i)));
      f_new.push_back(model.basis_vector(model.e(i)));
      w[i] = -1;
      parity_new.push_back(a.parity(i));
    } else if (a(i, j) != 0 || a(j, i) != 0) {
      e_new.push_back(model.bracket(model.basis_vector(model.e(i)),
                                    model.basis_vector(model.e(j))));
      f_new.push_back(model.bracket(model.basis_vector(model.f(i)),
                                    model.basis_vector(model.f(j))));
      w[i] = 1;
      w[j] = 1;
      parity_new.push_back(parity_from_bit(parity_bit(a.parity(i)) +
                                           parity_bit(a.parity(j))));
    } else {
      e_new.push_back(model.basis_vector(model.e(j)));
      f_new.push_back(model.basis_vector(model.f(j)));
      w[j] = 1;
      parity_new.push_back(a.parity(j));
    }
    if (e_new.back().is_zero() || f_new.back().is_zero()) {
      throw std::logic_error("odd_reflect: new Chevalley generator vanishes");
    }
    w_new.push_back(std::move(w));
  }

  // Eigenvalue of h_m on e'_k.
  auto eigen = [&](std::size_t m, std::size_t k) {
    std::int64_t acc = 0;
    for (std::size_t l = 0; l < n; ++l) {
      acc += static_cast<std::int64_t>(a(m, l)) * w_new[k][l];
    }
    return f.reduce(acc);
  };

  FpMatrix b(a.prime(), n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const FpVector hj = model.bracket(e_new[j], f_new[j]);
    for (std::size_t g = 0; g < hj.size(); ++g) {
      if (hj[g] != 0 &&
          model.basis_element(g).part != AlgebraModel::Part::Cartan) {
        throw std::logic_error("odd_reflect: [e'_j, f'_j] leaves the Cartan");
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      Residue acc = 0;
      for (std::size_t m = 0; m < n; ++m) {
        acc = f.fma(hj[model.h(m)], eigen(m, k), acc);
      }
      b(j, k) = acc;
    }
    if (parity_new[j] == Parity::Even && b(j, j) != 0) {
      const Residue scale = f.mul(2, f.inv(b(j, j)));
      for (std::size_t k = 0; k < n; ++k) b(j, k) = f.mul(scale, b(j, k));
    }
  }
  return CartanSpec(std::move(b), std::move(parity_new));
}

CartanSpec odd_reflect(const CartanSpec& spec, std::size_t root,
                       std::size_t max_height) {
  if (root < spec.size() && !spec.is_isotropic(root)) {
    throw NotIsotropic("reflection in root " + std::to_string(root + 1) +
                       " is not appropriate because A_ii != 0");
  }
  return odd_reflect(AlgebraModel::build(spec, max_height), root);
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> OrbitGraph::find(const CartanSpec& s) const {
  const auto canon = canonical_form(s);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].canonical == canon) return k;
  }
  return std::nullopt;
}

std::optional<std::size_t> OrbitGraph::target(std::size_t from,
                                              std::size_t root) const {
  for (const auto& e : edges) {
    if (e.from == from && e.root == root) return e.to;
  }
  return std::nullopt;
}

OrbitGraph orbit(const CartanSpec& seed, std::size_t max_height) {
  OrbitGraph g;
  std::map<std::vector<std::uint32_t>, std::size_t> ids;
  auto intern = [&](const CartanSpec& s) {
    auto canon = canonical_form(s);
    auto [it, inserted] = ids.emplace(canon.key(), g.nodes.size());
    if (inserted) g.nodes.push_back({s, std::move(canon)});
    return it->second;
  };
  intern(seed);
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    const CartanSpec rep = g.nodes[k].representative;
    const auto model = AlgebraModel::build(rep, max_height);
    for (std::size_t i = 0; i < rep.size(); ++i) {
      if (!rep.is_isotropic(i)) continue;
      const std::size_t to = intern(odd_reflect(model, i));
      g.edges.push_back({k, i, to});
    }
  }
  return g;
}

std::string to_dot(const OrbitGraph& g) {
  std::ostringstream os;
  os << "digraph orbit {\n";
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    os << "  c" << k + 1 << " [label=\"" << k + 1 << "\"];\n";
  }
  for (const auto& e : g.edges) {
    os << "  c" << e.from + 1 << " -> c" << e.to + 1 << " [label=\""
       << e.root + 1 << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

ReflectionTable reflection_table(const OrbitGraph& g,
                                 const std::vector<CartanSpec>& numbering) {
  const std::size_t classes = g.nodes.size();
  // Orbit node of each class number, and the reverse map.
  std::vector<std::size_t> node_of;
  std::vector<std::size_t> number_of(classes, 0);
  ReflectionTable t;
  for (const auto& ref : numbering) {
    const auto node = g.find(ref);
    if (!node) {
      throw std::invalid_argument(
          "reflection_table: numbering matrix outside the orbit");
    }
    if (number_of[*node] != 0) {
      throw std::invalid_argument(
          "reflection_table: two numbering matrices in one class");
    }
    node_of.push_back(*node);
    number_of[*node] = node_of.size();
    t.representatives.push_back(ref);
  }
  for (std::size_t k = 0; k < classes; ++k) {
    if (number_of[k] != 0) continue;
    node_of.push_back(k);
    number_of[k] = node_of.size();
    t.representatives.push_back(g.nodes[k].representative);
  }

  for (std::size_t r = 0; r < node_of.size(); ++r) {
    const auto& node = g.nodes[node_of[r]];
    const auto& ref = t.representatives[r];
    auto w = equivalent(node.representative, ref);
    if (!w) throw std::logic_error("reflection_table: class match lost");
    std::vector<std::optional<std::size_t>> row(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      if (!ref.is_isotropic(i)) continue;
      const auto to = g.target(node_of[r], w->permutation[i]);
      if (!to) throw std::logic_error("reflection_table: missing orbit edge");
      row[i] = number_of[*to];
    }
    t.classes.push_back(node.canonical);
    t.cells.push_back(std::move(row));
    t.witnesses.push_back(std::move(*w));
  }
  return t;
}

std::string to_text(const ReflectionTable& t) {
  std::ostringstream os;
  const std::size_t n = t.cells.empty() ? 0 : t.cells.front().size();
  os << "    ";
  for (std::size_t i = 0; i < n; ++i) os << "  " << i + 1;
  os << '\n';
  for (std::size_t r = 0; r < t.cells.size(); ++r) {
    std::string label = std::to_string(r + 1) + ")";
    os << label << std::string(label.size() < 4 ? 4 - label.size() : 0, ' ');
    for (const auto& cell : t.cells[r]) {
      os << "  " << (cell ? std::to_string(*cell) : std::string("-"));
    }
    os << '\n';
  }
  return os.str();
}

nlohmann::ordered_json to_json(const ReflectionTable& t) {
  nlohmann::ordered_json doc;
  auto classes = nlohmann::ordered_json::array();
  for (const auto& c : t.representatives) classes.push_back(to_json(c));
  doc["classes"] = classes;
  auto cells = nlohmann::ordered_json::array();
  for (const auto& row : t.cells) {
    auto jr = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (cell) {
        jr.push_back(*cell);
      } else {
        jr.push_back(nullptr);
      }
    }
    cells.push_back(jr);
  }
  doc["cells"] = cells;
  return doc;
}

}  // namespace modlie
