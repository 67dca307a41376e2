#include "modlie/cartan.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>

namespace modlie {

const char* to_string(Parity p) noexcept {
  return p == Parity::Odd ? "odd" : "even";
}

namespace {

std::vector<Parity> parity_from_diagonal(const FpMatrix& m) {
  std::vector<Parity> out;
  for (std::size_t i = 0; i < m.rows() && i < m.cols(); ++i) {
    out.push_back(m(i, i) == 0 ? Parity::Odd : Parity::Even);
  }
  return out;
}

}  // namespace

CartanSpec::CartanSpec(FpMatrix matrix)
    : matrix_(std::move(matrix)), parity_(parity_from_diagonal(matrix_)) {
  validate();
}

CartanSpec::CartanSpec(FpMatrix matrix, std::vector<Parity> parity)
    : matrix_(std::move(matrix)), parity_(std::move(parity)) {
  validate();
}

CartanSpec CartanSpec::from_rows(
    std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows) {
  return CartanSpec(FpMatrix::from_rows(p, rows));
}

void CartanSpec::validate() const {
  if (prime() < 3) {
    throw InvalidCartan("Cartan matrices need p >= 3 (2 and 0 coincide mod 2)");
  }
  if (!matrix_.is_square() || matrix_.rows() == 0) {
    throw InvalidCartan("Cartan matrix must be square and nonempty");
  }
  if (parity_.size() != matrix_.rows()) {
    throw InvalidCartan("parity vector length differs from matrix size");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    const Residue d = matrix_(i, i);
    const std::string where = "node " + std::to_string(i + 1);
    if (d != 0 && d != 2) {
      throw InvalidCartan(where + ": diagonal entry " + std::to_string(d) +
                          " is neither 0 nor 2 (odd non-isotropic roots are "
                          "not supported)");
    }
    if (d == 0 && parity_[i] != Parity::Odd) {
      throw InvalidCartan(where + ": zero diagonal requires an odd root");
    }
    if (d == 2 && parity_[i] != Parity::Even) {
      throw InvalidCartan(where +
                          ": odd root with diagonal 2 is not supported");
    }
  }
}

std::size_t CartanSpec::isotropic_count() const {
  std::size_t k = 0;
  for (std::size_t i = 0; i < size(); ++i) k += is_isotropic(i) ? 1 : 0;
  return k;
}

std::vector<std::uint32_t> CartanSpec::key() const {
  std::vector<std::uint32_t> out;
  out.reserve(size() * size() + size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) out.push_back(matrix_(i, j));
  }
  for (auto par : parity_) out.push_back(parity_bit(par));
  return out;
}

std::ostream& operator<<(std::ostream& os, const CartanSpec& s) {
  const auto lifted = s.matrix().signed_lift();
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << (s.parity(i) == Parity::Odd ? "odd  " : "even ") << '[';
    for (std::size_t j = 0; j < s.size(); ++j) {
      std::string cell = std::to_string(lifted[i][j]);
      os << std::string(cell.size() < 3 ? 3 - cell.size() : 0, ' ') << cell;
    }
    os << " ]\n";
  }
  return os;
}

// ---------------------------------------------------------------------------

CartanSpec registry(int id) {
  using Rows = std::vector<std::vector<std::int64_t>>;
  static const Rows kMatrices[kRegistrySize] = {
      {{2, 0, -1, 0, 0},
       {0, 2, 0, 0, -1},
       {-1, 0, 0, 1, 1},
       {0, 0, 1, 0, -2},
       {0, -1, 1, -2, 0}},
      {{0, 0, 1, 0, 0},
       {0, 2, 0, 0, -1},
       {1, 0, 0, -1, -1},
       {0, 0, -1, 2, 0},
       {0, -1, -1, 0, 2}},
      {{2, 0, -1, 0, 0},
       {0, 2, 0, 0, -1},
       {-1, 0, 2, -1, 0},
       {0, 0, -1, 0, 2},
       {0, -2, 0, -1, 2}},
      {{2, 0, -1, 0, 0},
       {0, 0, 0, 2, 1},
       {-1, 0, 2, 0, -1},
       {0, -1, 0, 2, -1},
       {0, 1, -1, 2, 0}},
      {{0, 0, -1, 0, 0},
       {0, 2, 0, 0, -1},
       {-1, 0, 2, -1, -1},
       {0, 0, -1, 2, 0},
       {0, -1, -1, 0, 2}},
      {{2, 0, -1, 0, 0},
       {0, 0, 0, -2, -1},
       {-1, 0, 2, 0, -1},
       {0, -2, 0, 0, 0},
       {0, -1, -1, 0, 2}},
      {{2, 0, -1, 0, 0},
       {0, 2, 0, -1, -2},
       {-1, 0, 2, 0, -1},
       {0, 2, 0, 0, 0},
       {0, -1, -1, 0, 2}},
  };
  if (id < 1 || id > kRegistrySize) {
    throw UnknownId("no registry Cartan matrix with id " + std::to_string(id) +
                    " (valid ids are 1.." + std::to_string(kRegistrySize) +
                    ")");
  }
  return CartanSpec::from_rows(5, kMatrices[id - 1]);
}

std::vector<CartanSpec> registry_all() {
  std::vector<CartanSpec> out;
  for (int id = 1; id <= kRegistrySize; ++id) out.push_back(registry(id));
  return out;
}

// ---------------------------------------------------------------------------

bool EquivalenceWitness::is_identity() const {
  for (std::size_t i = 0; i < permutation.size(); ++i) {
    if (permutation[i] != i || row_scale[i] != 1) return false;
  }
  return true;
}

CartanSpec apply(const EquivalenceWitness& w, const CartanSpec& source) {
  const std::size_t n = source.size();
  if (w.permutation.size() != n || w.row_scale.size() != n) {
    throw std::invalid_argument("apply: witness size differs from matrix size");
  }
  const PrimeField f(source.prime());
  FpMatrix out(source.prime(), n, n);
  std::vector<Parity> parity(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t sa = w.permutation[a];
    if (!source.is_isotropic(sa) && w.row_scale[a] != 1) {
      throw std::invalid_argument("apply: rescaling of a non-isotropic row");
    }
    for (std::size_t b = 0; b < n; ++b) {
      out(a, b) = f.mul(w.row_scale[a], source(sa, w.permutation[b]));
    }
    parity[a] = source.parity(sa);
  }
  return CartanSpec(std::move(out), std::move(parity));
}

CartanSpec canonical_form(const CartanSpec& s) {
  const std::size_t n = s.size();
  const PrimeField f(s.prime());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  std::vector<std::uint32_t> best;
  std::vector<std::uint32_t> candidate(n * n + n);
  do {
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t sa = perm[a];
      Residue scale = 1;
      if (s.is_isotropic(sa)) {
        // The lex-minimal multiple of a row has leading nonzero entry 1.
        for (std::size_t b = 0; b < n; ++b) {
          if (const Residue v = s(sa, perm[b]); v != 0) {
            scale = f.inv(v);
            break;
          }
        }
      }
      for (std::size_t b = 0; b < n; ++b) {
        candidate[a * n + b] = f.mul(scale, s(sa, perm[b]));
      }
      candidate[n * n + a] = parity_bit(s.parity(sa));
    }
    if (best.empty() || candidate < best) best = candidate;
  } while (std::next_permutation(perm.begin(), perm.end()));

  FpMatrix m(s.prime(), n, n);
  std::vector<Parity> parity(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) m(a, b) = best[a * n + b];
    parity[a] = parity_from_bit(static_cast<int>(best[n * n + a]));
  }
  return CartanSpec(std::move(m), std::move(parity));
}

std::optional<EquivalenceWitness> equivalent(const CartanSpec& s1,
                                             const CartanSpec& s2) {
  if (s1.prime() != s2.prime()) {
    throw ModulusMismatch("equivalent: Cartan matrices over different primes");
  }
  if (s1.size() != s2.size()) return std::nullopt;
  const std::size_t n = s1.size();
  const PrimeField f(s1.prime());

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    EquivalenceWitness w{perm, std::vector<Residue>(n, 1)};
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      const std::size_t sa = perm[a];
      if (s2.parity(a) != s1.parity(sa)) {
        ok = false;
        break;
      }
      const Residue last = s1.is_isotropic(sa) ? s1.prime() - 1 : 1;
      bool row_ok = false;
      for (Residue lambda = 1; lambda <= last && !row_ok; ++lambda) {
        row_ok = true;
        for (std::size_t b = 0; b < n; ++b) {
          if (f.mul(lambda, s1(sa, perm[b])) != s2(a, b)) {
            row_ok = false;
            break;
          }
        }
        if (row_ok) w.row_scale[a] = lambda;
      }
      ok = row_ok;
    }
    if (ok) return w;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

FpMatrix invert_mod_p(const CartanSpec& s) { return invert(s.matrix()); }

// ---------------------------------------------------------------------------

DynkinGraph to_dynkin(const CartanSpec& s) {
  const PrimeField f(s.prime());
  DynkinGraph g;
  for (std::size_t i = 0; i < s.size(); ++i) {
    g.nodes.push_back({i + 1, s(i, i) == 0 ? NodeKind::IsotropicGrey
                                           : NodeKind::EvenWhite});
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s(i, j) == 0 && s(j, i) == 0) continue;
      const EdgeStyle style = (s(i, j) == 1 && s(j, i) == 1)
                                  ? EdgeStyle::Dotted
                                  : EdgeStyle::Plain;
      g.edges.push_back({i + 1, j + 1, f.signed_lift(s(i, j)),
                         f.signed_lift(s(j, i)), style});
    }
  }
  return g;
}

namespace {

std::string edge_label(const DynkinEdge& e) {
  if (e.a_ij == e.a_ji) return e.a_ij == -1 ? "" : std::to_string(e.a_ij);
  return "(" + std::to_string(e.a_ij) + "," + std::to_string(e.a_ji) + ")";
}

}  // namespace

std::string to_dot(const DynkinGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  os << "  node [shape=circle, width=0.35, fixedsize=true];\n";
  for (const auto& node : g.nodes) {
    os << "  n" << node.index << " [xlabel=\"" << node.index << "\"";
    if (node.kind == NodeKind::IsotropicGrey) {
      os << ", label=\"⊗\", style=filled, fillcolor=gray80";
    } else {
      os << ", label=\"\"";
    }
    os << "];\n";
  }
  for (const auto& e : g.edges) {
    os << "  n" << e.i << " -- n" << e.j;
    std::vector<std::string> attrs;
    if (e.style == EdgeStyle::Dotted) {
      attrs.push_back("style=dotted");
    } else if (auto label = edge_label(e); !label.empty()) {
      attrs.push_back("label=\"" + label + "\"");
    }
    if (!attrs.empty()) {
      os << " [";
      for (std::size_t k = 0; k < attrs.size(); ++k) {
        os << (k ? ", " : "") << attrs[k];
      }
      os << ']';
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_ascii(const DynkinGraph& g) {
  std::ostringstream os;
  os << "nodes:";
  for (const auto& node : g.nodes) {
    os << ' ' << node.index
       << (node.kind == NodeKind::IsotropicGrey ? "(x)" : "(o)");
  }
  os << '\n';
  std::size_t grey = 0;
  for (const auto& node : g.nodes) {
    grey += node.kind == NodeKind::IsotropicGrey ? 1 : 0;
  }
  os << "isotropic:";
  if (grey == 0) os << " none";
  for (const auto& node : g.nodes) {
    if (node.kind == NodeKind::IsotropicGrey) os << ' ' << node.index;
  }
  os << '\n';
  os << "edges:";
  if (g.edges.empty()) os << " none";
  os << '\n';
  for (const auto& e : g.edges) {
    os << "  " << e.i << (e.style == EdgeStyle::Dotted ? " .... " : " ---- ")
       << e.j << "  (" << e.a_ij << "," << e.a_ji << ")"
       << (e.style == EdgeStyle::Dotted ? " dotted" : "") << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

nlohmann::ordered_json to_json(const CartanSpec& s) {
  nlohmann::ordered_json doc;
  doc["p"] = s.prime();
  doc["n"] = s.size();
  doc["matrix"] = s.matrix().signed_lift();
  auto parity = nlohmann::ordered_json::array();
  for (auto par : s.parity()) parity.push_back(to_string(par));
  doc["parity"] = parity;
  return doc;
}

CartanSpec cartan_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw InvalidCartan("Cartan JSON must be an object");
    const auto p = doc.at("p").get<std::int64_t>();
    if (p < 2 || p >= (std::int64_t{1} << 31) ||
        !is_prime(static_cast<std::uint64_t>(p))) {
      throw InvalidCartan("field 'p' must be a prime, got " +
                          std::to_string(p));
    }
    const auto rows = doc.at("matrix").get<std::vector<std::vector<std::int64_t>>>();
    // "n" is optional and only cross-checked.
    const auto n = doc.contains("n") ? doc.at("n").get<std::int64_t>()
                                     : static_cast<std::int64_t>(rows.size());
    if (n < 1 || rows.size() != static_cast<std::size_t>(n)) {
      throw InvalidCartan("field 'matrix' must have n rows");
    }
    for (const auto& row : rows) {
      if (row.size() != static_cast<std::size_t>(n)) {
        throw InvalidCartan("field 'matrix' must be n x n");
      }
    }
    auto m = FpMatrix::from_rows(static_cast<std::uint32_t>(p), rows);
    if (!doc.contains("parity")) return CartanSpec(std::move(m));
    std::vector<Parity> parity;
    for (const auto& entry : doc.at("parity")) {
      const auto text = entry.get<std::string>();
      if (text == "even") {
        parity.push_back(Parity::Even);
      } else if (text == "odd") {
        parity.push_back(Parity::Odd);
      } else {
        throw InvalidCartan("parity entries must be \"even\" or \"odd\", got \"" +
                            text + "\"");
      }
    }
    return CartanSpec(std::move(m), std::move(parity));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidCartan(std::string("malformed Cartan JSON: ") + e.what());
  }
}

}  // namespace modlie
