#include "modlie/algebra.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace modlie {

namespace {

// (-1)^bit as a residue.
Residue sign(const PrimeField& f, int bit) { return (bit & 1) ? f.neg(1) : 1; }

// Dense accumulator with a touched list, reused across table entries.
class Accumulator {
 public:
  Accumulator(const PrimeField& f, std::size_t size)
      : f_(f), values_(size, 0), touched_(size, false) {}

  void add(std::uint32_t index, Residue v) {
    if (v == 0) return;
    if (!touched_[index]) {
      touched_[index] = true;
      indices_.push_back(index);
    }
    values_[index] = f_.add(values_[index], v);
  }

  SparseVector take() {
    std::sort(indices_.begin(), indices_.end());
    SparseVector out;
    for (auto idx : indices_) {
      if (values_[idx] != 0) out.emplace_back(idx, values_[idx]);
      values_[idx] = 0;
      touched_[idx] = false;
    }
    indices_.clear();
    return out;
  }

 private:
  const PrimeField& f_;
  std::vector<Residue> values_;
  std::vector<bool> touched_;
  std::vector<std::uint32_t> indices_;
};

}  // namespace

int height(const WeightVector& w) {
  int h = 0;
  for (int c : w) h += c;
  return h;
}

Parity weight_parity(const WeightVector& w, const CartanSpec& s) {
  int bit = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bit += w[i] * parity_bit(s.parity(i));
  }
  return parity_from_bit(bit);
}

FpVector weight_of(const WeightVector& c, const CartanSpec& s) {
  if (c.size() != s.size()) {
    throw std::invalid_argument("weight_of: weight length differs from rank");
  }
  std::vector<std::int64_t> coeffs(c.begin(), c.end());
  return s.matrix() * FpVector::from_integers(s.prime(), coeffs);
}

std::ostream& operator<<(std::ostream& os, const Superdimension& s) {
  return os << '(' << s.even << '|' << s.odd << ')';
}

// ---------------------------------------------------------------------------

AlgebraModel AlgebraModel::build(const CartanSpec& spec,
                                 std::size_t max_height) {
  const std::size_t n = spec.size();
  // The 1x1 zero matrix is let through: its algebra (1|2) has h central,
  // but with a single simple root no two weights can collide.
  if (n > 1 && modlie::rank(spec.matrix()) < n) {
    throw SingularCartanMatrix(
        "Cartan matrix is singular mod " + std::to_string(spec.prime()) +
        "; algebras with a center are not supported");
  }
  const PrimeField f(spec.prime());
  AlgebraModel m(spec);

  // Build-time data indexed by positive basis position k.
  struct Pending {
    std::size_t component;
    std::size_t generator;
    std::optional<std::size_t> child;
  };
  std::vector<Pending> elems;
  // raise[k][i] = [e_i, b_k] over positive positions.
  std::vector<std::vector<SparseVector>> raise;
  // lower[k][j] = [f_j, b_k]: over Cartan indices at height 1, over positive
  // positions above.
  std::vector<std::vector<SparseVector>> lower;
  std::vector<std::size_t> generator_positions(n);

  auto p_bit = [&](std::size_t i) { return parity_bit(spec.parity(i)); };

  // Height 1.
  {
    std::vector<WeightVector> units;
    for (std::size_t i = 0; i < n; ++i) {
      WeightVector w(n, 0);
      w[i] = 1;
      units.push_back(std::move(w));
    }
    std::sort(units.begin(), units.end());
    for (const auto& w : units) {
      const auto i = static_cast<std::size_t>(
          std::find(w.begin(), w.end(), 1) - w.begin());
      const std::size_t k = elems.size();
      m.component_of_[w] = m.components_.size();
      m.components_.push_back({w, 1, spec.parity(i), k, 1});
      elems.push_back({m.components_.size() - 1, i, std::nullopt});
      raise.emplace_back(n);
      lower.emplace_back(n);
      // [f_i, e_i] = -(-1)^{p_i} h_i
      lower[k][i] = {{static_cast<std::uint32_t>(i), f.neg(sign(f, p_bit(i)))}};
      generator_positions[i] = k;
    }
  }

  std::size_t level_begin = 0;
  std::size_t level_end = m.components_.size();
  for (std::size_t d = 2;; ++d) {
    std::set<WeightVector> targets;
    for (std::size_t c = level_begin; c < level_end; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        WeightVector w = m.components_[c].weight;
        ++w[i];
        targets.insert(std::move(w));
      }
    }

    const std::size_t next_begin = m.components_.size();
    for (const auto& w : targets) {
      struct Candidate {
        std::size_t generator;
        std::size_t child;
      };
      std::vector<Candidate> candidates;
      for (std::size_t i = 0; i < n; ++i) {
        if (w[i] == 0) continue;
        WeightVector below = w;
        --below[i];
        auto it = m.component_of_.find(below);
        if (it == m.component_of_.end()) continue;
        const auto& comp = m.components_[it->second];
        for (std::size_t t = 0; t < comp.dim; ++t) {
          candidates.push_back({i, comp.offset + t});
        }
      }

      // Rows of the lowering matrix: the components w - unit_j.
      std::vector<std::size_t> row_component;  // per j, or npos
      std::vector<std::size_t> row_offset(n, 0);
      std::size_t rows = 0;
      constexpr auto npos = static_cast<std::size_t>(-1);
      for (std::size_t j = 0; j < n; ++j) {
        row_component.push_back(npos);
        if (w[j] == 0) continue;
        WeightVector below = w;
        --below[j];
        auto it = m.component_of_.find(below);
        if (it == m.component_of_.end()) continue;
        row_component[j] = it->second;
        row_offset[j] = rows;
        rows += m.components_[it->second].dim;
      }
      auto row_of = [&](std::size_t j, std::size_t k) {
        return row_offset[j] + (k - m.components_[row_component[j]].offset);
      };
      // The component holding positive position k among the row blocks.
      auto block_of = [&](std::size_t k) {
        const std::size_t comp = elems[k].component;
        for (std::size_t j = 0; j < n; ++j) {
          if (row_component[j] == comp) return j;
        }
        throw std::logic_error("lowering leaves the expected weight spaces");
      };

      FpMatrix lowering(spec.prime(), rows, candidates.size());
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        const auto [i, k] = candidates[c];
        const auto& b_comp = m.components_[elems[k].component];
        const Residue eig = weight_of(b_comp.weight, spec)[i];
        // [f_j, [e_i, b]] = [[f_j, e_i], b] + (-1)^{p_j p_i} [e_i, [f_j, b]]
        {
          const Residue coeff = f.mul(f.neg(sign(f, p_bit(i))), eig);
          auto& cell = lowering(row_of(i, k), c);
          cell = f.add(cell, coeff);
        }
        for (std::size_t j = 0; j < n; ++j) {
          const Residue s = sign(f, p_bit(j) * p_bit(i));
          if (d == 2) {
            // b = e_m; [f_j, e_m] = delta_jm (-(-1)^{p_m}) h_m and
            // [e_i, h_m] = -A_mi e_i.
            const std::size_t mgen = elems[k].generator;
            if (j != mgen) continue;
            Residue coeff = f.mul(s, sign(f, p_bit(mgen)));
            coeff = f.mul(coeff, spec(mgen, i));
            if (coeff == 0) continue;
            auto& cell = lowering(row_of(j, generator_positions[i]), c);
            cell = f.add(cell, coeff);
          } else {
            for (const auto& [q, a] : lower[k][j]) {
              for (const auto& [t, r] : raise[q][i]) {
                auto& cell = lowering(row_of(j, t), c);
                cell = f.add(cell, f.mul(s, f.mul(a, r)));
              }
            }
          }
        }
      }

      const auto ech = row_echelon(lowering);
      if (ech.rank() == 0) continue;

      const std::size_t comp_index = m.components_.size();
      const std::size_t offset = elems.size();
      m.component_of_[w] = comp_index;
      m.components_.push_back({w, static_cast<int>(d),
                               weight_parity(w, spec), offset, ech.rank()});

      // Positive position of each lowering row.
      std::vector<std::size_t> row_position(rows);
      for (std::size_t j = 0; j < n; ++j) {
        if (row_component[j] == npos) continue;
        const auto& comp = m.components_[row_component[j]];
        for (std::size_t t = 0; t < comp.dim; ++t) {
          row_position[row_offset[j] + t] = comp.offset + t;
        }
      }

      for (std::size_t r = 0; r < ech.rank(); ++r) {
        const std::size_t col = ech.pivot_columns[r];
        const auto [i, k] = candidates[col];
        elems.push_back({comp_index, i, k});
        raise.emplace_back(n);
        lower.emplace_back(n);
        auto& low = lower.back();
        for (std::size_t row = 0; row < rows; ++row) {
          if (const Residue v = lowering(row, col); v != 0) {
            const std::size_t pos = row_position[row];
            low[block_of(pos)].emplace_back(static_cast<std::uint32_t>(pos), v);
          }
        }
        for (auto& sv : low) std::sort(sv.begin(), sv.end());
      }
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        const auto [i, k] = candidates[c];
        SparseVector image;
        for (std::size_t r = 0; r < ech.rank(); ++r) {
          if (const Residue v = ech.reduced(r, c); v != 0) {
            image.emplace_back(static_cast<std::uint32_t>(offset + r), v);
          }
        }
        raise[k][i] = std::move(image);
      }
    }

    level_begin = next_begin;
    level_end = m.components_.size();
    if (level_begin == level_end) break;
    if (d > max_height) {
      throw NonTerminated("positive part still nonzero at height " +
                          std::to_string(d) + " (max_height " +
                          std::to_string(max_height) + ")");
    }
  }

  m.positive_count_ = elems.size();
  m.basis_.clear();
  const std::size_t N = elems.size();
  for (std::size_t k = 0; k < N; ++k) {
    const auto& e = elems[k];
    m.basis_.push_back({Part::Negative, e.component, e.generator,
                        e.child ? std::optional<std::size_t>(*e.child)
                                : std::nullopt,
                        m.components_[e.component].parity});
  }
  for (std::size_t i = 0; i < n; ++i) {
    m.basis_.push_back({Part::Cartan, 0, i, std::nullopt, Parity::Even});
  }
  for (std::size_t k = 0; k < N; ++k) {
    const auto& e = elems[k];
    m.basis_.push_back({Part::Positive, e.component, e.generator,
                        e.child ? std::optional<std::size_t>(N + n + *e.child)
                                : std::nullopt,
                        m.components_[e.component].parity});
  }
  m.finalize(raise, lower, generator_positions);
  return m;
}

void AlgebraModel::finalize(
    const std::vector<std::vector<SparseVector>>& raise,
    const std::vector<std::vector<SparseVector>>& lower,
    const std::vector<std::size_t>& generator_positions) {
  const std::size_t n = rank();
  const std::size_t N = positive_count_;
  const std::size_t D = dimension();
  const PrimeField f(prime());
  generator_position_ = generator_positions;
  table_.assign(D * D, {});

  auto pos = [&](std::size_t k) { return static_cast<std::uint32_t>(N + n + k); };
  auto neg = [&](std::size_t k) { return static_cast<std::uint32_t>(k); };
  auto cart = [&](std::size_t i) { return static_cast<std::uint32_t>(N + i); };
  auto height_of = [&](std::size_t k) {
    return components_[basis_[pos(k)].component].height;
  };
  auto p_bit = [&](std::size_t i) { return parity_bit(spec_.parity(i)); };

  Accumulator acc(f, D);

  // Cartan rows.
  for (std::size_t mi = 0; mi < n; ++mi) {
    for (std::size_t k = 0; k < N; ++k) {
      const Residue eig =
          weight_of(components_[basis_[pos(k)].component].weight, spec_)[mi];
      if (eig == 0) continue;
      table_[cart(mi) * D + pos(k)] = {{pos(k), eig}};
      table_[cart(mi) * D + neg(k)] = {{neg(k), f.neg(eig)}};
    }
  }

  // Generator rows.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ei = pos(generator_positions[i]);
    const std::size_t fi = neg(generator_positions[i]);
    for (std::size_t k = 0; k < N; ++k) {
      // [e_i, b_k]
      table_[ei * D + pos(k)] = [&] {
        SparseVector out;
        for (const auto& [t, v] : raise[k][i]) out.emplace_back(pos(t), v);
        return out;
      }();
      // [f_i, theta b_k] = theta [e_i, b_k]
      table_[fi * D + neg(k)] = [&] {
        SparseVector out;
        for (const auto& [t, v] : raise[k][i]) out.emplace_back(neg(t), v);
        return out;
      }();
      // [f_i, b_k]
      // [e_i, theta b_k] = (-1)^{p_i} theta [f_i, b_k], theta h = -h
      const Residue s = sign(f, p_bit(i));
      if (height_of(k) == 1) {
        for (const auto& [t, v] : lower[k][i]) {
          acc.add(cart(t), v);
        }
        table_[fi * D + pos(k)] = acc.take();
        for (const auto& [t, v] : lower[k][i]) {
          acc.add(cart(t), f.neg(f.mul(s, v)));
        }
        table_[ei * D + neg(k)] = acc.take();
      } else {
        for (const auto& [t, v] : lower[k][i]) acc.add(pos(t), v);
        table_[fi * D + pos(k)] = acc.take();
        for (const auto& [t, v] : lower[k][i]) acc.add(neg(t), f.mul(s, v));
        table_[ei * D + neg(k)] = acc.take();
      }
    }
    for (std::size_t mi = 0; mi < n; ++mi) {
      // [e_i, h_m] = -A_mi e_i, [f_i, h_m] = A_mi f_i
      if (const Residue a = spec_(mi, i); a != 0) {
        table_[ei * D + cart(mi)] = {{static_cast<std::uint32_t>(ei), f.neg(a)}};
        table_[fi * D + cart(mi)] = {{static_cast<std::uint32_t>(fi), a}};
      }
    }
  }

  // Remaining rows by height: [[g_i, b], v] = [g_i, [b, v]]
  //                                        - (-1)^{p_i p_b} [b, [g_i, v]].
  std::vector<std::size_t> order(N);
  for (std::size_t k = 0; k < N; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return height_of(a) < height_of(b);
  });
  auto apply_row = [&](std::size_t row, const SparseVector& x, Residue scale) {
    for (const auto& [j, a] : x) {
      const Residue sa = f.mul(scale, a);
      for (const auto& [t, v] : table_[row * D + j]) acc.add(t, f.mul(sa, v));
    }
  };
  for (std::size_t k : order) {
    if (height_of(k) == 1) continue;
    for (const bool positive : {true, false}) {
      const std::size_t u = positive ? pos(k) : neg(k);
      const auto& word = basis_[u];
      const std::size_t gen = positive ? pos(generator_positions[word.generator])
                                       : neg(generator_positions[word.generator]);
      const std::size_t b = *word.child;
      const Residue s = f.neg(
          sign(f, p_bit(word.generator) * parity_bit(basis_[b].parity)));
      for (std::size_t v = 0; v < D; ++v) {
        apply_row(gen, table_[b * D + v], 1);
        apply_row(b, table_[gen * D + v], s);
        table_[u * D + v] = acc.take();
      }
    }
  }
}

const AlgebraModel::Component* AlgebraModel::find_component(
    const WeightVector& w) const {
  auto it = component_of_.find(w);
  return it == component_of_.end() ? nullptr : &components_[it->second];
}

std::size_t AlgebraModel::e(std::size_t i) const {
  return positive_index(generator_position_.at(i));
}

std::size_t AlgebraModel::f(std::size_t i) const {
  return negative_index(generator_position_.at(i));
}

WeightVector AlgebraModel::weight(std::size_t g) const {
  const auto& b = basis_.at(g);
  if (b.part == Part::Cartan) return WeightVector(rank(), 0);
  WeightVector w = components_[b.component].weight;
  if (b.part == Part::Negative) {
    for (auto& c : w) c = -c;
  }
  return w;
}

FpVector AlgebraModel::bracket(const FpVector& x, const FpVector& y) const {
  if (x.size() != dimension() || y.size() != dimension()) {
    throw std::invalid_argument("bracket: element has wrong dimension");
  }
  const PrimeField fld(prime());
  FpVector out = zero();
  for (std::size_t a = 0; a < dimension(); ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < dimension(); ++b) {
      if (y[b] == 0) continue;
      const Residue c = fld.mul(x[a], y[b]);
      for (const auto& [t, v] : bracket(a, b)) {
        out[t] = fld.fma(c, v, out[t]);
      }
    }
  }
  return out;
}

FpVector AlgebraModel::component_coordinates(const FpVector& x,
                                             const Component& c) const {
  FpVector out(prime(), c.dim);
  for (std::size_t t = 0; t < c.dim; ++t) out[t] = x[positive_index(c.offset + t)];
  return out;
}

// ---------------------------------------------------------------------------

std::vector<RootDatum> positive_roots(const AlgebraModel& m) {
  std::vector<RootDatum> out;
  for (const auto& c : m.components()) {
    out.push_back({c.weight, c.dim, c.parity, weight_of(c.weight, m.spec())});
  }
  return out;
}

Superdimension superdimension(const AlgebraModel& m) {
  Superdimension s{m.rank(), 0};
  for (const auto& c : m.components()) {
    (c.parity == Parity::Even ? s.even : s.odd) += 2 * c.dim;
  }
  return s;
}

RootDatum maximal_root(const AlgebraModel& m) {
  const auto roots = positive_roots(m);
  if (roots.empty()) throw NoUniqueMaximum("algebra has no positive roots");
  const int top = roots.back().height();
  std::size_t at_top = 0;
  for (const auto& r : roots) at_top += r.height() == top ? 1 : 0;
  if (at_top != 1) {
    throw NoUniqueMaximum(std::to_string(at_top) +
                          " positive roots share the maximal height " +
                          std::to_string(top));
  }
  return roots.back();
}

namespace {

FpVector evaluate(const AlgebraModel& m, const BracketExpr& e) {
  using Kind = BracketExpr::Kind;
  switch (e.kind()) {
    case Kind::Generator:
      return m.basis_vector(m.e(e.index() - 1));
    case Kind::Bracket:
      return m.bracket(evaluate(m, e.left()), evaluate(m, e.right()));
    case Kind::Scaled:
      return evaluate(m, e.operand())
          .scale(PrimeField(m.prime()).reduce(e.coeff()));
    case Kind::Sum: {
      FpVector out = m.zero();
      for (const auto& t : e.children()) out += evaluate(m, t);
      return out;
    }
  }
  return m.zero();
}

}  // namespace

Evaluation evaluate_bracket(const AlgebraModel& m, const BracketExpr& expr) {
  WeightVector w = expr.weight(m.rank());
  FpVector element = evaluate(m, expr);
  FpVector coords(m.prime(), 0);
  if (const auto* c = m.find_component(w)) {
    coords = m.component_coordinates(element, *c);
  }
  return {std::move(w), std::move(element), std::move(coords)};
}

nlohmann::ordered_json to_json(const AlgebraModel& m) {
  nlohmann::ordered_json doc;
  const auto sd = superdimension(m);
  doc["superdimension"] = {{"even", sd.even}, {"odd", sd.odd}};
  auto root_json = [](const RootDatum& r) {
    nlohmann::ordered_json j;
    j["coeffs"] = r.weight;
    j["height"] = r.height();
    j["multiplicity"] = r.multiplicity;
    j["parity"] = to_string(r.parity);
    j["weight_mod_p"] = r.cartan_eigenvalues.residues();
    return j;
  };
  auto roots = nlohmann::ordered_json::array();
  for (const auto& r : positive_roots(m)) roots.push_back(root_json(r));
  doc["roots"] = roots;
  try {
    doc["maximal_root"] = root_json(maximal_root(m));
  } catch (const NoUniqueMaximum&) {
    doc["maximal_root"] = nullptr;
  }
  return doc;
}

}  // namespace modlie
