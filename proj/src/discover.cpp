#include <algorithm>
#include <numeric>

#include "modlie/relations.hpp"

namespace modlie {

namespace {

using Word = std::vector<int>;
using Poly = std::map<Word, Residue>;

bool is_lyndon(const Word& w) {
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + k,
                                      w.end())) {
      return false;
    }
  }
  return !w.empty();
}

BracketExpr standard_bracket(const Word& w) {
  if (w.size() == 1) return BracketExpr::generator(w[0] + 1);
  // Longest proper Lyndon suffix.
  for (std::size_t k = 1; k < w.size(); ++k) {
    Word v(w.begin() + k, w.end());
    if (is_lyndon(v)) {
      Word u(w.begin(), w.begin() + k);
      return BracketExpr::bracket(standard_bracket(u), standard_bracket(v));
    }
  }
  throw std::logic_error("standard_bracket: no Lyndon suffix");
}

// All words with the given letter content, in lexicographic order.
std::vector<Word> words_of(const WeightVector& content) {
  Word w;
  for (std::size_t i = 0; i < content.size(); ++i) {
    w.insert(w.end(), static_cast<std::size_t>(content[i]), static_cast<int>(i));
  }
  std::vector<Word> out;
  if (w.empty()) return out;
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

int word_parity(const Word& w, const std::vector<Parity>& parity) {
  int bit = 0;
  for (int letter : w) bit += parity_bit(parity[static_cast<std::size_t>(letter)]);
  return bit & 1;
}

// Image of a homogeneous bracket expression in the free associative
// superalgebra: [a, b] = ab - (-1)^{|a||b|} ba.
struct Expansion {
  Poly poly;
  int parity;
};

Expansion expand(const BracketExpr& e, const std::vector<Parity>& parity,
                 const PrimeField& f) {
  using Kind = BracketExpr::Kind;
  switch (e.kind()) {
    case Kind::Generator: {
      const auto letter = static_cast<int>(e.index() - 1);
      return {{{Word{letter}, 1}}, parity_bit(parity.at(e.index() - 1))};
    }
    case Kind::Bracket: {
      const auto a = expand(e.left(), parity, f);
      const auto b = expand(e.right(), parity, f);
      const Residue swap_sign = (a.parity & b.parity) ? 1 : f.neg(1);
      Poly out;
      for (const auto& [wa, ca] : a.poly) {
        for (const auto& [wb, cb] : b.poly) {
          Word ab = wa;
          ab.insert(ab.end(), wb.begin(), wb.end());
          Word ba = wb;
          ba.insert(ba.end(), wa.begin(), wa.end());
          const Residue c = f.mul(ca, cb);
          out[ab] = f.add(out[ab], c);
          out[ba] = f.add(out[ba], f.mul(swap_sign, c));
        }
      }
      std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
      return {std::move(out), (a.parity + b.parity) & 1};
    }
    case Kind::Scaled: {
      auto inner = expand(e.operand(), parity, f);
      const Residue c = f.reduce(e.coeff());
      for (auto& [w, v] : inner.poly) v = f.mul(v, c);
      std::erase_if(inner.poly, [](const auto& kv) { return kv.second == 0; });
      return inner;
    }
    case Kind::Sum: {
      Expansion out{{}, 0};
      bool first = true;
      for (const auto& t : e.children()) {
        auto term = expand(t, parity, f);
        if (first) out.parity = term.parity;
        first = false;
        for (const auto& [w, v] : term.poly) out.poly[w] = f.add(out.poly[w], v);
      }
      std::erase_if(out.poly, [](const auto& kv) { return kv.second == 0; });
      return out;
    }
  }
  return {{}, 0};
}

// Incrementally maintained row basis.  Rows are reduced against earlier rows
// in insertion order, so sequential reduction is exact.
class SpanBuilder {
 public:
  SpanBuilder(const PrimeField& f, std::size_t dim) : f_(f), dim_(dim) {}

  bool add(std::vector<Residue> v) {
    reduce(v);
    auto it = std::find_if(v.begin(), v.end(), [](Residue r) { return r != 0; });
    if (it == v.end()) return false;
    const auto pivot = static_cast<std::size_t>(it - v.begin());
    const Residue inv = f_.inv(*it);
    for (auto& r : v) r = f_.mul(r, inv);
    rows_.push_back({pivot, std::move(v)});
    return true;
  }

  bool contains(std::vector<Residue> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](Residue r) { return r == 0; });
  }

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Residue>& row(std::size_t k) const { return rows_[k].second; }

 private:
  void reduce(std::vector<Residue>& v) const {
    for (const auto& [pivot, row] : rows_) {
      const Residue c = v[pivot];
      if (c == 0) continue;
      const Residue neg = f_.neg(c);
      for (std::size_t k = 0; k < dim_; ++k) {
        if (row[k] != 0) v[k] = f_.fma(neg, row[k], v[k]);
      }
    }
  }

  const PrimeField& f_;
  std::size_t dim_;
  std::vector<std::pair<std::size_t, std::vector<Residue>>> rows_;
};

std::vector<Residue> densify(const Poly& poly,
                             const std::map<Word, std::size_t>& index) {
  std::vector<Residue> v(index.size(), 0);
  for (const auto& [w, c] : poly) v[index.at(w)] = c;
  return v;
}

Poly sparsify(const std::vector<Residue>& v, const std::vector<Word>& words) {
  Poly out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] != 0) out.emplace(words[k], v[k]);
  }
  return out;
}

std::map<Word, std::size_t> index_words(const std::vector<Word>& words) {
  std::map<Word, std::size_t> index;
  for (std::size_t k = 0; k < words.size(); ++k) index.emplace(words[k], k);
  return index;
}

// Weights of height d with n nonnegative parts, lexicographically.
void weights_of_height(std::size_t n, int d, WeightVector& cur,
                       std::size_t pos, std::vector<WeightVector>& out) {
  if (pos + 1 == n) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (int c = 0; c <= d; ++c) {
    cur[pos] = c;
    weights_of_height(n, d - c, cur, pos + 1, out);
  }
}

std::string weight_label(const WeightVector& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s + ")";
}

}  // namespace

std::vector<LyndonElement> super_lyndon_basis(const WeightVector& content,
                                              const std::vector<Parity>& parity) {
  std::vector<LyndonElement> out;
  for (auto& w : words_of(content)) {
    if (is_lyndon(w)) {
      auto b = standard_bracket(w);
      out.push_back({std::move(w), false, std::move(b)});
    }
  }
  const bool even_content = std::all_of(content.begin(), content.end(),
                                        [](int c) { return c % 2 == 0; });
  if (even_content && height(content) >= 2) {
    WeightVector half(content);
    for (auto& c : half) c /= 2;
    for (auto& u : words_of(half)) {
      if (!is_lyndon(u) || word_parity(u, parity) == 0) continue;
      auto b = standard_bracket(u);
      out.push_back({std::move(u), true, BracketExpr::bracket(b, b)});
    }
  }
  return out;
}

Discovery discover(const AlgebraModel& m, std::size_t up_to_height) {
  if (up_to_height > kMaxDiscoveryHeight) {
    throw HeightLimitExceeded("relation discovery is limited to height " +
                              std::to_string(kMaxDiscoveryHeight) +
                              ", requested " + std::to_string(up_to_height));
  }
  const std::size_t n = m.rank();
  const PrimeField f(m.prime());
  Discovery out;
  out.n_ = n;
  out.p_ = m.prime();
  out.parity_ = m.spec().parity();
  out.up_to_height_ = up_to_height;
  out.relations_.provenance = "discovered";

  for (int d = 1; d <= static_cast<int>(up_to_height); ++d) {
    std::vector<WeightVector> weights;
    WeightVector cur(n, 0);
    weights_of_height(n, d, cur, 0, weights);
    for (const auto& w : weights) {
      const auto words = words_of(w);
      const auto index = index_words(words);
      const auto basis = super_lyndon_basis(w, out.parity_);

      // Evaluation map, Lyndon coordinates -> model coordinates.
      const auto* comp = m.find_component(w);
      const std::size_t comp_dim = comp ? comp->dim : 0;
      FpMatrix eval(m.prime(), comp_dim, basis.size());
      std::vector<std::vector<Residue>> expansions;
      for (std::size_t l = 0; l < basis.size(); ++l) {
        expansions.push_back(
            densify(expand(basis[l].bracket, out.parity_, f).poly, index));
        if (comp_dim == 0) continue;
        const auto ev = evaluate_bracket(m, basis[l].bracket);
        for (std::size_t r = 0; r < comp_dim; ++r) eval(r, l) = ev.coordinates[r];
      }
      const std::size_t model_dim = rank(eval);
      const auto kernel = kernel_basis(eval);

      // Consequences of relations of lower height: ad(x_i) y.
      SpanBuilder ideal(f, words.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (w[i] == 0) continue;
        WeightVector below = w;
        --below[i];
        auto it = out.relation_span_.find(below);
        if (it == out.relation_span_.end()) continue;
        const auto letter = static_cast<int>(i);
        const int pi = parity_bit(out.parity_[i]);
        for (const auto& y : it->second) {
          Poly z;
          for (const auto& [word, c] : y) {
            const int py = word_parity(word, out.parity_);
            Word left{letter};
            left.insert(left.end(), word.begin(), word.end());
            Word right = word;
            right.push_back(letter);
            z[left] = f.add(z[left], c);
            const Residue s = (pi & py) ? c : f.neg(c);
            z[right] = f.add(z[right], s);
          }
          ideal.add(densify(z, index));
        }
      }

      SpanBuilder all = ideal;
      std::size_t found = 0;
      for (const auto& k : kernel) {
        std::vector<Residue> v(words.size(), 0);
        for (std::size_t l = 0; l < basis.size(); ++l) {
          if (k[l] == 0) continue;
          for (std::size_t t = 0; t < v.size(); ++t) {
            if (expansions[l][t] != 0) {
              v[t] = f.fma(k[l], expansions[l][t], v[t]);
            }
          }
        }
        if (!all.add(std::move(v))) continue;
        std::vector<BracketExpr> terms;
        for (std::size_t l = 0; l < basis.size(); ++l) {
          if (k[l] == 0) continue;
          terms.push_back(BracketExpr::scaled(f.signed_lift(k[l]), basis[l].bracket));
        }
        ++found;
        out.relations_.relations.push_back(
            {"weight " + weight_label(w) + " #" + std::to_string(found),
             BracketExpr::sum(std::move(terms))});
      }

      out.stats_.push_back({w, basis.size(), model_dim, ideal.rank(),
                            all.rank() - ideal.rank()});
      auto& ideal_rows = out.ideal_span_[w];
      for (std::size_t r = 0; r < ideal.rank(); ++r) {
        ideal_rows.push_back(sparsify(ideal.row(r), words));
      }
      auto& rel_rows = out.relation_span_[w];
      for (std::size_t r = 0; r < all.rank(); ++r) {
        rel_rows.push_back(sparsify(all.row(r), words));
      }
    }
  }
  return out;
}

bool Discovery::member(const BracketExpr& expr, bool include_new) const {
  const auto w = expr.weight(n_);
  if (static_cast<std::size_t>(height(w)) > up_to_height_) {
    throw HeightLimitExceeded("expression of height " +
                              std::to_string(height(w)) +
                              " beyond discovered height " +
                              std::to_string(up_to_height_));
  }
  const PrimeField f(p_);
  const auto words = words_of(w);
  const auto index = index_words(words);
  SpanBuilder span(f, words.size());
  const auto& spans = include_new ? relation_span_ : ideal_span_;
  if (auto it = spans.find(w); it != spans.end()) {
    for (const auto& row : it->second) span.add(densify(row, index));
  }
  return span.contains(densify(expand(expr, parity_, f).poly, index));
}

bool Discovery::contains(const BracketExpr& expr) const {
  return member(expr, true);
}

bool Discovery::in_lower_ideal(const BracketExpr& expr) const {
  return member(expr, false);
}

}  // namespace modlie
