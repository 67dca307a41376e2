#include "modlie/relations.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace modlie {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  BracketExpr parse_all() {
    BracketExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, pos_);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) {
      fail(std::string("expected '") + c + "'" +
           (pos_ < s_.size() ? std::string(", found '") + s_[pos_] + "'"
                             : std::string(", found end of input")));
    }
    ++pos_;
  }

  std::uint64_t number() {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const auto digit = static_cast<std::uint64_t>(s_[pos_] - '0');
      if (v > (std::numeric_limits<std::int64_t>::max() - digit) / 10) {
        pos_ = start;
        fail("integer too large");
      }
      v = v * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) fail("expected digits");
    return v;
  }

  BracketExpr expr() {
    std::vector<BracketExpr> terms;
    std::int64_t sign = 1;
    if (peek('+') || peek('-')) {
      sign = s_[pos_] == '-' ? -1 : 1;
      ++pos_;
    }
    terms.push_back(BracketExpr::scaled(sign, term()));
    while (peek('+') || peek('-')) {
      sign = s_[pos_] == '-' ? -1 : 1;
      ++pos_;
      terms.push_back(BracketExpr::scaled(sign, term()));
    }
    return BracketExpr::sum(std::move(terms));
  }

  BracketExpr term() {
    skip();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const std::size_t at = pos_;
      const auto coeff = static_cast<std::int64_t>(number());
      if (coeff == 0) {
        pos_ = at;
        fail("zero coefficient");
      }
      if (peek('*')) ++pos_;
      return BracketExpr::scaled(coeff, factor());
    }
    return factor();
  }

  BracketExpr factor() {
    skip();
    if (pos_ >= s_.size()) fail("expected 'x' or '[', found end of input");
    if (s_[pos_] == 'x') {
      ++pos_;
      const std::size_t at = pos_;
      const auto index = number();
      if (index == 0) {
        pos_ = at;
        fail("generator indices start at 1");
      }
      return BracketExpr::generator(index);
    }
    if (s_[pos_] == '[') {
      ++pos_;
      BracketExpr left = expr();
      expect(',');
      BracketExpr right = expr();
      expect(']');
      return BracketExpr::bracket(std::move(left), std::move(right));
    }
    fail(std::string("expected 'x' or '[', found '") + s_[pos_] + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

BracketExpr x(std::size_t i) { return BracketExpr::generator(i); }

}  // namespace

BracketExpr parse(std::string_view text) { return Parser(text).parse_all(); }

BracketExpr parse(std::string_view text, std::size_t n) {
  BracketExpr e = parse(text);
  if (e.max_index() > n) {
    throw IndexOutOfRange("generator x" + std::to_string(e.max_index()) +
                          " out of range for rank " + std::to_string(n));
  }
  return e;
}

RelationSet serre_relations(const CartanSpec& s) {
  const PrimeField f(s.prime());
  RelationSet out{"serre", {}};
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Residue d = s(i, i);
    if (d == 2 && s.parity(i) == Parity::Even) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const Residue m = f.neg(s(i, j));
        BracketExpr e = x(j + 1);
        for (Residue k = 0; k <= m; ++k) e = BracketExpr::bracket(x(i + 1), e);
        out.relations.push_back({"ad(x" + std::to_string(i + 1) + ")^" +
                                     std::to_string(m + 1) + "(x" +
                                     std::to_string(j + 1) + ")",
                                 std::move(e)});
      }
    } else if (s.is_isotropic(i)) {
      out.relations.push_back(
          {"[x" + std::to_string(i + 1) + ",x" + std::to_string(i + 1) + "]",
           BracketExpr::bracket(x(i + 1), x(i + 1))});
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || s(i, j) != 0) continue;
        out.relations.push_back(
            {"[x" + std::to_string(i + 1) + ",x" + std::to_string(j + 1) + "]",
             BracketExpr::bracket(x(i + 1), x(j + 1))});
      }
    } else {
      throw InvalidCartan("serre_relations: unsupported diagonal entry at node " +
                          std::to_string(i + 1));
    }
  }
  return out;
}

RelationSet paper_relations(int id) {
  static const std::vector<std::string> kLists[kRegistrySize] = {
      {
          "[x4,[x3,x5]] - [x5,[x3,x4]]",
          "[[x1,x3],[x3,x4]]",
          "[[x1,x3],[x3,x5]]",
          "[[x2,x5],[x3,x5]]",
          "[[x4,x5],[[x2,x5],[x4,x5]]]",
      },
      {
          "[[x1,x3],[x3,x4]]",
          "[[x1,x3],[x3,x5]]",
          "[[[x3,x4],[x3,x5]],[[x3,[x2,x5]],[[x3,x4],[x3,x5]]]]",
      },
      {
          "[[x3,x4],[[x2,x5],[x4,x5]]] - 4[[x4,[x2,x5]],[x5,[x3,x4]]]",
          "[[x4,[x1,x3]],[[x3,x4],[x4,x5]]]",
      },
      {
          "[x4,[x2,x5]] - 3[x5,[x2,x4]]",
          "[[x2,x5],[x3,x5]]",
          "[[x5,[x1,x3]],[[x3,x5],[x4,x5]]]",
      },
      {
          "[[[x4,[x1,x3]],[x5,[x1,x3]]],[[[x1,x3],[x2,x5]],"
          "[[x4,[x1,x3]],[x5,[x1,x3]]]]]",
      },
      {
          "[[x2,x4],[[x2,x4],[x2,x5]]]",
          "[[[x1,x3],[x2,x5]],[[x3,[x2,x5]],[[x2,x4],[x2,x5]]]]",
      },
      {
          "[x2,[x2,[x2,x5]]]",
          "[[[x2,x4],[x5,[x1,x3]]],[[x5,[x2,x4]],[x3,[x2,[x2,x5]]]]]"
          " - 2[[[x2,x4],[[x1,x3],[x2,x5]]],[[x3,[x2,x5]],[x5,[x2,x4]]]]",
      },
  };
  if (id < 1 || id > kRegistrySize) {
    throw UnknownId("no relation list with id " + std::to_string(id));
  }
  RelationSet out{"paper:" + std::to_string(id), {}};
  const auto& list = kLists[id - 1];
  for (std::size_t r = 0; r < list.size(); ++r) {
    out.relations.push_back({"paper:" + std::to_string(id) + "#" +
                                 std::to_string(r + 1),
                             parse(list[r])});
  }
  return out;
}

RelationSet parse_relation_file(std::string_view contents,
                                std::string provenance) {
  RelationSet out{std::move(provenance), {}};
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= contents.size()) {
    std::size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(start, end - start);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        out.relations.push_back(
            {"line " + std::to_string(line_no), parse(line)});
      } catch (const SyntaxError& e) {
        throw SyntaxError("line " + std::to_string(line_no) + ": " + e.detail(),
                          e.position());
      }
    }
    start = end + 1;
  }
  return out;
}

bool VerificationReport::all_zero() const {
  for (const auto& e : entries) {
    if (!e.zero) return false;
  }
  return true;
}

VerificationReport verify(const AlgebraModel& m, const RelationSet& r) {
  VerificationReport report;
  for (const auto& rel : r.relations) {
    VerificationEntry entry;
    entry.label = rel.label;
    try {
      const auto ev = evaluate_bracket(m, rel.expr);
      entry.weight = ev.weight;
      entry.height = height(ev.weight);
      entry.zero = ev.is_zero();
      if (!entry.zero) entry.residual = ev.coordinates.residues();
    } catch (const MixedWeight& e) {
      entry.error = e.what();
    } catch (const IndexOutOfRange& e) {
      entry.error = e.what();
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

VerificationReport verify(const CartanSpec& s, const RelationSet& r,
                          std::size_t max_height) {
  return verify(AlgebraModel::build(s, max_height), r);
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    nlohmann::ordered_json j;
    j["label"] = e.label;
    j["weight"] = e.weight;
    j["zero"] = e.zero;
    if (e.residual) j["residual"] = *e.residual;
    if (e.error) j["error"] = *e.error;
    doc.push_back(j);
  }
  return doc;
}

}  // namespace modlie
