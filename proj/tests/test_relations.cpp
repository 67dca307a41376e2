#include "doctest.h"
#include "modlie/algebra.hpp"
#include "modlie/errors.hpp"
#include "modlie/relations.hpp"

using namespace modlie;

namespace {

bool has_relation(const RelationSet& r, const std::string& text) {
  for (const auto& rel : r.relations) {
    if (to_string(rel.expr) == text) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("parser shapes") {
  const auto g = parse("x1");
  CHECK(g.kind() == BracketExpr::Kind::Generator);
  CHECK(g.index() == 1);

  const auto e = parse("[x4,[x3,x5]] - [x5,[x3,x4]]");
  REQUIRE(e.kind() == BracketExpr::Kind::Sum);
  REQUIRE(e.children().size() == 2);
  CHECK(e.children()[0].kind() == BracketExpr::Kind::Bracket);
  CHECK(e.children()[0].left().index() == 4);
  CHECK(e.children()[1].kind() == BracketExpr::Kind::Scaled);
  CHECK(e.children()[1].coeff() == -1);
  CHECK(e.children()[1].operand().left().index() == 5);

  const auto f = parse("[[x2,x4],[[x2,x4],[x2,x5]]]");
  CHECK(f.left().kind() == BracketExpr::Kind::Bracket);
  CHECK(f.right().left().kind() == BracketExpr::Kind::Bracket);
  CHECK(f.height() == 6);
  CHECK(f.weight(5) == WeightVector{0, 3, 0, 2, 1});
}

TEST_CASE("parser round trips") {
  for (int k = 1; k <= 7; ++k) {
    for (const auto& r : paper_relations(k).relations) {
      const auto text = to_string(r.expr);
      CHECK(to_string(parse(text)) == text);
    }
  }
  CHECK(to_string(parse(" 2 * [x1, x3] ")) == "2[x1,x3]");
  CHECK(to_string(parse("-[x1,x3]")) == "-[x1,x3]");
  CHECK(to_string_mod(parse("[x1,x3] - 4[x3,x1]"), 5) == "[x1,x3] + [x3,x1]");
}

TEST_CASE("parser errors carry positions") {
  CHECK_THROWS_AS(parse("[x1,x2"), SyntaxError);
  CHECK_THROWS_AS(parse("x0"), SyntaxError);
  CHECK_THROWS_AS(parse("0[x1,x2]"), SyntaxError);
  CHECK_THROWS_AS(parse("[x1 x2]"), SyntaxError);
  CHECK_THROWS_AS(parse(""), SyntaxError);
  CHECK_THROWS_AS(parse("[x1,x6]", 5), IndexOutOfRange);
  try {
    parse("[x1,y2]");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("serre relations") {
  const auto r1 = serre_relations(registry(1));
  CHECK(r1.provenance == "serre");
  CHECK(has_relation(r1, "[x1,[x1,x3]]"));
  CHECK(has_relation(r1, "[x3,x3]"));
  CHECK(has_relation(r1, "[x3,x2]"));
  CHECK(has_relation(serre_relations(registry(3)), "[x5,[x5,[x5,x2]]]"));
}

TEST_CASE("reference relation lists") {
  CHECK(paper_relations(1).relations.size() == 5);
  CHECK(paper_relations(5).relations.size() == 1);
  const auto r3 = paper_relations(3);
  REQUIRE(r3.relations.size() == 2);
  const auto& first = r3.relations[0].expr;
  REQUIRE(first.kind() == BracketExpr::Kind::Sum);
  CHECK(first.children()[1].coeff() == -4);
  CHECK_THROWS_AS(paper_relations(8), UnknownId);
}

TEST_CASE("verification") {
  for (int k = 1; k <= 7; ++k) {
    CAPTURE(k);
    const auto m = AlgebraModel::build(registry(k));
    CHECK(verify(m, paper_relations(k)).all_zero());
    CHECK(verify(m, serre_relations(registry(k))).all_zero());
  }
  const auto m = AlgebraModel::build(registry(1));
  RelationSet bad{"test", {{"a", parse("[x1,x3]")}, {"b", parse("[x1,x3] + x2")}}};
  const auto report = verify(m, bad);
  CHECK_FALSE(report.all_zero());
  CHECK_FALSE(report.entries[0].zero);
  REQUIRE(report.entries[0].residual.has_value());
  CHECK(report.entries[0].residual->size() == 1);
  CHECK(report.entries[1].error.has_value());
  const auto j = to_json(report);
  CHECK(j.size() == 2);
}

TEST_CASE("relation files") {
  const auto r = parse_relation_file("# comment\n[x1,x3]\n\n2[x2,x5] # tail\n", "file:t");
  REQUIRE(r.relations.size() == 2);
  CHECK(r.relations[1].label == "line 4");
  try {
    parse_relation_file("[x1,x2]\n[x1,\n", "file:t");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(std::string(e.what()).rfind("line 2: ", 0) == 0);
  }
}
