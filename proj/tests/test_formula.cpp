#include "doctest.h"

#include <random>

#include "ibu/formula.hpp"

using namespace ibu;

namespace {

const Alphabet& bnt() {
  static const Alphabet a({"b", "n", "t"});
  return a;
}

WorldSet ws(std::initializer_list<World> worlds) {
  return WorldSet::of(8, worlds);
}

// Seeded random formula generator for the algebraic property checks.
Formula random_formula(std::mt19937_64& rng, const Alphabet& alpha,
                       int depth) {
  const auto pick = [&](std::uint64_t n) { return rng() % n; };
  if (depth == 0 || pick(4) == 0) {
    switch (pick(4)) {
      case 0: return Formula::top();
      case 1: return Formula::bot();
      default:
        return Formula::atom(alpha,
                             alpha.atom_name(pick(alpha.size())));
    }
  }
  const Formula lhs = random_formula(rng, alpha, depth - 1);
  const Formula rhs = random_formula(rng, alpha, depth - 1);
  switch (pick(5)) {
    case 0: return !lhs;
    case 1: return lhs & rhs;
    case 2: return lhs | rhs;
    case 3: return Formula::implies(lhs, rhs);
    default: return Formula::iff(lhs, rhs);
  }
}

}  // namespace

TEST_CASE("parsing builds the expected trees") {
  const Formula f = parse_formula("(b <-> !n) & !t", bnt());
  REQUIRE(f.kind() == FormulaKind::And);
  REQUIRE(f.lhs().kind() == FormulaKind::Iff);
  CHECK(f.lhs().lhs().atom_name() == "b");
  CHECK(f.lhs().rhs().kind() == FormulaKind::Not);
  CHECK(f.lhs().rhs().lhs().atom_name() == "n");
  CHECK(f.rhs().kind() == FormulaKind::Not);
  CHECK(f.rhs().lhs().atom_name() == "t");

  const Formula g = parse_formula("b | n", bnt());
  REQUIRE(g.kind() == FormulaKind::Or);
  CHECK(g.lhs().atom_name() == "b");
  CHECK(g.rhs().atom_name() == "n");
}

TEST_CASE("precedence and associativity") {
  // ! > & > | > -> > <->, arrows right-associative.
  const Formula f = parse_formula("!b & n | t -> b <-> n", bnt());
  CHECK(f.kind() == FormulaKind::Iff);
  CHECK(f.lhs().kind() == FormulaKind::Implies);
  CHECK(f.lhs().lhs().kind() == FormulaKind::Or);
  CHECK(f.lhs().lhs().lhs().kind() == FormulaKind::And);

  const Formula g = parse_formula("b -> n -> t", bnt());
  CHECK(g.rhs().kind() == FormulaKind::Implies);  // right-assoc

  CHECK(equivalent(parse_formula("b -> (n -> t)", bnt()), g, bnt()));
}

TEST_CASE("syntax errors carry positions") {
  CHECK_THROWS_AS(parse_formula("b & (n", bnt()), ParseError);
  try {
    parse_formula("b & (n", bnt());
  } catch (const ParseError& e) {
    CHECK(e.offset() == 6);  // at the missing ')'
  }
  CHECK_THROWS_AS(parse_formula("b &", bnt()), ParseError);
  CHECK_THROWS_AS(parse_formula("b n", bnt()), ParseError);
  CHECK_THROWS_AS(parse_formula("", bnt()), ParseError);
}

TEST_CASE("unknown atoms are named") {
  try {
    parse_formula("b & x", bnt());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("'x'") != std::string::npos);
  }
}

TEST_CASE("unicode connective aliases") {
  const Formula f = parse_formula("¬b ∧ (n ∨ t)", bnt());
  CHECK(equivalent(f, parse_formula("!b & (n | t)", bnt()), bnt()));
  const Formula g = parse_formula("b → n ↔ ⊤", bnt());
  CHECK(equivalent(g, parse_formula("b -> n <-> top", bnt()), bnt()));
  CHECK(models(parse_formula("⊥", bnt()), bnt()).empty());
}

TEST_CASE("models of the table scenarios") {
  CHECK(models(parse_formula("b | n", bnt()), bnt()) ==
        ws({2, 3, 4, 5, 6, 7}));
  CHECK(models(parse_formula("(b <-> !n) & !t", bnt()), bnt()) == ws({2, 4}));
  CHECK(models(parse_formula("bot", bnt()), bnt()).empty());
  CHECK(models(parse_formula("top", bnt()), bnt()) == WorldSet::full(8));
}

TEST_CASE("form_of emits ascending worlds with alphabet-ordered literals") {
  const Formula f = form_of(ws({2, 3}), bnt());
  CHECK(f.to_string() == "!b & n & !t | !b & n & t");
  CHECK(models(f, bnt()) == ws({2, 3}));
  CHECK(equivalent(f, parse_formula("!b & n", bnt()), bnt()));
  CHECK(form_of(WorldSet(8), bnt()).kind() == FormulaKind::Bot);
}

TEST_CASE("form_of is a right inverse of models, exhaustively for two atoms") {
  const Alphabet two({"p", "q"});
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    const WorldSet set = WorldSet::from_word(4, mask);
    CHECK(models(form_of(set, two), two) == set);
  }
}

TEST_CASE("semantic queries") {
  CHECK(entails(parse_formula("n", bnt()), parse_formula("b | n", bnt()),
                bnt()));
  CHECK(!entails(parse_formula("b | n", bnt()), parse_formula("n", bnt()),
                 bnt()));
  CHECK(!consistent(parse_formula("bot", bnt()), bnt()));
  CHECK(consistent(parse_formula("b", bnt()), bnt()));
  CHECK(complete(form_of(ws({0}), bnt()), bnt()));
  CHECK(!complete(parse_formula("b", bnt()), bnt()));
  CHECK(complete(parse_formula("bot", bnt()), bnt()));
  CHECK(equivalent(parse_formula("b <-> n", bnt()),
                   form_of(ws({0, 1, 6, 7}), bnt()), bnt()));
  const Formula b = parse_formula("b", bnt());
  CHECK_THROWS_AS(semantic_query(QueryKind::Entails, b, nullptr, bnt()),
                  UsageError);
  CHECK_THROWS_AS(semantic_query(QueryKind::Consistent, b, &b, bnt()),
                  UsageError);
}

TEST_CASE("connective semantics agree with set algebra on random formulas") {
  std::mt19937_64 rng(20240811);
  const WorldSet everything = WorldSet::full(8);
  for (int i = 0; i < 300; ++i) {
    const Formula f = random_formula(rng, bnt(), 4);
    const Formula g = random_formula(rng, bnt(), 4);
    CHECK(models(!f, bnt()) == everything - models(f, bnt()));
    CHECK(models(f & g, bnt()) == (models(f, bnt()) & models(g, bnt())));
    CHECK(models(f | g, bnt()) == (models(f, bnt()) | models(g, bnt())));
    CHECK(models(Formula::implies(f, g), bnt()) ==
          (models(f, bnt()).complement() | models(g, bnt())));
  }
}

TEST_CASE("print then parse is a fixpoint") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const Formula f = random_formula(rng, bnt(), 5);
    const std::string text = f.to_string();
    const Formula g = parse_formula(text, bnt());
    CHECK(g.identical_to(f));
    CHECK(g.to_string() == text);
  }
  for (const char* text :
       {"(b <-> !n) & !t", "b | n", "b -> n -> t", "(b -> n) -> t",
        "b & (n | t)", "top", "bot", "!(b & n)"}) {
    const Formula f = parse_formula(text, bnt());
    CHECK(parse_formula(f.to_string(), bnt()).identical_to(f));
  }
}

TEST_CASE("evaluation over sixteen atoms stays exact") {
  std::vector<std::string> names;
  for (int i = 0; i < 16; ++i) names.push_back("a" + std::to_string(i));
  const Alphabet big(names);
  const Formula f = parse_formula("a0 & !a15", big);
  const WorldSet m = models(f, big);
  CHECK(m.count() == 16384);
  CHECK(m.contains(0x8000));          // a0 true, rest false
  CHECK(!m.contains(0x8001));         // a15 true as well
}
