#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "ibu/alphabet.hpp"
#include "ibu/worldset.hpp"

namespace ibu {

enum class FormulaKind : std::uint8_t { Top, Bot, Atom, Not, And, Or, Implies, Iff };

// Immutable propositional sentence over an alphabet. Nodes are shared, so
// copies are cheap and formulas can be handed across threads freely. Atoms
// are resolved against a concrete alphabet at construction time.
class Formula {
 public:
  static Formula top();
  static Formula bot();
  // Throws when `name` is not declared by the alphabet.
  static Formula atom(const Alphabet& alphabet, std::string_view name);

  Formula operator!() const;
  Formula operator&(const Formula& rhs) const;
  Formula operator|(const Formula& rhs) const;
  static Formula implies(const Formula& lhs, const Formula& rhs);
  static Formula iff(const Formula& lhs, const Formula& rhs);

  FormulaKind kind() const { return node_->kind; }
  const std::string& atom_name() const { return node_->atom_name; }
  std::uint32_t atom_index() const { return node_->atom_index; }
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  bool evaluate(World w, const Alphabet& alphabet) const;

  // ASCII rendering with minimal parentheses; precedence ! > & > | > -> > <->
  // with the arrows right-associative. Re-parsing the output yields a
  // structurally identical formula.
  std::string to_string() const;

  // Structural identity (same shape, same atoms).
  bool identical_to(const Formula& o) const;

 private:
  struct Node {
    FormulaKind kind;
    std::uint32_t atom_index = 0;
    std::string atom_name;
    std::shared_ptr<const Node> lhs, rhs;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula binary(FormulaKind kind, const Formula& lhs,
                        const Formula& rhs);

  std::shared_ptr<const Node> node_;
};

// Parses the ASCII grammar: atoms [A-Za-z_][A-Za-z0-9_]*, connectives
// ! & | -> <->, constants top/bot, parentheses. The Unicode spellings
// ¬ ∧ ∨ → ↔ ⊤ ⊥ are accepted on input. Throws ParseError with a byte offset
// for malformed input and Error for atoms missing from the alphabet.
Formula parse_formula(std::string_view text, const Alphabet& alphabet);

// The denotation [f]: every world of the alphabet's universe satisfying f.
WorldSet models(const Formula& f, const Alphabet& alphabet);

// The canonical sentence of a world set: a disjunction of per-world literal
// conjunctions, worlds ascending, literals in alphabet order; bot for the
// empty set. models(form_of(ws)) == ws.
Formula form_of(const WorldSet& ws, const Alphabet& alphabet);

enum class QueryKind { Entails, Equivalent, Consistent, Complete };

// entails/equivalent take two formulas, consistent/complete take one;
// passing the wrong arity throws UsageError.
bool semantic_query(QueryKind kind, const Formula& a, const Formula* b,
                    const Alphabet& alphabet);

bool entails(const Formula& a, const Formula& b, const Alphabet& alphabet);
bool equivalent(const Formula& a, const Formula& b, const Alphabet& alphabet);
bool consistent(const Formula& a, const Alphabet& alphabet);
bool complete(const Formula& a, const Alphabet& alphabet);

}  // namespace ibu
