#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ibu/alphabet.hpp"
#include "ibu/formula.hpp"
#include "ibu/state.hpp"

namespace ibu {

// An update input: either a formula over the scenario's alphabet or a bare
// world-set literal (the only option for abstract-world scenarios). Carries
// its denotation so downstream code works uniformly on world sets.
class Sentence {
 public:
  static Sentence of_formula(const Formula& f, const Alphabet& alphabet);
  static Sentence of_worlds(const WorldSet& ws, const Universe& u);

  const WorldSet& denotation() const { return denotation_; }
  const std::string& text() const { return text_; }
  bool is_formula() const { return formula_.has_value(); }
  const Formula& formula() const;

 private:
  std::optional<Formula> formula_;
  WorldSet denotation_;
  std::string text_;
};

// One scripted transition: updating `from` by `input` yields the declared
// state `to`. Lookup is extensional (by denotation), so any formula with the
// same models triggers the same edge.
struct ScriptEdge {
  std::string from;
  Sentence input;
  std::string to;
};

// A self-check clause carried by a scenario file.
struct ExpectClause {
  enum class Kind { Update, Iterate, Postulate };
  Kind kind;
  std::string state_id;
  Sentence with;                      // first input
  std::optional<Sentence> then;      // second input (iterate/postulate)
  std::optional<std::string> op;     // "op1" | "scripted" | "composite"
  std::optional<WorldSet> expected_set;
  std::string postulate;             // for Kind::Postulate
  bool expect_violated = false;      // for Kind::Postulate
};

// A fully resolved scenario: the world universe, named belief states,
// optional explicitly declared singleton orders, a (possibly empty) script
// and self-check clauses.
struct Scenario {
  Universe universe;
  std::vector<BeliefState> states;
  std::map<World, Preorder> singletons;
  std::vector<ScriptEdge> script;
  std::vector<ExpectClause> expects;

  const BeliefState* find_state(const std::string& id) const;
  const BeliefState& state(const std::string& id) const;

  // Parses either a formula (alphabet scenarios) or "{w1, w2}".
  Sentence parse_sentence(const std::string& text) const;

  // The scripted successor of (state-id, denotation), if any.
  const ScriptEdge* find_edge(const std::string& from,
                              const WorldSet& denotation) const;
};

// Load-time validation: every state passes validate_state, script endpoints
// resolve, scripted belief sets obey the update semantics, and declared
// singleton orders are faithful and coincide with every state entry keyed at
// the same world. Throws on the first failure.
void validate_scenario(const Scenario& sc);

}  // namespace ibu
