#include "ibu/scenario.hpp"

#include <sstream>

#include "ibu/update.hpp"

namespace ibu {

Sentence Sentence::of_formula(const Formula& f, const Alphabet& alphabet) {
  Sentence s;
  s.formula_ = f;
  s.denotation_ = models(f, alphabet);
  s.text_ = f.to_string();
  return s;
}

Sentence Sentence::of_worlds(const WorldSet& ws, const Universe& u) {
  Sentence s;
  s.denotation_ = ws;
  s.text_ = u.set_label(ws);
  return s;
}

const Formula& Sentence::formula() const {
  if (!formula_) throw Error("sentence '" + text_ + "' is a world-set literal");
  return *formula_;
}

const BeliefState* Scenario::find_state(const std::string& id) const {
  for (const auto& s : states)
    if (s.id == id) return &s;
  return nullptr;
}

const BeliefState& Scenario::state(const std::string& id) const {
  const BeliefState* s = find_state(id);
  if (!s) throw Error("unknown state '" + id + "'");
  return *s;
}

Sentence Scenario::parse_sentence(const std::string& text) const {
  // World-set literal: { w1, w2 }; valid for both universe kinds.
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
    ++i;
  if (i < text.size() && text[i] == '{') {
    WorldSet ws = universe.empty_set();
    ++i;
    bool done = false;
    while (!done) {
      while (i < text.size() &&
             (std::isspace(static_cast<unsigned char>(text[i])) ||
              text[i] == ','))
        ++i;
      if (i >= text.size()) throw ParseError("unterminated world set", i);
      if (text[i] == '}') {
        done = true;
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_'))
        ++j;
      const std::string label = text.substr(i, j - i);
      const auto w = universe.find_world(label);
      if (!w) throw Error("unknown world '" + label + "'");
      ws.insert(*w);
      i = j;
    }
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i != text.size()) throw ParseError("trailing input after world set", i);
    return Sentence::of_worlds(ws, universe);
  }
  if (!universe.has_alphabet())
    throw Error(
        "this scenario has abstract worlds; inputs must be world-set "
        "literals like {w1, w2}");
  return Sentence::of_formula(parse_formula(text, universe.alphabet()),
                              universe.alphabet());
}

const ScriptEdge* Scenario::find_edge(const std::string& from,
                                      const WorldSet& denotation) const {
  for (const auto& e : script)
    if (e.from == from && e.input.denotation() == denotation) return &e;
  return nullptr;
}

void validate_scenario(const Scenario& sc) {
  const std::uint32_t n = sc.universe.world_count();
  for (const auto& s : sc.states) {
    const StateValidation v = validate_state(s, n);
    if (!v.ok())
      throw Error("state '" + s.id + "' is invalid: " +
                  v.issues.front().describe(sc.universe));
  }
  for (const auto& [w, order] : sc.singletons) {
    if (order.domain() != sc.universe.full_set())
      throw Error("singleton order at " + sc.universe.world_label(w) +
                  " does not range over the whole universe");
    if (!order.faithful_to(w))
      throw Error("singleton order at " + sc.universe.world_label(w) +
                  " is not faithful");
    for (const auto& s : sc.states) {
      const auto it = s.orders.find(w);
      if (it != s.orders.end() && !(it->second == order))
        throw Error("state '" + s.id + "' assigns world " +
                    sc.universe.world_label(w) +
                    " an order differing from the declared singleton");
    }
  }
  for (const auto& e : sc.script) {
    const BeliefState& from = sc.state(e.from);
    const BeliefState& to = sc.state(e.to);
    const WorldSet expected = semantic_update_belief(from, e.input.denotation());
    if (to.belief != expected)
      throw Error("script edge " + e.from + " --" + e.input.text() + "--> " +
                  e.to + " breaks the update semantics: expected belief " +
                  sc.universe.set_label(expected) + ", declared " +
                  sc.universe.set_label(to.belief));
  }
  for (const auto& e : sc.expects) {
    (void)sc.state(e.state_id);
  }
}

}  // namespace ibu
