#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "ibu/scenario.hpp"
#include "ibu/state.hpp"

namespace ibu {

// The belief set after updating s by a sentence with denotation `phi`:
// the union over belief worlds w of the minimal [phi]-worlds under w's
// preorder. Empty when phi is inconsistent or the belief set is empty.
WorldSet semantic_update_belief(const BeliefState& s, const WorldSet& phi);

// The three-way split of the universe around an accepted world w: the world
// itself, the remaining phi-worlds, and everything falsifying phi.
struct Hierarchy {
  WorldSet h0;  // {w}
  WorldSet h1;  // [phi] \ {w}
  WorldSet h2;  // [not phi]
};

// Requires w in [phi].
Hierarchy hierarchy(World w, const WorldSet& phi);

// The hierarchy operator: the updated belief set follows the update
// semantics, and every accepted world is re-ranked into the three-layer
// total preorder h0 < h1 < h2 (worlds inside a layer equivalent). An empty
// new belief set yields the empty state.
BeliefState op1_update(const BeliefState& s, const WorldSet& phi);

// The comparison operator that re-updates the *initial* belief set under
// post-update preorders: the union over psi's worlds of the minimal
// [varphi]-worlds under the supplied (already shifted) orders.
WorldSet rodrigues_update(const WorldSet& psi,
                          const std::map<World, Preorder>& orders,
                          const WorldSet& varphi);

// A total or partial map from (state, sentence) to the next belief state.
// Strategies are pure; `next` must not be called where `defined_on` is false.
class UpdateStrategy {
 public:
  virtual ~UpdateStrategy() = default;
  virtual std::string name() const = 0;
  virtual bool defined_on(const BeliefState& s, const WorldSet& phi) const = 0;
  virtual BeliefState next(const BeliefState& s, const WorldSet& phi) const = 0;
};

// The hierarchy operator as a (total) strategy.
class Op1Strategy final : public UpdateStrategy {
 public:
  std::string name() const override { return "op1"; }
  bool defined_on(const BeliefState&, const WorldSet&) const override {
    return true;
  }
  BeliefState next(const BeliefState& s, const WorldSet& phi) const override {
    return op1_update(s, phi);
  }
};

// Partial strategy reading successor states from a scenario script. Lookup
// is extensional: any sentence with the scripted denotation matches.
class ScriptedStrategy final : public UpdateStrategy {
 public:
  explicit ScriptedStrategy(const Scenario& scenario) : scenario_(&scenario) {}
  std::string name() const override { return "scripted"; }
  bool defined_on(const BeliefState& s, const WorldSet& phi) const override;
  BeliefState next(const BeliefState& s, const WorldSet& phi) const override;

 private:
  const Scenario* scenario_;
};

// Scripted where the script applies, op1 everywhere else. Exists for
// exploration; reports carry its name so mixed results are recognizable.
class CompositeStrategy final : public UpdateStrategy {
 public:
  explicit CompositeStrategy(const Scenario& scenario) : scripted_(scenario) {}
  std::string name() const override { return "composite(scripted+op1)"; }
  bool defined_on(const BeliefState&, const WorldSet&) const override {
    return true;
  }
  BeliefState next(const BeliefState& s, const WorldSet& phi) const override {
    return scripted_.defined_on(s, phi) ? scripted_.next(s, phi)
                                        : op1_update(s, phi);
  }

 private:
  ScriptedStrategy scripted_;
};

// Runs the strategy and enforces the two contract clauses: the output belief
// set must match semantic_update_belief and the output state must validate.
// Throws with expected-vs-actual sets on a semantics mismatch.
BeliefState apply_strategy(const UpdateStrategy& strategy,
                           const BeliefState& s, const WorldSet& phi,
                           const Universe& universe);

std::unique_ptr<UpdateStrategy> make_strategy(const std::string& kind,
                                              const Scenario& scenario);

}  // namespace ibu
