#include "ibu/update.hpp"

#include <sstream>

namespace ibu {

WorldSet semantic_update_belief(const BeliefState& s, const WorldSet& phi) {
  WorldSet out(phi.universe_size());
  s.belief.for_each([&](World w) { out |= s.order_at(w).min_of(phi); });
  return out;
}

Hierarchy hierarchy(World w, const WorldSet& phi) {
  if (!phi.contains(w))
    throw Error("hierarchy requires the accepted world to satisfy the input");
  Hierarchy h;
  h.h0 = WorldSet(phi.universe_size());
  h.h0.insert(w);
  h.h1 = phi - h.h0;
  h.h2 = phi.complement();
  return h;
}

BeliefState op1_update(const BeliefState& s, const WorldSet& phi) {
  const std::uint32_t n = phi.universe_size();
  BeliefState out;
  out.id = s.id + " *1 " + "(input)";
  out.belief = semantic_update_belief(s, phi);
  out.belief.for_each([&](World w) {
    const Hierarchy h = hierarchy(w, phi);
    std::vector<std::vector<World>> layers;
    layers.push_back({w});
    if (!h.h1.empty()) layers.push_back(h.h1.worlds());
    if (!h.h2.empty()) layers.push_back(h.h2.worlds());
    out.orders.emplace(
        w, Preorder::from_layers(n, WorldSet::full(n), layers));
  });
  return out;
}

WorldSet rodrigues_update(const WorldSet& psi,
                          const std::map<World, Preorder>& orders,
                          const WorldSet& varphi) {
  WorldSet out(psi.universe_size());
  psi.for_each([&](World w) {
    const auto it = orders.find(w);
    if (it == orders.end())
      throw Error("no order supplied for belief world " + std::to_string(w));
    out |= it->second.min_of(varphi);
  });
  return out;
}

bool ScriptedStrategy::defined_on(const BeliefState& s,
                                  const WorldSet& phi) const {
  return scenario_->find_edge(s.id, phi) != nullptr;
}

BeliefState ScriptedStrategy::next(const BeliefState& s,
                                   const WorldSet& phi) const {
  const ScriptEdge* edge = scenario_->find_edge(s.id, phi);
  if (!edge)
    throw Error("the script does not cover state '" + s.id +
                "' under this input");
  return scenario_->state(edge->to);
}

BeliefState apply_strategy(const UpdateStrategy& strategy,
                           const BeliefState& s, const WorldSet& phi,
                           const Universe& universe) {
  BeliefState out = strategy.next(s, phi);
  const WorldSet expected = semantic_update_belief(s, phi);
  if (out.belief != expected) {
    std::ostringstream msg;
    msg << "strategy '" << strategy.name()
        << "' broke the update semantics: expected belief "
        << universe.set_label(expected) << ", got "
        << universe.set_label(out.belief);
    throw Error(msg.str());
  }
  const StateValidation v = validate_state(out, universe.world_count());
  if (!v.ok())
    throw Error("strategy '" + strategy.name() +
                "' produced an invalid state: " +
                v.issues.front().describe(universe));
  return out;
}

std::unique_ptr<UpdateStrategy> make_strategy(const std::string& kind,
                                              const Scenario& scenario) {
  if (kind == "op1") return std::make_unique<Op1Strategy>();
  if (kind == "scripted") return std::make_unique<ScriptedStrategy>(scenario);
  if (kind == "composite") return std::make_unique<CompositeStrategy>(scenario);
  throw UsageError("unknown update operator '" + kind +
                   "' (expected op1, scripted or composite)");
}

}  // namespace ibu
