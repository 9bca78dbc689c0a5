#include "ibu/state.hpp"

#include <sstream>

#include "ibu/alphabet.hpp"

namespace ibu {

const Preorder& BeliefState::order_at(World w) const {
  const auto it = orders.find(w);
  if (it == orders.end())
    throw Error("state '" + id + "' has no order for world " +
                std::to_string(w));
  return it->second;
}

std::string StateIssue::describe(const Universe& u) const {
  std::ostringstream out;
  switch (kind) {
    case Kind::MissingOrder:
      out << "belief world " << u.world_label(world) << " has no order";
      break;
    case Kind::ExtraOrder:
      out << "order keyed at " << u.world_label(world)
          << " which is outside the belief set";
      break;
    case Kind::WrongDomain:
      out << "order at " << u.world_label(world)
          << " does not range over the whole universe";
      break;
    case Kind::NotFaithful:
      out << "order at " << u.world_label(world) << " is not faithful: "
          << u.world_label(witness) << " is not strictly above "
          << u.world_label(world);
      break;
  }
  return out.str();
}

StateValidation validate_state(const BeliefState& s,
                               std::uint32_t universe_size) {
  StateValidation v;
  s.belief.for_each([&](World w) {
    if (!s.orders.count(w))
      v.issues.push_back({StateIssue::Kind::MissingOrder, w, 0});
  });
  for (const auto& [w, order] : s.orders) {
    if (!s.belief.contains(w)) {
      v.issues.push_back({StateIssue::Kind::ExtraOrder, w, 0});
      continue;
    }
    if (order.domain() != WorldSet::full(universe_size)) {
      v.issues.push_back({StateIssue::Kind::WrongDomain, w, 0});
      continue;
    }
    order.domain().for_each([&](World other) {
      if (other != w && !order.strict(w, other))
        v.issues.push_back({StateIssue::Kind::NotFaithful, w, other});
    });
  }
  return v;
}

BeliefState singleton_projection(
    const BeliefState& s, World w,
    const std::map<World, Preorder>* declared_singletons) {
  if (!s.belief.contains(w))
    throw Error("cannot project state '" + s.id + "' at world " +
                std::to_string(w) + ": not in the belief set");
  const Preorder& order = s.order_at(w);
  if (declared_singletons) {
    const auto it = declared_singletons->find(w);
    if (it != declared_singletons->end() && !(it->second == order))
      throw Error("declared singleton order at world " + std::to_string(w) +
                  " differs from the state's entry");
  }
  BeliefState out;
  out.id = s.id + "@" + std::to_string(w);
  out.belief = WorldSet(s.belief.universe_size());
  out.belief.insert(w);
  out.orders.emplace(w, order);
  return out;
}

}  // namespace ibu
