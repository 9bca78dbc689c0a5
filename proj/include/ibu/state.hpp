#pragma once

#include <map>
#include <string>
#include <vector>

#include "ibu/preorder.hpp"
#include "ibu/worldset.hpp"

namespace ibu {

// A belief state: a belief set plus one partial preorder per world of the
// belief set. The empty belief set is legal (orders then empty); it arises
// from updates by inconsistent input.
struct BeliefState {
  std::string id;
  WorldSet belief;
  std::map<World, Preorder> orders;  // keyed exactly by belief's worlds

  const Preorder& order_at(World w) const;

  bool operator==(const BeliefState& o) const {
    return belief == o.belief && orders == o.orders;
  }
};

struct StateIssue {
  enum class Kind {
    MissingOrder,    // belief world without an order
    ExtraOrder,      // order keyed outside the belief set
    WrongDomain,     // order domain is not the full universe
    NotFaithful,     // some witness world is not strictly above the key
  };
  Kind kind;
  World world = 0;    // the offending key world
  World witness = 0;  // for NotFaithful: the world not strictly above

  std::string describe(const class Universe& u) const;
};

struct StateValidation {
  std::vector<StateIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Checks the key-set invariant and per-world faithfulness. Violations are
// data, not errors.
StateValidation validate_state(const BeliefState& s,
                               std::uint32_t universe_size);

// The singleton state at w: belief {w} with w's own preorder. When the
// scenario declares an explicit singleton preorder for w it must coincide
// with the compound state's entry; a mismatch throws.
BeliefState singleton_projection(
    const BeliefState& s, World w,
    const std::map<World, Preorder>* declared_singletons = nullptr);

}  // namespace ibu
