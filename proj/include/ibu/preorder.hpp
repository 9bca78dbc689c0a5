#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ibu/worldset.hpp"

namespace ibu {

class Universe;

// One reflexivity/transitivity/totality defect in a raw relation, reported
// as witness worlds rather than an error.
struct RelationIssue {
  enum class Kind { Reflexivity, Transitivity, Totality };
  Kind kind;
  World a = 0;
  World b = 0;
  World c = 0;  // only used for transitivity witnesses (a<=b, b<=c, not a<=c)

  std::string describe(const Universe& u) const;
};

struct RelationValidation {
  std::vector<RelationIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Checks a raw relation over `domain` (rows[a] = {b : a <= b}) for
// reflexivity and transitivity, and totality when requested. Every violation
// is listed with its witnesses.
RelationValidation validate_relation(const WorldSet& domain,
                                     const std::vector<WorldSet>& rows,
                                     bool require_total);

// A reflexive transitive relation over a domain of worlds (the whole universe
// for belief-state orders; a restriction for enumeration work). Immutable
// after construction; the strict part y < x is cached per world so minimal-
// element queries are single-pass.
class Preorder {
 public:
  // Reflexive-transitive closure of an explicit pair list. Idempotent:
  // closing the closure's pairs again yields the same relation.
  static Preorder closure(std::uint32_t universe_size, const WorldSet& domain,
                          std::span<const std::pair<World, World>> pairs);

  // Layered ("chain of layers") construction: worlds in the same layer are
  // equivalent, worlds in an earlier layer strictly below later ones. The
  // layers must partition the domain exactly.
  static Preorder from_layers(std::uint32_t universe_size,
                              const WorldSet& domain,
                              const std::vector<std::vector<World>>& layers);

  // Adopts a raw relation; throws when it fails validation.
  static Preorder from_relation(std::uint32_t universe_size,
                                const WorldSet& domain,
                                std::vector<WorldSet> rows);

  const WorldSet& domain() const { return domain_; }
  std::uint32_t universe_size() const { return universe_size_; }

  bool leq(World a, World b) const {
    check_member(a);
    check_member(b);
    return rows_[a].contains(b);
  }
  bool strict(World a, World b) const {
    return leq(a, b) && !rows_[b].contains(a);
  }
  bool equiv(World a, World b) const {
    return leq(a, b) && rows_[b].contains(a);
  }
  bool incomparable(World a, World b) const {
    return !leq(a, b) && !rows_[b].contains(a);
  }

  // {x in n : no y in n with y < x}. Empty input yields the empty set.
  WorldSet min_of(const WorldSet& n) const;

  // Faithful to w: every other domain world sits strictly above w.
  bool faithful_to(World w) const;

  bool is_total() const;

  const WorldSet& row(World a) const {         // {b : a <= b}
    check_member(a);
    return rows_[a];
  }
  const WorldSet& strictly_below(World x) const {  // {y : y < x}
    check_member(x);
    return strict_below_[x];
  }

  bool operator==(const Preorder& o) const {
    return domain_ == o.domain_ && rows_ == o.rows_;
  }
  bool operator!=(const Preorder& o) const { return !(*this == o); }

  // Renders the relation as layers when it is total, otherwise as the pair
  // list of its non-reflexive edges.
  std::string describe(const Universe& u) const;

 private:
  Preorder(std::uint32_t universe_size, WorldSet domain,
           std::vector<WorldSet> rows);

  void check_member(World w) const {
    if (!domain_.contains(w))
      throw Error("world index " + std::to_string(w) +
                  " outside the order's domain");
  }

  std::uint32_t universe_size_ = 0;
  WorldSet domain_;
  std::vector<WorldSet> rows_;          // rows_[a] = {b : a <= b}
  std::vector<WorldSet> strict_below_;  // strict_below_[x] = {y : y < x}
};

// Yields every preorder on `domain` exactly once, in a deterministic order
// (ascending encoding of the off-diagonal adjacency bits). The domain is
// capped at 5 worlds; counts grow as 1, 4, 29, 355, 6942.
void enumerate_preorders(std::uint32_t universe_size, const WorldSet& domain,
                         const std::function<void(const Preorder&)>& yield);

}  // namespace ibu
