#include "doctest.h"

#include "ibu/state.hpp"

using namespace ibu;

namespace {

Preorder layered(std::initializer_list<std::vector<World>> layers) {
  return Preorder::from_layers(8, WorldSet::full(8),
                               std::vector<std::vector<World>>(layers));
}

// The two-zone table's initial state: belief {w0}, w0 < {w2, w4} < rest.
BeliefState initial_state() {
  BeliefState s;
  s.id = "S";
  s.belief = WorldSet::of(8, {0});
  s.orders.emplace(0, layered({{0}, {2, 4}, {1, 3, 5, 6, 7}}));
  return s;
}

// Belief {w0, w4} with the two mirror-image orders.
BeliefState two_world_state() {
  BeliefState s;
  s.id = "S";
  s.belief = WorldSet::of(8, {0, 4});
  s.orders.emplace(0, layered({{0}, {4}, {1, 2, 3, 5, 6, 7}}));
  s.orders.emplace(4, layered({{4}, {0}, {1, 2, 3, 5, 6, 7}}));
  return s;
}

}  // namespace

TEST_CASE("a faithful singleton state validates") {
  CHECK(validate_state(initial_state(), 8).ok());
  CHECK(validate_state(two_world_state(), 8).ok());
}

TEST_CASE("missing orders are key-set violations") {
  BeliefState s = two_world_state();
  s.orders.erase(4);
  const auto v = validate_state(s, 8);
  REQUIRE(!v.ok());
  CHECK(v.issues.front().kind == StateIssue::Kind::MissingOrder);
  CHECK(v.issues.front().world == 4);
}

TEST_CASE("orders outside the belief set are violations") {
  BeliefState s = initial_state();
  s.orders.emplace(3, layered({{3}, {0, 1, 2, 4, 5, 6, 7}}));
  const auto v = validate_state(s, 8);
  REQUIRE(!v.ok());
  CHECK(v.issues.front().kind == StateIssue::Kind::ExtraOrder);
  CHECK(v.issues.front().world == 3);
}

TEST_CASE("an equivalence at the key world breaks faithfulness") {
  BeliefState s = initial_state();
  s.orders.clear();
  s.orders.emplace(0, layered({{0, 1}, {2, 3, 4, 5, 6, 7}}));
  const auto v = validate_state(s, 8);
  REQUIRE(!v.ok());
  CHECK(v.issues.front().kind == StateIssue::Kind::NotFaithful);
  CHECK(v.issues.front().world == 0);
  CHECK(v.issues.front().witness == 1);
}

TEST_CASE("the empty state is legal") {
  BeliefState s;
  s.id = "empty";
  s.belief = WorldSet(8);
  CHECK(validate_state(s, 8).ok());
}

TEST_CASE("faithfulness makes the key the unique minimum of sets holding it") {
  const BeliefState s = two_world_state();
  s.belief.for_each([&](World w) {
    const Preorder& order = s.orders.at(w);
    WorldSet::full(8).for_each_subset([&](const WorldSet& n) {
      if (!n.contains(w)) return;
      CHECK(order.min_of(n) == WorldSet::of(8, {w}));
    });
  });
}

TEST_CASE("singleton projection keeps the key world's order") {
  const BeliefState s = two_world_state();
  const BeliefState proj = singleton_projection(s, 4);
  CHECK(proj.belief == WorldSet::of(8, {4}));
  REQUIRE(proj.orders.count(4) == 1);
  CHECK(proj.orders.at(4) == s.orders.at(4));
  CHECK(proj.orders.at(4).strict(4, 0));
  CHECK(validate_state(proj, 8).ok());

  // Projecting the singleton again changes nothing semantic.
  const BeliefState again = singleton_projection(proj, 4);
  CHECK(again.belief == proj.belief);
  CHECK(again.orders.at(4) == proj.orders.at(4));
}

TEST_CASE("projection outside the belief set is an error") {
  CHECK_THROWS_AS(singleton_projection(two_world_state(), 3), Error);
}

TEST_CASE("declared singleton orders must match the state entry") {
  const BeliefState s = two_world_state();
  std::map<World, Preorder> declared;
  declared.emplace(4, s.orders.at(4));
  CHECK_NOTHROW(singleton_projection(s, 4, &declared));

  std::map<World, Preorder> conflicting;
  conflicting.emplace(4, layered({{4}, {0, 2}, {1, 3, 5, 6, 7}}));
  CHECK_THROWS_AS(singleton_projection(s, 4, &conflicting), Error);
}
