#include "doctest.h"

#include <algorithm>
#include <random>

#include "ibu/alphabet.hpp"
#include "ibu/preorder.hpp"

using namespace ibu;

namespace {

// Brute-force reflexive-transitive closure oracle: plain boolean matrix and
// a fixpoint loop, sharing nothing with the library implementation.
std::vector<std::vector<bool>> closure_oracle(
    std::uint32_t n, const std::vector<std::pair<World, World>>& pairs,
    const std::vector<World>& domain) {
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (World w : domain) m[w][w] = true;
  for (const auto& [a, b] : pairs) m[a][b] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t k = 0; k < n; ++k)
          if (m[i][j] && m[j][k] && !m[i][k]) {
            m[i][k] = true;
            changed = true;
          }
  }
  return m;
}

// The initial order of the two-zone table scenario: w0 < {w2, w4} < rest.
Preorder example_initial_order() {
  return Preorder::from_layers(8, WorldSet::full(8),
                               {{0}, {2, 4}, {1, 3, 5, 6, 7}});
}

}  // namespace

TEST_CASE("closure adds transitive edges and is idempotent") {
  const WorldSet dom = WorldSet::of(8, {0, 1, 2});
  const std::vector<std::pair<World, World>> pairs = {{0, 2}, {2, 1}};
  const Preorder p = Preorder::closure(8, dom, pairs);
  CHECK(p.leq(0, 1));  // through w2
  CHECK(p.leq(0, 0));
  CHECK(!p.leq(1, 0));

  // Re-closing all edges of the closure changes nothing.
  std::vector<std::pair<World, World>> all;
  dom.for_each([&](World a) {
    dom.for_each([&](World b) {
      if (p.leq(a, b)) all.emplace_back(a, b);
    });
  });
  CHECK(Preorder::closure(8, dom, all) == p);
}

TEST_CASE("closure of the empty pair set relates nothing") {
  const WorldSet dom = WorldSet::of(4, {0, 1});
  const Preorder p = Preorder::closure(4, dom, {});
  CHECK(p.leq(0, 0));
  CHECK(p.leq(1, 1));
  CHECK(p.incomparable(0, 1));
}

TEST_CASE("closure rejects endpoints outside the domain") {
  const WorldSet dom = WorldSet::of(8, {0, 1});
  const std::vector<std::pair<World, World>> pairs = {{0, 5}};
  CHECK_THROWS_AS(Preorder::closure(8, dom, pairs), Error);
}

TEST_CASE("layered chain matches the brute-force closure of its generators") {
  // Generators: intra-layer equivalences plus one step between layers.
  const std::vector<std::pair<World, World>> pairs = {
      {0, 2}, {2, 4}, {4, 2},                    // w0 < {w2 ~ w4}
      {2, 1}, {1, 3}, {3, 1}, {1, 5}, {5, 1},    // next layer, all equal
      {1, 6}, {6, 1}, {1, 7}, {7, 1}};
  const std::vector<World> everyone = {0, 1, 2, 3, 4, 5, 6, 7};
  const auto oracle = closure_oracle(8, pairs, everyone);
  const Preorder built = example_initial_order();
  for (World a = 0; a < 8; ++a)
    for (World b = 0; b < 8; ++b)
      CHECK(built.leq(a, b) == oracle[a][b]);
}

TEST_CASE("layered construction requires an exact partition") {
  const WorldSet dom = WorldSet::full(4);
  CHECK_THROWS_AS(Preorder::from_layers(4, dom, {{0}, {1, 2}}), Error);
  CHECK_THROWS_AS(Preorder::from_layers(4, dom, {{0}, {1, 2, 3, 0}}), Error);
  CHECK_NOTHROW(Preorder::from_layers(4, dom, {{0}, {1, 2, 3}}));
}

TEST_CASE("minimal worlds of the two-zone scenario") {
  const Preorder p = example_initial_order();
  // [b | n] over {b, n, t}.
  CHECK(p.min_of(WorldSet::of(8, {2, 3, 4, 5, 6, 7})) ==
        WorldSet::of(8, {2, 4}));
  // Singleton input.
  CHECK(p.min_of(WorldSet::of(8, {6})) == WorldSet::of(8, {6}));
  // Empty input.
  CHECK(p.min_of(WorldSet(8)).empty());
}

TEST_CASE("minimal worlds of a fully incomparable domain") {
  const WorldSet dom = WorldSet::of(8, {1, 4, 6});
  const Preorder p = Preorder::closure(8, dom, {});
  CHECK(p.min_of(dom) == dom);
}

TEST_CASE("relation queries on the two-zone scenario") {
  const Preorder p = example_initial_order();
  CHECK(p.strict(0, 2));
  CHECK(p.strict(0, 4));
  CHECK(p.equiv(2, 4));
  CHECK(p.strict(2, 3));
  CHECK(!p.strict(2, 4));
  CHECK(!p.incomparable(5, 5));  // reflexivity
  CHECK(p.equiv(5, 5));
  CHECK_THROWS_AS(p.leq(0, 8), Error);
}

TEST_CASE("faithfulness detection") {
  // Output order of the hierarchy operator run: w4 < {w5,w6,w7} < rest.
  const Preorder good = Preorder::from_layers(
      8, WorldSet::full(8), {{4}, {5, 6, 7}, {0, 1, 2, 3}});
  CHECK(good.faithful_to(4));
  CHECK(!good.faithful_to(5));

  // Identity relation: w1 incomparable to w0, not strictly above.
  const Preorder identity = Preorder::closure(2, WorldSet::full(2), {});
  CHECK(!identity.faithful_to(0));

  // An equivalence at the bottom breaks faithfulness.
  const Preorder tied =
      Preorder::from_layers(4, WorldSet::full(4), {{0, 1}, {2, 3}});
  CHECK(!tied.faithful_to(0));
}

TEST_CASE("validation reports witnesses instead of failing") {
  const WorldSet dom = WorldSet::full(3);
  // Missing (w1, w1).
  std::vector<WorldSet> rows = {WorldSet::of(3, {0}), WorldSet(3),
                                WorldSet::of(3, {2})};
  const auto v1 = validate_relation(dom, rows, false);
  REQUIRE(!v1.ok());
  CHECK(v1.issues.front().kind == RelationIssue::Kind::Reflexivity);
  CHECK(v1.issues.front().a == 1);

  // w0 <= w1 and w1 <= w2 but not w0 <= w2.
  rows = {WorldSet::of(3, {0, 1}), WorldSet::of(3, {1, 2}),
          WorldSet::of(3, {2})};
  const auto v2 = validate_relation(dom, rows, false);
  REQUIRE(!v2.ok());
  bool found = false;
  for (const auto& issue : v2.issues)
    if (issue.kind == RelationIssue::Kind::Transitivity && issue.a == 0 &&
        issue.b == 1 && issue.c == 2)
      found = true;
  CHECK(found);

  // Totality violations are only reported on request.
  rows = {WorldSet::of(3, {0}), WorldSet::of(3, {1}), WorldSet::of(3, {2})};
  CHECK(validate_relation(dom, rows, false).ok());
  const auto v3 = validate_relation(dom, rows, true);
  CHECK(v3.issues.size() == 3);
  CHECK(v3.issues.front().kind == RelationIssue::Kind::Totality);
}

TEST_CASE("the eight-world chain validates as a total preorder") {
  const Preorder chain = Preorder::from_layers(
      8, WorldSet::full(8), {{0}, {1}, {2}, {3}, {5}, {4}, {6}, {7}});
  CHECK(chain.is_total());
  std::vector<WorldSet> rows;
  for (World w = 0; w < 8; ++w) rows.push_back(chain.row(w));
  CHECK(validate_relation(WorldSet::full(8), rows, true).ok());
  CHECK(chain.strict(0, 1));
  CHECK(chain.strict(5, 4));  // the fifth chain position precedes the sixth
}

TEST_CASE("preorder counts on small domains") {
  const auto count = [](std::uint32_t k) {
    std::uint64_t c = 0;
    enumerate_preorders(8, WorldSet::from_word(8, (1u << k) - 1),
                        [&](const Preorder&) { ++c; });
    return c;
  };
  CHECK(count(1) == 1);
  CHECK(count(2) == 4);
  CHECK(count(3) == 29);
  CHECK_THROWS_AS(enumerate_preorders(8, WorldSet::from_word(8, 0x3f),
                                      [](const Preorder&) {}),
                  Error);
}

TEST_CASE("enumeration agrees with filtering all raw relations") {
  // Oracle: all 512 relations on three worlds, kept when reflexive and
  // transitive; compare the full relation sets, not just the count.
  std::vector<std::uint64_t> oracle_keys;
  for (std::uint32_t bits = 0; bits < 512; ++bits) {
    bool rel[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) rel[i][j] = (bits >> (3 * i + j)) & 1;
    bool ok = rel[0][0] && rel[1][1] && rel[2][2];
    for (int i = 0; i < 3 && ok; ++i)
      for (int j = 0; j < 3 && ok; ++j)
        for (int k = 0; k < 3 && ok; ++k)
          if (rel[i][j] && rel[j][k] && !rel[i][k]) ok = false;
    if (ok) oracle_keys.push_back(bits);
  }
  std::vector<std::uint64_t> enum_keys;
  enumerate_preorders(3, WorldSet::full(3), [&](const Preorder& p) {
    std::uint64_t bits = 0;
    for (World a = 0; a < 3; ++a)
      for (World b = 0; b < 3; ++b)
        if (p.leq(a, b)) bits |= 1u << (3 * a + b);
    enum_keys.push_back(bits);
  });
  std::sort(oracle_keys.begin(), oracle_keys.end());
  std::sort(enum_keys.begin(), enum_keys.end());
  CHECK(enum_keys.size() == 29);
  CHECK(enum_keys == oracle_keys);
}

TEST_CASE("derived parts behave on every enumerated preorder") {
  enumerate_preorders(4, WorldSet::full(4), [&](const Preorder& p) {
    for (World a = 0; a < 4; ++a) {
      CHECK(!p.strict(a, a));
      CHECK(p.equiv(a, a));
      for (World b = 0; b < 4; ++b) {
        if (p.equiv(a, b)) CHECK(p.equiv(b, a));  // symmetry
        for (World c = 0; c < 4; ++c) {
          if (p.strict(a, b) && p.strict(b, c)) CHECK(p.strict(a, c));
          if (p.equiv(a, b) && p.equiv(b, c)) CHECK(p.equiv(a, c));
        }
      }
    }
    // min_of stays inside and is nonempty on nonempty inputs.
    const WorldSet n = WorldSet::of(4, {1, 2, 3});
    const WorldSet m = p.min_of(n);
    CHECK(m.subset_of(n));
    CHECK(!m.empty());
  });
}

TEST_CASE("total preorders: minima equal the lowest tie class, by counting") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 200; ++round) {
    // Random layered (hence total) order over 6 worlds.
    std::vector<World> worlds = {0, 1, 2, 3, 4, 5};
    for (std::size_t i = worlds.size(); i > 1; --i)
      std::swap(worlds[i - 1], worlds[rng() % i]);
    std::vector<std::vector<World>> layers;
    std::vector<World> layer;
    for (World w : worlds) {
      layer.push_back(w);
      if (rng() % 2) {
        layers.push_back(layer);
        layer.clear();
      }
    }
    if (!layer.empty()) layers.push_back(layer);
    const Preorder p = Preorder::from_layers(6, WorldSet::full(6), layers);
    CHECK(p.is_total());

    WorldSet n(6);
    for (World w = 0; w < 6; ++w)
      if (rng() % 2) n.insert(w);
    // Sort-based oracle: a member is minimal exactly when no member sits
    // strictly below it.
    WorldSet expected(6);
    n.for_each([&](World x) {
      bool any_below = false;
      n.for_each([&](World y) { any_below = any_below || p.strict(y, x); });
      if (!any_below) expected.insert(x);
    });
    CHECK(p.min_of(n) == expected);
  }
}

TEST_CASE("closure output always validates") {
  std::mt19937_64 rng(123);
  for (int round = 0; round < 100; ++round) {
    const WorldSet dom = WorldSet::full(5);
    std::vector<std::pair<World, World>> pairs;
    for (World a = 0; a < 5; ++a)
      for (World b = 0; b < 5; ++b)
        if (a != b && rng() % 3 == 0) pairs.emplace_back(a, b);
    const Preorder p = Preorder::closure(5, dom, pairs);
    std::vector<WorldSet> rows;
    for (World w = 0; w < 5; ++w) rows.push_back(p.row(w));
    CHECK(validate_relation(dom, rows, false).ok());
  }
}
