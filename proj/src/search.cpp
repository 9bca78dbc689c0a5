#include "ibu/search.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "ibu/update.hpp"

namespace ibu {

std::optional<ConstraintFamily> parse_constraint_family(const std::string& s) {
  if (s == "n0" || s == "N0") return ConstraintFamily::N0;
  if (s == "n1" || s == "N1") return ConstraintFamily::N1;
  if (s == "n2" || s == "N2") return ConstraintFamily::N2;
  return std::nullopt;
}

namespace {

// Slots 0..7 carry labels w1..w8.
constexpr World kW1 = 0, kW2 = 1, kW3 = 2, kW4 = 3, kW5 = 4, kW6 = 5,
                kW7 = 6, kW8 = 7;

Preorder chain(std::uint32_t n, std::initializer_list<World> order) {
  std::vector<std::vector<World>> layers;
  for (World w : order) layers.push_back({w});
  return Preorder::from_layers(n, WorldSet::full(n), layers);
}

}  // namespace

Scenario theorem6_scenario() {
  Scenario sc;
  sc.universe = Universe::abstract_worlds(8);
  BeliefState s;
  s.id = "S";
  s.belief = WorldSet::of(8, {kW1, kW2});
  s.orders.emplace(kW1, chain(8, {kW1, kW2, kW3, kW4, kW6, kW5, kW7, kW8}));
  s.orders.emplace(kW2, chain(8, {kW2, kW1, kW3, kW5, kW6, kW4, kW7, kW8}));
  sc.states.push_back(std::move(s));
  validate_scenario(sc);
  return sc;
}

SearchOutcome replay_theorem6(Theorem6Variant variant,
                              std::optional<ConstraintFamily> drop) {
  SearchOutcome out;
  out.variant = variant == Theorem6Variant::C1 ? "c1" : "c2";
  out.scenario = theorem6_scenario();
  const Universe& u = out.scenario.universe;
  const BeliefState& s = out.scenario.states.front();

  out.phi = variant == Theorem6Variant::C1
                ? WorldSet::of(8, {kW3, kW4, kW5, kW6})
                : WorldSet::of(8, {kW3});
  const WorldSet bel1 = semantic_update_belief(s, out.phi);
  if (bel1 != WorldSet::of(8, {kW3}))
    throw Error("internal replay defect: unexpected updated belief set");
  out.constraint_trace.push_back("Bel(S after phi) = " + u.set_label(bel1) +
                                 "; the successor collection has a single "
                                 "order, keyed at w3");

  out.forth_sets = {WorldSet::of(8, {kW4, kW5}), WorldSet::of(8, {kW5, kW6}),
                    WorldSet::of(8, {kW4, kW6})};
  out.back_set = WorldSet::of(8, {kW4, kW5, kW6});

  // Sanity of the probe placement: inside [phi] for the c1 variant, inside
  // [not phi] for the c2 variant.
  for (const WorldSet& n : out.forth_sets) {
    const bool placed = variant == Theorem6Variant::C1
                            ? n.subset_of(out.phi)
                            : n.subset_of(out.phi.complement());
    if (!placed) throw Error("internal replay defect: probe set misplaced");
  }

  // Forth constraints: every world minimal in a probe set under either
  // initial order must stay minimal under the candidate.
  std::vector<WorldSet> required;
  const char* names[] = {"N0", "N1", "N2"};
  for (std::size_t i = 0; i < out.forth_sets.size(); ++i) {
    const WorldSet& n = out.forth_sets[i];
    WorldSet req(8);
    s.belief.for_each([&](World w) { req |= s.order_at(w).min_of(n); });
    required.push_back(req);
    std::ostringstream line;
    line << names[i] << " = " << u.set_label(n) << ": minima under the two "
         << "initial orders are " << u.set_label(s.order_at(kW1).min_of(n))
         << " and " << u.set_label(s.order_at(kW2).min_of(n))
         << "; forth keeps " << u.set_label(req)
         << " minimal under the candidate";
    out.constraint_trace.push_back(line.str());
  }

  WorldSet back_allowed(8);
  s.belief.for_each(
      [&](World w) { back_allowed |= s.order_at(w).min_of(out.back_set); });
  out.constraint_trace.push_back(
      "back over " + u.set_label(out.back_set) +
      ": candidate minima must fall inside " + u.set_label(back_allowed));
  if (drop) {
    const int d = static_cast<int>(*drop);
    out.ablated = names[d];
    out.constraint_trace.push_back(std::string("ablation: forth family ") +
                                   names[d] + " dropped");
  }

  const WorldSet domain = out.back_set;  // the only worlds the minima touch
  enumerate_preorders(8, domain, [&](const Preorder& candidate) {
    ++out.candidates_examined;
    for (std::size_t i = 0; i < out.forth_sets.size(); ++i) {
      if (drop && static_cast<std::size_t>(*drop) == i) continue;
      if (!required[i].subset_of(candidate.min_of(out.forth_sets[i]))) return;
    }
    ++out.forth_survivors;
    if (candidate.min_of(out.back_set).subset_of(back_allowed))
      out.survivors.push_back(candidate);
  });
  return out;
}

Preorder theorem6_extend_candidate(const Preorder& candidate) {
  const std::uint32_t n = 8;
  if (candidate.domain() != WorldSet::of(8, {kW4, kW5, kW6}))
    throw Error("candidate must relate exactly the three probe worlds");
  std::vector<WorldSet> rows(n, WorldSet(n));
  const WorldSet everything = WorldSet::full(n);
  const WorldSet top = WorldSet::of(8, {kW1, kW2, kW7, kW8});
  rows[kW3] = everything;
  for (World x : candidate.domain().worlds()) rows[x] = candidate.row(x) | top;
  for (World t : top.worlds()) rows[t] = top;
  return Preorder::from_relation(n, everything, std::move(rows));
}

// ---------------------------------------------------------------------------
// Random scenarios

namespace {

// All randomness flows through these two helpers so the byte stream of a
// generated scenario is pinned by the seed alone (mt19937_64 output is fully
// specified by the standard; distributions are not, so none are used).
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

template <typename T>
void shuffle_worlds(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[draw(rng, i)]);
}

Preorder random_faithful_order(std::uint32_t m, World key,
                               RandomScenarioParams::OrderStyle style,
                               std::mt19937_64& rng) {
  std::vector<World> others;
  for (World w = 0; w < m; ++w)
    if (w != key) others.push_back(w);

  if (style == RandomScenarioParams::OrderStyle::TotalLayered) {
    shuffle_worlds(others, rng);
    std::vector<std::vector<World>> layers = {{key}};
    std::vector<World> current;
    for (World w : others) {
      current.push_back(w);
      if (draw(rng, 2) == 0) {
        layers.push_back(current);
        current.clear();
      }
    }
    if (!current.empty()) layers.push_back(current);
    return Preorder::from_layers(m, WorldSet::full(m), layers);
  }

  // Partial: random pairs among the other worlds, closed transitively, with
  // the key world forced strictly below all of them (no pair ever targets
  // the key, so closure cannot lift anything below it).
  std::vector<std::pair<World, World>> pairs;
  for (World a : others)
    for (World b : others)
      if (a != b && draw(rng, 4) == 0) pairs.emplace_back(a, b);
  for (World b : others) pairs.emplace_back(key, b);
  return Preorder::closure(m, WorldSet::full(m), pairs);
}

}  // namespace

Scenario random_scenario(std::uint64_t seed, const RandomScenarioParams& p) {
  if (p.atoms < 2 || p.atoms > 3)
    throw Error("random scenarios use 2 or 3 atoms");
  if (p.belief_size < 1 || p.belief_size > 3)
    throw Error("random scenarios use belief sets of 1 to 3 worlds");

  std::mt19937_64 rng(seed);
  static const std::vector<std::string> names = {"p", "q", "r"};
  Alphabet alphabet(
      std::vector<std::string>(names.begin(), names.begin() + p.atoms));
  Scenario sc;
  sc.universe = Universe::of_alphabet(alphabet);
  const std::uint32_t m = sc.universe.world_count();

  BeliefState initial;
  initial.id = "S";
  initial.belief = WorldSet(m);
  while (initial.belief.count() < p.belief_size)
    initial.belief.insert(static_cast<World>(draw(rng, m)));
  initial.belief.for_each([&](World w) {
    initial.orders.emplace(w, random_faithful_order(m, w, p.style, rng));
  });
  sc.states.push_back(initial);

  std::vector<std::uint64_t> used_inputs;
  for (std::uint32_t k = 0; k < p.script_entries; ++k) {
    // A fresh nonempty input class per entry.
    std::uint64_t mask = 0;
    do {
      mask = 1 + draw(rng, (std::uint64_t{1} << m) - 1);
    } while (std::find(used_inputs.begin(), used_inputs.end(), mask) !=
             used_inputs.end());
    used_inputs.push_back(mask);
    const WorldSet phi = WorldSet::from_word(m, mask);

    BeliefState target;
    target.id = "T" + std::to_string(k + 1);
    target.belief = semantic_update_belief(initial, phi);
    target.belief.for_each([&](World w) {
      target.orders.emplace(w, random_faithful_order(m, w, p.style, rng));
    });
    sc.script.push_back(
        {initial.id,
         Sentence::of_formula(form_of(phi, alphabet), alphabet),
         target.id});
    sc.states.push_back(std::move(target));
  }

  validate_scenario(sc);
  return sc;
}

WorldSet oracle_update(const BeliefState& s, const WorldSet& phi) {
  WorldSet out(phi.universe_size());
  for (World w : s.belief.worlds()) {
    const Preorder& order = s.order_at(w);
    for (World x : phi.worlds()) {
      bool dominated = false;
      for (World y : phi.worlds())
        if (y != x && order.leq(y, x) && !order.leq(x, y)) {
          dominated = true;
          break;
        }
      if (!dominated) out.insert(x);
    }
  }
  return out;
}

RelationOutcome check_relations(std::span<const std::uint64_t> seeds,
                                const RandomScenarioParams& params) {
  RelationOutcome out;
  out.implications = {
      {"Lex->Ind", 0, 0, 0},
      {"Ind->C3", 0, 0, 0},
      {"Ind->C4", 0, 0, 0},
      {"Nat->C2", 0, 0, 0},
  };

  const auto run = [&](const Scenario& sc, const UpdateStrategy& strategy) {
    const Universe& u = sc.universe;
    for (const BeliefState& s : sc.states) {
      ++out.runs;
      const IterVerdicts v = check_iterated_all(strategy, s, u);
      // Holding with zero checked instances is vacuous truth.
      const auto real = [&](IterPostulate p) {
        return v.holds_for(p) && v.checked_for(p) > 0;
      };
      const auto check = [&](std::size_t idx, IterPostulate ante,
                             IterPostulate cons) {
        auto& imp = out.implications[idx];
        if (!real(ante)) {
          ++imp.vacuous;
          return;
        }
        ++imp.non_vacuous;
        if (!v.holds_for(cons)) {
          ++imp.violations;
          out.violation_notes.push_back(imp.name + " broken at state '" +
                                        s.id + "' under " + strategy.name());
        }
      };
      check(0, IterPostulate::Lex, IterPostulate::Ind);
      check(1, IterPostulate::Ind, IterPostulate::C3);
      check(2, IterPostulate::Ind, IterPostulate::C4);
      check(3, IterPostulate::Nat, IterPostulate::C2);
    }
  };

  for (std::uint64_t seed : seeds) {
    const Scenario sc = random_scenario(seed, params);
    const Op1Strategy op1;
    run(sc, op1);
    if (!sc.script.empty()) {
      const ScriptedStrategy scripted(sc);
      run(sc, scripted);
    }
  }
  return out;
}

}  // namespace ibu
