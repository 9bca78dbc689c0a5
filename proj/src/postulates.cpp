#include "ibu/postulates.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ibu {

std::string to_string(KmPostulate p) {
  static const char* names[] = {"U1", "U2", "U3", "U4", "U5", "U6", "U7", "U8"};
  return names[static_cast<int>(p)];
}

std::string to_string(IterPostulate p) {
  static const char* names[] = {"C1", "C2", "C3", "C4", "Nat", "Lex", "Ind"};
  return names[static_cast<int>(p)];
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

std::optional<KmPostulate> parse_km_postulate(const std::string& name) {
  const std::string n = lower(name);
  for (int i = 0; i < 8; ++i)
    if (n == "u" + std::to_string(i + 1)) return static_cast<KmPostulate>(i);
  return std::nullopt;
}

std::optional<IterPostulate> parse_iter_postulate(const std::string& name) {
  const std::string n = lower(name);
  if (n == "c1") return IterPostulate::C1;
  if (n == "c2") return IterPostulate::C2;
  if (n == "c3") return IterPostulate::C3;
  if (n == "c4") return IterPostulate::C4;
  if (n == "nat") return IterPostulate::Nat;
  if (n == "lex") return IterPostulate::Lex;
  if (n == "ind") return IterPostulate::Ind;
  return std::nullopt;
}

namespace {

// Canonical display text of a sentence class: the form_of formula when an
// alphabet is available and the set is small enough to read, otherwise the
// world-set literal.
std::string class_text(const WorldSet& ws, const Universe& u) {
  if (u.has_alphabet() && ws.count() <= 8 && !ws.empty())
    return form_of(ws, u.alphabet()).to_string();
  return u.set_label(ws);
}

void require_unary_feasible(const Universe& u) {
  if (u.world_count() > kMaxUnaryWorlds)
    throw Error("exhaustive checking needs at most " +
                std::to_string(kMaxUnaryWorlds) + " worlds, universe has " +
                std::to_string(u.world_count()));
}

void require_pair_feasible(const Universe& u) {
  if (u.world_count() > kMaxPairWorlds)
    throw Error("exhaustive pair checking needs at most " +
                std::to_string(kMaxPairWorlds) + " worlds, universe has " +
                std::to_string(u.world_count()));
}

// Raw strategy outputs per sentence class; nullopt marks a script gap.
struct UpdateTable {
  std::vector<std::optional<WorldSet>> belief;
  std::uint64_t gaps = 0;
};

UpdateTable build_table(const UpdateStrategy& strategy, const BeliefState& s,
                        const Universe& u) {
  const std::uint32_t m = u.world_count();
  UpdateTable t;
  t.belief.resize(std::uint64_t{1} << m);
  for (std::uint64_t mask = 0; mask < t.belief.size(); ++mask) {
    const WorldSet cls = WorldSet::from_word(m, mask);
    if (strategy.defined_on(s, cls)) {
      t.belief[mask] = strategy.next(s, cls).belief;
    } else {
      ++t.gaps;
    }
  }
  return t;
}

void record(CheckReport& r, Violation v) {
  ++r.violations_total;
  if (r.violations.size() < r.cap) r.violations.push_back(std::move(v));
}

Violation make_violation(const Universe& u, const WorldSet& phi,
                         const std::optional<WorldSet>& varphi,
                         const std::string& state_id, const WorldSet& expected,
                         const WorldSet& actual, std::string detail) {
  Violation v;
  v.phi = phi;
  v.phi_text = class_text(phi, u);
  if (varphi) {
    v.varphi = varphi;
    v.varphi_text = class_text(*varphi, u);
  }
  v.state_id = state_id;
  v.expected = expected;
  v.actual = actual;
  v.detail = std::move(detail);
  return v;
}

}  // namespace

CheckReport check_km_one(const UpdateStrategy& strategy, const BeliefState& s,
                         KmPostulate p, const Universe& u, std::uint32_t cap) {
  require_unary_feasible(u);
  const bool needs_pairs = p == KmPostulate::U5 || p == KmPostulate::U6 ||
                           p == KmPostulate::U7;
  if (needs_pairs) require_pair_feasible(u);

  const std::uint32_t m = u.world_count();
  const std::uint64_t classes = std::uint64_t{1} << m;
  CheckReport r;
  r.postulate = to_string(p);
  r.strategy = strategy.name();
  r.state_id = s.id;
  r.cap = cap;

  const UpdateTable tbl = build_table(strategy, s, u);
  auto defined = [&](std::uint64_t mask) { return tbl.belief[mask].has_value(); };
  auto bel = [&](std::uint64_t mask) -> const WorldSet& {
    return *tbl.belief[mask];
  };

  switch (p) {
    case KmPostulate::U1: {
      for (std::uint64_t a = 0; a < classes; ++a) {
        if (!defined(a)) { ++r.instances_skipped; continue; }
        ++r.instances_checked;
        const WorldSet cls = WorldSet::from_word(m, a);
        if (!bel(a).subset_of(cls))
          record(r, make_violation(u, cls, std::nullopt, s.id, cls, bel(a),
                                   "updated belief " + u.set_label(bel(a)) +
                                       " is not contained in the input class " +
                                       u.set_label(cls)));
      }
      break;
    }
    case KmPostulate::U2: {
      for (std::uint64_t a = 0; a < classes; ++a) {
        const WorldSet cls = WorldSet::from_word(m, a);
        if (!s.belief.subset_of(cls)) { ++r.instances_vacuous; continue; }
        if (!defined(a)) { ++r.instances_skipped; continue; }
        ++r.instances_checked;
        if (bel(a) != s.belief)
          record(r, make_violation(u, cls, std::nullopt, s.id, s.belief, bel(a),
                                   "belief already entails the input, yet the "
                                   "update changed it"));
      }
      break;
    }
    case KmPostulate::U3: {
      for (std::uint64_t a = 0; a < classes; ++a) {
        const WorldSet cls = WorldSet::from_word(m, a);
        if (s.belief.empty() || cls.empty()) { ++r.instances_vacuous; continue; }
        if (!defined(a)) { ++r.instances_skipped; continue; }
        ++r.instances_checked;
        if (bel(a).empty())
          record(r, make_violation(u, cls, std::nullopt, s.id, cls, bel(a),
                                   "consistent belief updated by a consistent "
                                   "input gave the empty belief set"));
      }
      break;
    }
    case KmPostulate::U4: {
      if (!u.has_alphabet()) break;  // abstract worlds: no syntax to vary
      const Alphabet& alpha = u.alphabet();
      // A fixed battery: several classes, each rendered in several
      // syntactically different but equivalent ways, pushed through the full
      // parse/models pipeline before the strategy sees them.
      std::vector<WorldSet> bases = {u.empty_set(), u.full_set(), s.belief,
                                     s.belief.complement()};
      WorldSet one(u.world_count());
      one.insert(0);
      bases.push_back(one);
      for (const WorldSet& base : bases) {
        const Formula f = form_of(base, alpha);
        std::vector<Formula> variants = {
            !!f,
            f & Formula::top(),
            Formula::bot() | f,
            !form_of(base.complement(), alpha),
            Formula::implies(Formula::implies(f, Formula::bot()),
                             Formula::bot()),
        };
        for (const Formula& g : variants) {
          const WorldSet gs = models(g, alpha);
          if (!strategy.defined_on(s, base) || !strategy.defined_on(s, gs)) {
            ++r.instances_skipped;
            continue;
          }
          ++r.instances_checked;
          const WorldSet lhs = strategy.next(s, base).belief;
          const WorldSet rhs = strategy.next(s, gs).belief;
          if (gs != base || lhs != rhs)
            record(r, make_violation(
                          u, base, gs, s.id, lhs, rhs,
                          "equivalent inputs '" + f.to_string() + "' and '" +
                              g.to_string() + "' updated differently"));
        }
      }
      break;
    }
    case KmPostulate::U5: {
      for (std::uint64_t a = 0; a < classes; ++a)
        for (std::uint64_t b = 0; b < classes; ++b) {
          if (!defined(a) || !defined(a & b)) { ++r.instances_skipped; continue; }
          ++r.instances_checked;
          const WorldSet clsB = WorldSet::from_word(m, b);
          const WorldSet left = bel(a) & clsB;
          if (!left.subset_of(bel(a & b)))
            record(r, make_violation(
                          u, WorldSet::from_word(m, a), clsB, s.id,
                          bel(a & b), left,
                          "strengthening the input lost required worlds"));
        }
      break;
    }
    case KmPostulate::U6: {
      for (std::uint64_t a = 0; a < classes; ++a)
        for (std::uint64_t b = 0; b < classes; ++b) {
          if (!defined(a) || !defined(b)) { ++r.instances_skipped; continue; }
          const WorldSet clsA = WorldSet::from_word(m, a);
          const WorldSet clsB = WorldSet::from_word(m, b);
          if (!bel(a).subset_of(clsB) || !bel(b).subset_of(clsA)) {
            ++r.instances_vacuous;
            continue;
          }
          ++r.instances_checked;
          if (bel(a) != bel(b))
            record(r, make_violation(u, clsA, clsB, s.id, bel(a), bel(b),
                                     "mutually entailing updates disagree"));
        }
      break;
    }
    case KmPostulate::U7: {
      if (s.belief.count() > 1) {
        // The guard is state-level: an incomplete belief set makes every
        // pair instance vacuous.
        r.instances_vacuous = classes * classes;
        break;
      }
      for (std::uint64_t a = 0; a < classes; ++a)
        for (std::uint64_t b = 0; b < classes; ++b) {
          if (!defined(a) || !defined(b) || !defined(a | b)) {
            ++r.instances_skipped;
            continue;
          }
          ++r.instances_checked;
          const WorldSet both = bel(a) & bel(b);
          if (!both.subset_of(bel(a | b)))
            record(r, make_violation(u, WorldSet::from_word(m, a),
                                     WorldSet::from_word(m, b), s.id,
                                     bel(a | b), both,
                                     "conjunction of updates is not covered "
                                     "by the update of the disjunction"));
        }
      break;
    }
    case KmPostulate::U8: {
      std::vector<BeliefState> projections;
      s.belief.for_each([&](World w) {
        projections.push_back(singleton_projection(s, w));
      });
      for (std::uint64_t a = 0; a < classes; ++a) {
        const WorldSet cls = WorldSet::from_word(m, a);
        bool all_defined = defined(a);
        for (const auto& proj : projections)
          all_defined = all_defined && strategy.defined_on(proj, cls);
        if (!all_defined) { ++r.instances_skipped; continue; }
        ++r.instances_checked;
        WorldSet unioned(m);
        for (const auto& proj : projections)
          unioned |= strategy.next(proj, cls).belief;
        if (unioned != bel(a))
          record(r, make_violation(u, cls, std::nullopt, s.id, unioned, bel(a),
                                   "update does not distribute over the "
                                   "belief set's worlds"));
      }
      break;
    }
  }
  return r;
}

std::vector<CheckReport> check_km(const UpdateStrategy& strategy,
                                  const BeliefState& s, const Universe& u,
                                  std::uint32_t cap) {
  std::vector<CheckReport> out;
  for (int i = 0; i < 8; ++i)
    out.push_back(
        check_km_one(strategy, s, static_cast<KmPostulate>(i), u, cap));
  return out;
}

namespace {

// Shared instance logic for the iterated postulates. `direct` is the one-
// step belief per class and `bel2` the two-step belief per class (both from
// the update semantics); `bel1` is the intermediate belief set.
struct IterTables {
  const std::vector<WorldSet>& direct;
  const std::vector<WorldSet>& bel2;
  const WorldSet& bel1;
  const WorldSet& phi;
};

bool iter_antecedent(IterPostulate p, const IterTables& t, std::uint64_t v) {
  const WorldSet& varphi_direct = t.direct[v];
  switch (p) {
    case IterPostulate::C1:
      return WorldSet::from_word(t.phi.universe_size(), v).subset_of(t.phi);
    case IterPostulate::C2:
      return !WorldSet::from_word(t.phi.universe_size(), v).intersects(t.phi);
    case IterPostulate::C3: return varphi_direct.subset_of(t.phi);
    case IterPostulate::C4: return varphi_direct.intersects(t.phi);
    case IterPostulate::Nat: {
      const WorldSet cls = WorldSet::from_word(t.phi.universe_size(), v);
      return !t.bel1.intersects(cls);
    }
    case IterPostulate::Lex:
      return WorldSet::from_word(t.phi.universe_size(), v).intersects(t.phi);
    case IterPostulate::Ind: return varphi_direct.intersects(t.phi);
  }
  throw Error("corrupt postulate");
}

// Returns true when the consequent FAILS; fills the comparison sets.
bool iter_consequent_fails(IterPostulate p, const IterTables& t,
                           std::uint64_t v, WorldSet& expected,
                           WorldSet& actual, std::string& what) {
  actual = t.bel2[v];
  switch (p) {
    case IterPostulate::C1:
    case IterPostulate::C2:
    case IterPostulate::Nat:
      expected = t.direct[v];
      what = "two-step belief differs from the direct update";
      return actual != expected;
    case IterPostulate::C3:
    case IterPostulate::Lex:
    case IterPostulate::Ind:
      expected = t.phi;
      what = "two-step belief does not entail the first input";
      return !actual.subset_of(t.phi);
    case IterPostulate::C4:
      expected = t.phi;
      what = "two-step belief entails the negation of the first input";
      return !actual.intersects(t.phi);
  }
  throw Error("corrupt postulate");
}

std::vector<WorldSet> semantic_table(const BeliefState& s,
                                     std::uint32_t m) {
  std::vector<WorldSet> out;
  const std::uint64_t classes = std::uint64_t{1} << m;
  out.reserve(classes);
  for (std::uint64_t v = 0; v < classes; ++v)
    out.push_back(semantic_update_belief(s, WorldSet::from_word(m, v)));
  return out;
}

}  // namespace

CheckReport check_iterated(const UpdateStrategy& strategy,
                           const BeliefState& s, IterPostulate p,
                           const Universe& u, std::uint32_t cap) {
  require_pair_feasible(u);
  const std::uint32_t m = u.world_count();
  const std::uint64_t classes = std::uint64_t{1} << m;

  CheckReport r;
  r.postulate = to_string(p);
  r.strategy = strategy.name();
  r.state_id = s.id;
  r.cap = cap;

  const std::vector<WorldSet> direct = semantic_table(s, m);

  for (std::uint64_t a = 0; a < classes; ++a) {
    const WorldSet phi = WorldSet::from_word(m, a);
    const bool have_step = strategy.defined_on(s, phi);
    std::optional<BeliefState> s1;
    std::vector<WorldSet> bel2;
    if (have_step) {
      s1 = strategy.next(s, phi);
      bel2 = semantic_table(*s1, m);
    }
    const WorldSet bel1 =
        have_step ? s1->belief : semantic_update_belief(s, phi);
    for (std::uint64_t v = 0; v < classes; ++v) {
      IterTables t{direct, have_step ? bel2 : direct, bel1, phi};
      if (!iter_antecedent(p, t, v)) { ++r.instances_vacuous; continue; }
      if (!have_step) { ++r.instances_skipped; continue; }
      ++r.instances_checked;
      WorldSet expected, actual;
      std::string what;
      if (iter_consequent_fails(p, t, v, expected, actual, what))
        record(r, make_violation(u, phi, WorldSet::from_word(m, v), s.id,
                                 expected, actual, what));
    }
  }
  return r;
}

IterVerdicts check_iterated_all(const UpdateStrategy& strategy,
                                const BeliefState& s, const Universe& u) {
  require_pair_feasible(u);
  const std::uint32_t m = u.world_count();
  const std::uint64_t classes = std::uint64_t{1} << m;
  IterVerdicts out;

  const std::vector<WorldSet> direct = semantic_table(s, m);
  for (std::uint64_t a = 0; a < classes; ++a) {
    const WorldSet phi = WorldSet::from_word(m, a);
    if (!strategy.defined_on(s, phi)) continue;
    const BeliefState s1 = strategy.next(s, phi);
    const std::vector<WorldSet> bel2 = semantic_table(s1, m);
    const IterTables t{direct, bel2, s1.belief, phi};
    for (std::uint64_t v = 0; v < classes; ++v) {
      for (int p = 0; p < 7; ++p) {
        const auto postulate = static_cast<IterPostulate>(p);
        if (!iter_antecedent(postulate, t, v)) continue;
        ++out.checked[p];
        WorldSet expected, actual;
        std::string what;
        if (iter_consequent_fails(postulate, t, v, expected, actual, what))
          out.holds[p] = false;
      }
    }
  }
  return out;
}

IterInstanceResult eval_iterated_instance(const UpdateStrategy& strategy,
                                          const BeliefState& s,
                                          IterPostulate p, const WorldSet& phi,
                                          const WorldSet& varphi,
                                          const Universe& u) {
  require_pair_feasible(u);
  const std::uint32_t m = u.world_count();
  IterInstanceResult out;
  // Single-instance tables: only the two classes involved are populated.
  std::vector<WorldSet> direct(std::uint64_t{1} << m, WorldSet(m));
  std::vector<WorldSet> bel2(std::uint64_t{1} << m, WorldSet(m));
  const std::uint64_t v = varphi.low_word();
  direct[v] = semantic_update_belief(s, varphi);
  if (!strategy.defined_on(s, phi))
    throw Error("strategy '" + strategy.name() + "' is undefined on state '" +
                s.id + "' with input " + u.set_label(phi));
  const BeliefState s1 = strategy.next(s, phi);
  bel2[v] = semantic_update_belief(s1, varphi);
  IterTables t{direct, bel2, s1.belief, phi};
  out.antecedent = iter_antecedent(p, t, v);
  if (!out.antecedent) return out;
  out.violated = iter_consequent_fails(p, t, v, out.expected, out.actual,
                                       out.detail);
  return out;
}

RodriguesReport check_rodrigues_c1(const WorldSet& psi,
                                   const std::map<World, Preorder>& initial,
                                   const std::map<World, Preorder>& updated,
                                   const WorldSet& phi, const Universe& u,
                                   std::uint32_t cap) {
  RodriguesReport r;
  const auto order_for = [&](const std::map<World, Preorder>& m, World w)
      -> const Preorder& {
    const auto it = m.find(w);
    if (it == m.end())
      throw Error("no order supplied for belief world " + u.world_label(w));
    return it->second;
  };

  // Preorder coincidence on [phi] x [phi], per belief world.
  psi.for_each([&](World w) {
    const Preorder& before = order_for(initial, w);
    const Preorder& after = order_for(updated, w);
    phi.for_each([&](World w1) {
      phi.for_each([&](World w2) {
        ++r.pairs_checked;
        if (before.leq(w1, w2) != after.leq(w1, w2)) {
          r.agreement_holds = false;
          if (r.disagreements.size() < cap)
            r.disagreements.push_back({w, w1, w2});
        }
      });
    });
  });

  // Update equivalence for every sentence class inside [phi].
  phi.for_each_subset([&](const WorldSet& varphi) {
    ++r.classes_checked;
    WorldSet plain(phi.universe_size());
    psi.for_each(
        [&](World w) { plain |= order_for(initial, w).min_of(varphi); });
    const WorldSet shifted = rodrigues_update(psi, updated, varphi);
    if (plain != shifted) {
      r.update_equivalence_holds = false;
      if (r.update_mismatches.size() < cap)
        r.update_mismatches.push_back(make_violation(
            u, phi, varphi, "", plain, shifted,
            "re-updating the initial belief set under the shifted orders "
            "diverges from the plain update"));
    }
  });
  return r;
}

}  // namespace ibu
