#include "ibu/conditions.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ibu {

std::string to_string(CrCondition c) {
  static const char* names[] = {"CR1", "CR2", "CR3", "CR4",
                                "NatR", "LexR", "IndR"};
  return names[static_cast<int>(c)];
}

std::optional<CrCondition> parse_cr_condition(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  if (n == "cr1") return CrCondition::CR1;
  if (n == "cr2") return CrCondition::CR2;
  if (n == "cr3") return CrCondition::CR3;
  if (n == "cr4") return CrCondition::CR4;
  if (n == "natr") return CrCondition::NatR;
  if (n == "lexr") return CrCondition::LexR;
  if (n == "indr") return CrCondition::IndR;
  return std::nullopt;
}

std::string CrWitness::describe(const Universe& u) const {
  std::ostringstream out;
  out << "N = " << u.set_label(n) << ": " << direction;
  if (direction == "forth")
    out << " fails: " << u.world_label(unmatched)
        << " is minimal on the initial side but under no updated order";
  else if (direction == "back")
    out << " fails: " << u.world_label(unmatched)
        << " is minimal under an updated order but on no initial one";
  else if (direction == "min-outside")
    out << ": minimal world " << u.world_label(unmatched)
        << " falsifies the input";
  else if (direction == "no-target-meets")
    out << ": no updated order keeps a minimal world satisfying the input";
  if (at_world) out << " (order at " << u.world_label(*at_world) << ")";
  return out.str();
}

namespace {

// Union of per-world minima over one side's orders.
WorldSet union_min(const BeliefState& s, const WorldSet& n) {
  WorldSet out(n.universe_size());
  s.belief.for_each([&](World w) { out |= s.order_at(w).min_of(n); });
  return out;
}

void add_witness(CrReport& r, CrWitness w) {
  ++r.n_failed;
  if (r.witnesses.size() < r.cap) r.witnesses.push_back(std::move(w));
}

}  // namespace

CrReport check_cr(const BeliefState& s, const BeliefState& s_next,
                  const WorldSet& phi, CrCondition which, const Universe& u,
                  std::uint32_t cap) {
  CrReport r;
  r.condition = to_string(which);
  r.state_id = s.id;
  r.cap = cap;

  if (s_next.belief != semantic_update_belief(s, phi))
    throw Error("the successor state's belief set does not follow from the "
                "update semantics of (" + s.id + ", " + u.set_label(phi) +
                ")");

  const bool forth_back =
      which == CrCondition::CR1 || which == CrCondition::CR2 ||
      which == CrCondition::NatR;

  // The N domain: subsets of [phi] for CR1, of [not phi] for CR2, all
  // subsets of the universe otherwise.
  WorldSet base = u.full_set();
  if (which == CrCondition::CR1) base = phi;
  if (which == CrCondition::CR2) base = phi.complement();

  // Guard of the NatR condition: no initially accepted phi-minimum lies in N.
  WorldSet phi_minima(u.world_count());
  if (which == CrCondition::NatR)
    s.belief.for_each(
        [&](World w) { phi_minima |= s.order_at(w).min_of(phi); });

  base.for_each_subset([&](const WorldSet& n) {
    ++r.n_total;

    // Evaluate the guard.
    bool guarded = true;
    switch (which) {
      case CrCondition::CR1:
      case CrCondition::CR2:
        break;  // domain restriction only
      case CrCondition::CR3: {
        bool all_inside = true;
        s.belief.for_each([&](World w) {
          if (!s.order_at(w).min_of(n).subset_of(phi)) all_inside = false;
        });
        guarded = all_inside;
        break;
      }
      case CrCondition::CR4:
      case CrCondition::IndR: {
        bool some_meets = false;
        s.belief.for_each([&](World w) {
          if (s.order_at(w).min_of(n).intersects(phi)) some_meets = true;
        });
        guarded = some_meets;
        break;
      }
      case CrCondition::NatR:
        guarded = !phi_minima.intersects(n);
        break;
      case CrCondition::LexR:
        guarded = n.intersects(phi);
        break;
    }
    if (!guarded) {
      ++r.n_vacuous;
      return;
    }
    ++r.n_guarded;

    if (forth_back) {
      const WorldSet src = union_min(s, n);
      const WorldSet tgt = union_min(s_next, n);
      const WorldSet forth_missing = src - tgt;
      const WorldSet back_missing = tgt - src;
      if (!forth_missing.empty())
        add_witness(r, {n, "forth", forth_missing.first(), std::nullopt});
      else if (!back_missing.empty())
        add_witness(r, {n, "back", back_missing.first(), std::nullopt});
      return;
    }

    if (which == CrCondition::CR4) {
      bool some_target_meets = false;
      s_next.belief.for_each([&](World w) {
        if (s_next.order_at(w).min_of(n).intersects(phi))
          some_target_meets = true;
      });
      if (!some_target_meets)
        add_witness(r, {n, "no-target-meets", n.empty() ? 0 : n.first(),
                        std::nullopt});
      return;
    }

    // CR3, LexR, IndR: every updated order's minima must satisfy phi.
    bool ok = true;
    CrWitness witness;
    s_next.belief.for_each([&](World w) {
      const WorldSet outside = s_next.order_at(w).min_of(n) - phi;
      if (!outside.empty() && ok) {
        ok = false;
        witness = {n, "min-outside", outside.first(), w};
      }
    });
    if (!ok) add_witness(r, std::move(witness));
  });
  return r;
}

std::span<const HarnessPair> all_harness_pairs() {
  static const HarnessPair pairs[] = {
      {IterPostulate::C1, CrCondition::CR1},
      {IterPostulate::C2, CrCondition::CR2},
      {IterPostulate::C3, CrCondition::CR3},
      {IterPostulate::C4, CrCondition::CR4},
      {IterPostulate::Nat, CrCondition::NatR},
      {IterPostulate::Lex, CrCondition::LexR},
      {IterPostulate::Ind, CrCondition::IndR},
  };
  return pairs;
}

HarnessReport equivalence_harness(const UpdateStrategy& strategy,
                                  std::span<const BeliefState> states,
                                  std::span<const HarnessPair> pairs,
                                  const Universe& u, std::uint32_t cap) {
  if (u.world_count() > kMaxPairWorlds)
    throw Error("harness needs at most " + std::to_string(kMaxPairWorlds) +
                " worlds");
  const std::uint32_t m = u.world_count();
  const std::uint64_t classes = std::uint64_t{1} << m;

  HarnessReport report;
  report.strategy = strategy.name();
  report.cap = cap;

  for (const BeliefState& s : states) {
    const StateValidation sv = validate_state(s, m);
    if (!sv.ok())
      throw Error("harness input state '" + s.id + "' is invalid: " +
                  sv.issues.front().describe(u));

    // One-step beliefs per class, shared across all phi and pairs.
    std::vector<WorldSet> direct;
    direct.reserve(classes);
    for (std::uint64_t v = 0; v < classes; ++v)
      direct.push_back(semantic_update_belief(s, WorldSet::from_word(m, v)));

    for (std::uint64_t a = 0; a < classes; ++a) {
      const WorldSet phi = WorldSet::from_word(m, a);
      if (!strategy.defined_on(s, phi)) {
        report.skipped += pairs.size();
        continue;
      }
      const BeliefState s1 = apply_strategy(strategy, s, phi, u);
      std::vector<WorldSet> bel2;
      bel2.reserve(classes);
      for (std::uint64_t v = 0; v < classes; ++v)
        bel2.push_back(semantic_update_belief(s1, WorldSet::from_word(m, v)));

      for (const HarnessPair& pair : pairs) {
        ++report.instances;
        // Syntactic side: quantify the second input over all classes.
        bool postulate_holds = true;
        std::optional<Violation> postulate_witness;
        for (std::uint64_t v = 0; v < classes; ++v) {
          const WorldSet varphi = WorldSet::from_word(m, v);
          bool antecedent = false;
          switch (pair.postulate) {
            case IterPostulate::C1: antecedent = varphi.subset_of(phi); break;
            case IterPostulate::C2: antecedent = !varphi.intersects(phi); break;
            case IterPostulate::C3: antecedent = direct[v].subset_of(phi); break;
            case IterPostulate::C4:
            case IterPostulate::Ind: antecedent = direct[v].intersects(phi); break;
            case IterPostulate::Nat: antecedent = !s1.belief.intersects(varphi); break;
            case IterPostulate::Lex: antecedent = varphi.intersects(phi); break;
          }
          if (!antecedent) continue;
          ++report.postulate_instances;
          bool fails = false;
          WorldSet expected, actual = bel2[v];
          switch (pair.postulate) {
            case IterPostulate::C1:
            case IterPostulate::C2:
            case IterPostulate::Nat:
              expected = direct[v];
              fails = actual != expected;
              break;
            case IterPostulate::C3:
            case IterPostulate::Lex:
            case IterPostulate::Ind:
              expected = phi;
              fails = !actual.subset_of(phi);
              break;
            case IterPostulate::C4:
              expected = phi;
              fails = !actual.intersects(phi);
              break;
          }
          if (fails) {
            postulate_holds = false;
            if (!postulate_witness) {
              Violation w;
              w.phi = phi;
              w.varphi = varphi;
              w.phi_text = u.set_label(phi);
              w.varphi_text = u.set_label(varphi);
              w.state_id = s.id;
              w.expected = expected;
              w.actual = actual;
              w.detail = "postulate instance failed";
              postulate_witness = std::move(w);
            }
          }
        }

        // Semantic side.
        const CrReport cr = check_cr(s, s1, phi, pair.condition, u, 1);
        report.condition_sets += cr.n_total;

        if (postulate_holds == cr.holds()) {
          ++report.agreements;
        } else {
          HarnessDisagreement d;
          d.state_id = s.id;
          d.phi = phi;
          d.pair = to_string(pair.postulate) + "/" + to_string(pair.condition);
          d.postulate_holds = postulate_holds;
          d.condition_holds = cr.holds();
          d.postulate_witness = postulate_witness;
          if (!cr.witnesses.empty()) d.condition_witness = cr.witnesses.front();
          if (report.disagreements.size() < cap)
            report.disagreements.push_back(std::move(d));
        }
      }
    }
  }
  return report;
}

}  // namespace ibu
