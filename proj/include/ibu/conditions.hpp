#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ibu/postulates.hpp"
#include "ibu/update.hpp"

namespace ibu {

// The semantic counterparts of the iterated postulates, phrased as
// preservation of minimal elements over subsets N of worlds.
enum class CrCondition { CR1, CR2, CR3, CR4, NatR, LexR, IndR };

std::string to_string(CrCondition c);
std::optional<CrCondition> parse_cr_condition(const std::string& name);

// One failing N with the direction that broke and the world left unmatched.
struct CrWitness {
  WorldSet n;
  std::string direction;  // "forth", "back", "min-outside", "no-target-meets"
  World unmatched = 0;    // the w'' (or the offending minimal world)
  std::optional<World> at_world;  // the order key involved, where meaningful

  std::string describe(const Universe& u) const;
};

struct CrReport {
  std::string condition;
  std::string state_id;
  std::uint64_t n_total = 0;    // subsets enumerated
  std::uint64_t n_guarded = 0;  // subsets passing the condition's guard
  std::uint64_t n_vacuous = 0;  // guard failed (counted, not merely skipped)
  std::uint64_t n_failed = 0;
  std::vector<CrWitness> witnesses;
  std::uint32_t cap = 25;

  bool holds() const { return n_failed == 0; }
  std::string verdict() const { return holds() ? "holds" : "violated"; }
};

// Exhaustively checks a semantic condition for the transition s --phi--> s_next.
// Requires s_next's belief set to equal the update semantics of (s, phi).
// N ranges over raw world subsets: of [phi] for CR1, of [not phi] for CR2,
// of the whole universe elsewhere.
CrReport check_cr(const BeliefState& s, const BeliefState& s_next,
                  const WorldSet& phi, CrCondition which, const Universe& u,
                  std::uint32_t cap = 25);

// The postulate/condition pairs related by the representation theorems.
struct HarnessPair {
  IterPostulate postulate;
  CrCondition condition;
};

std::span<const HarnessPair> all_harness_pairs();

struct HarnessDisagreement {
  std::string state_id;
  WorldSet phi;
  std::string pair;          // e.g. "C1/CR1"
  bool postulate_holds = false;
  bool condition_holds = false;
  std::optional<Violation> postulate_witness;
  std::optional<CrWitness> condition_witness;
};

struct HarnessReport {
  std::string strategy;
  std::uint64_t instances = 0;          // (state, phi, pair) triples evaluated
  std::uint64_t skipped = 0;            // strategy gaps
  std::uint64_t agreements = 0;
  std::uint64_t postulate_instances = 0;  // varphi instances on the syntactic side
  std::uint64_t condition_sets = 0;       // N sets on the semantic side
  std::vector<HarnessDisagreement> disagreements;
  std::uint32_t cap = 25;

  bool ok() const { return disagreements.empty(); }
};

// For every state and every first-input class phi, evaluates the postulate
// (quantified over all second-input classes) and the semantic condition
// (quantified over all N) and demands matching verdicts. Any disagreement is
// a defect in the implementation, not in the strategy under test. Strategies
// must produce valid states; an unfaithful output aborts the run.
HarnessReport equivalence_harness(const UpdateStrategy& strategy,
                                  std::span<const BeliefState> states,
                                  std::span<const HarnessPair> pairs,
                                  const Universe& u, std::uint32_t cap = 25);

}  // namespace ibu
