#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ibu/conditions.hpp"
#include "ibu/scenario.hpp"

namespace ibu {

// The two variants of the C1/C2 incompatibility argument: the first updates
// by a four-world sentence, the second by a single-world sentence, putting
// the probe sets inside [phi] and [not phi] respectively.
enum class Theorem6Variant { C1, C2 };

// The three two-element probe sets whose forth constraints pin the candidate
// relation; dropping one is the ablation sanity mode.
enum class ConstraintFamily { N0, N1, N2 };

std::optional<ConstraintFamily> parse_constraint_family(const std::string&);

struct SearchOutcome {
  std::string variant;  // "c1" | "c2"
  std::optional<std::string> ablated;
  std::vector<std::string> constraint_trace;
  std::uint64_t candidates_examined = 0;
  std::uint64_t forth_survivors = 0;  // candidates passing the forth filter
  std::vector<Preorder> survivors;    // also passing the back condition

  // The pieces needed to replay survivors against check_cr.
  Scenario scenario;
  WorldSet phi;
  std::vector<WorldSet> forth_sets;   // the three probe sets
  WorldSet back_set;                  // their union
};

// The built-in eight-world scenario behind the incompatibility replay: two
// chain orders over abstract worlds w1..w8 with belief {w1, w2}.
Scenario theorem6_scenario();

// Replays the impossibility argument by finite enumeration: computes the
// updated belief set, derives the forth constraints from the probe sets,
// enumerates all 29 preorders on the three probe worlds, filters by the kept
// forth constraints and checks the back condition on their union. Zero
// survivors confirms that no successor collection of orders exists.
SearchOutcome replay_theorem6(Theorem6Variant variant,
                              std::optional<ConstraintFamily> drop = {});

// Extends a candidate relation on the three probe worlds to a full faithful
// preorder at the accepted world (w3 below everything, the remaining worlds
// in a top block), preserving minima over probe subsets.
Preorder theorem6_extend_candidate(const Preorder& candidate);

struct RandomScenarioParams {
  std::uint32_t atoms = 3;        // 2..3
  std::uint32_t belief_size = 2;  // 1..3
  enum class OrderStyle { TotalLayered, Partial };
  OrderStyle style = OrderStyle::TotalLayered;
  std::uint32_t script_entries = 0;  // synthesized scripted transitions
};

// Deterministic in the seed, bit for bit: the same seed always produces the
// same scenario (and therefore the same printed bytes). Every generated
// state passes validation; partial orders are built from random pairs plus
// closure with the key world forced strictly below everything.
Scenario random_scenario(std::uint64_t seed, const RandomScenarioParams& p);

// The most naive recomputation of the update semantics: per candidate world,
// scan for strict dominators using raw order lookups. Shares only the value
// types with the update module; used as the differential-testing oracle.
WorldSet oracle_update(const BeliefState& s, const WorldSet& phi);

// Asserts the implication lattice between the iterated postulates over
// generated scenarios: lexicographic implies independence, independence
// implies the two preservation postulates, natural implies the second
// equivalence postulate. Vacuous runs (antecedent postulate fails or has no
// checked instances) are counted separately.
struct RelationOutcome {
  struct Implication {
    std::string name;            // e.g. "Lex->Ind"
    std::uint64_t non_vacuous = 0;
    std::uint64_t vacuous = 0;
    std::uint64_t violations = 0;
  };
  std::vector<Implication> implications;
  std::uint64_t runs = 0;
  std::vector<std::string> violation_notes;

  std::uint64_t total_violations() const {
    std::uint64_t v = 0;
    for (const auto& i : implications) v += i.violations;
    return v;
  }
};

RelationOutcome check_relations(std::span<const std::uint64_t> seeds,
                                const RandomScenarioParams& params);

}  // namespace ibu
