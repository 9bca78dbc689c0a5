#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ibu/update.hpp"

namespace ibu {

// The eight one-step rationality postulates on belief-state update.
enum class KmPostulate { U1, U2, U3, U4, U5, U6, U7, U8 };

// The iterated postulates: the four DP-style ones plus the natural,
// lexicographic and independence strengthenings.
enum class IterPostulate { C1, C2, C3, C4, Nat, Lex, Ind };

std::string to_string(KmPostulate p);
std::string to_string(IterPostulate p);
std::optional<KmPostulate> parse_km_postulate(const std::string& name);
std::optional<IterPostulate> parse_iter_postulate(const std::string& name);

// Exhaustive checkers quantify inputs over one canonical sentence per world
// set, so a universe of m worlds yields 2^m classes per input slot. Unary
// quantification is feasible up to 16 worlds, pairs up to 12.
inline constexpr std::uint32_t kMaxUnaryWorlds = 16;
inline constexpr std::uint32_t kMaxPairWorlds = 12;

// One replayable counterexample instance.
struct Violation {
  WorldSet phi;                      // first input class
  std::optional<WorldSet> varphi;    // second input class, where applicable
  std::string phi_text;              // canonical sentence text
  std::string varphi_text;
  std::string state_id;
  WorldSet expected;                 // meaning depends on the postulate
  WorldSet actual;
  std::string detail;
};

struct CheckReport {
  std::string postulate;
  std::string strategy;
  std::string state_id;
  std::uint64_t instances_checked = 0;   // antecedent held, evaluated
  std::uint64_t instances_vacuous = 0;   // antecedent failed
  std::uint64_t instances_skipped = 0;   // strategy gap
  std::uint64_t violations_total = 0;
  std::vector<Violation> violations;     // at most `cap`, generation order
  std::uint32_t cap = 25;

  bool holds() const { return violations_total == 0; }
  std::string verdict() const {
    return holds() ? "holds-exhaustively" : "violated";
  }
};

// Checks one KM postulate for a state, quantifying inputs over every world-
// set class (and pairs where the postulate mentions two sentences). U4 runs
// a fixed battery of syntactic variant pairs through the full formula
// pipeline; U8 uses singleton projections as the existential witnesses.
CheckReport check_km_one(const UpdateStrategy& strategy, const BeliefState& s,
                         KmPostulate p, const Universe& universe,
                         std::uint32_t cap = 25);

// All eight, in order.
std::vector<CheckReport> check_km(const UpdateStrategy& strategy,
                                  const BeliefState& s,
                                  const Universe& universe,
                                  std::uint32_t cap = 25);

// Checks one iterated postulate, quantifying (phi, varphi) over all ordered
// class pairs whose antecedent holds. The strategy supplies the intermediate
// state's preorders; both compared belief sets then follow from the update
// semantics, which every conforming strategy realizes.
CheckReport check_iterated(const UpdateStrategy& strategy,
                           const BeliefState& s, IterPostulate p,
                           const Universe& universe, std::uint32_t cap = 25);

// Verdicts for all seven iterated postulates computed in one pass over the
// inputs, sharing the per-phi successor tables. Used where only the verdicts
// matter (the implication-lattice checks), not the witness lists.
struct IterVerdicts {
  bool holds[7] = {true, true, true, true, true, true, true};
  std::uint64_t checked[7] = {0, 0, 0, 0, 0, 0, 0};

  bool holds_for(IterPostulate p) const { return holds[static_cast<int>(p)]; }
  std::uint64_t checked_for(IterPostulate p) const {
    return checked[static_cast<int>(p)];
  }
};

IterVerdicts check_iterated_all(const UpdateStrategy& strategy,
                                const BeliefState& s, const Universe& u);

// Evaluation of a single (phi, varphi) instance, used by scenario
// expectation clauses and to replay reported violations.
struct IterInstanceResult {
  bool antecedent = false;
  bool violated = false;
  WorldSet expected;  // per-postulate comparison data (see detail)
  WorldSet actual;
  std::string detail;
};

IterInstanceResult eval_iterated_instance(const UpdateStrategy& strategy,
                                          const BeliefState& s,
                                          IterPostulate p,
                                          const WorldSet& phi,
                                          const WorldSet& varphi,
                                          const Universe& universe);

// Agreement check for the comparison operator that keeps updating the
// initial belief set: the shifted orders must coincide with the initial ones
// on [phi] x [phi] per belief world, and for every sentence class inside
// [phi] the re-update must equal the plain update.
struct RodriguesWitness {
  World at_world;  // the belief world whose orders disagree
  World w1, w2;    // the [phi]-pair where they disagree
};

struct RodriguesReport {
  bool agreement_holds = true;                // the preorder-coincidence part
  std::vector<RodriguesWitness> disagreements;
  std::uint64_t pairs_checked = 0;
  bool update_equivalence_holds = true;       // the per-class equality part
  std::vector<Violation> update_mismatches;
  std::uint64_t classes_checked = 0;

  bool holds() const { return agreement_holds && update_equivalence_holds; }
};

RodriguesReport check_rodrigues_c1(const WorldSet& psi,
                                   const std::map<World, Preorder>& initial,
                                   const std::map<World, Preorder>& updated,
                                   const WorldSet& phi,
                                   const Universe& universe,
                                   std::uint32_t cap = 25);

}  // namespace ibu
