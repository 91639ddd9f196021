#pragma once

#include <optional>
#include <vector>

#include "core.hpp"

namespace clab {

struct Budget {
  // Counted in winner evaluations.
  unsigned long long max_evaluations = 100'000'000ULL;
};

enum class VerdictStatus { Proof, Manipulable, BudgetExceeded };

struct Witness {
  std::vector<Preference> truths;     // coalition truth profile P, first member is sigma_ref
  std::vector<Preference> deviation;  // deviation profile D
  int truthful_winner = -1;
  int deviated_winner = -1;
};

struct OracleVerdict {
  VerdictStatus status = VerdictStatus::Proof;
  std::optional<Witness> witness;
  unsigned long long evaluations = 0;
};

// All m! linear orders over m candidates, lexicographic by `order`.
std::vector<Preference> all_preferences(int m);

// Ground-truth decision of c-collusion-proofness of a scoring profile with
// respect to c new voters. Manipulable iff some coalition truth profile P
// and deviation D make the deviated winner unanimously strictly preferred
// (over all of P) to the truthful winner, with the tie-break reference
// taken from P's first member. Deviations and coalition tails are
// enumerated as multisets; anonymity makes this equivalent to the full
// sequence enumeration.
OracleVerdict collusion_oracle(const ScoringProfile& x, const Rule& rule, int c,
                               TieBreak tb, const Budget& budget = Budget{});

// c = 1 specialization.
OracleVerdict strategyproof_oracle(const ScoringProfile& x, const Rule& rule,
                                   TieBreak tb, const Budget& budget = Budget{});

// { winner(x + tally(D)) : D in L(C)^c }, with the given tie-break
// reference. Sorted ascending.
std::vector<int> achievable_winners(const ScoringProfile& x, const Rule& rule, int c,
                                    const Preference& sigma_ref, TieBreak tb,
                                    const Budget& budget = Budget{});

// Replays a witness through core::winner and re-checks the unanimous
// strict improvement. Used by tests and the discrepancy reports.
bool replay_witness(const ScoringProfile& x, const Rule& rule, TieBreak tb,
                    const Witness& w);

}  // namespace clab
