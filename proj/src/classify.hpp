#pragma once

#include <string>

#include "core.hpp"

namespace clab {

enum class ClassStatus { Proof, Manipulable, Unknown };

std::string class_status_name(ClassStatus s);

struct Classification {
  ClassStatus status = ClassStatus::Unknown;
  std::string basis;    // which characterization case fired ("" if none)
  bool complete = false;  // whether the characterization is an iff
};

// O(m) classifiers. The plurality characterization and the k-approval
// single-voter characterization are complete; k-approval coalitions,
// veto, and the Borda margin condition are sufficient-only and return
// Unknown instead of fabricating Manipulable. Tie-break must be
// for/against the manipulators; the fixed-order regime is not
// characterized and is rejected.

Classification classify_plurality(const ScoringProfile& x, int c, TieBreak tb);
Classification classify_kapproval(const ScoringProfile& x, int k, int c, TieBreak tb);
Classification classify_veto(const ScoringProfile& x, int c, TieBreak tb);
Classification classify_borda_sp(const ScoringProfile& x);

// Dispatch on rule kind. Borda with c > 1 has no characterization and
// yields Unknown.
Classification classify(const ScoringProfile& x, const Rule& rule, int c, TieBreak tb);

// Sufficient manipulability test for Borda at large m: true iff two
// distinct candidates are both ranked within the top l positions of
// every vote. Requires (l-1)*n < m.
bool borda_sufficient_manipulable(const Profile& p, int l);

}  // namespace clab
