#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace clab {

using Score = long long;

// Error taxonomy shared by all modules. `code` maps 1:1 onto the C API
// status codes.
enum class ErrorCode {
  InvalidArgument,
  Unsupported,
  BudgetExceeded,
  TooLarge,
  OutOfRegime,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// A strict linear order over m candidates, most-preferred first.
// Candidates are dense indices 0..m-1.
struct Preference {
  std::vector<int> order;

  Preference() = default;
  explicit Preference(std::vector<int> o);

  int m() const { return static_cast<int>(order.size()); }

  // Position of candidate c in this order (0 = most preferred).
  int rank_of(int c) const;

  // true iff this order ranks a strictly above b.
  bool prefers(int a, int b) const { return rank_of(a) < rank_of(b); }

  static Preference identity(int m);

  bool operator==(const Preference&) const = default;
};

struct Profile {
  std::vector<Preference> votes;
  int m = 0;  // candidate count, shared by all votes

  Profile() = default;
  Profile(std::vector<Preference> v, int m_);

  long long n() const { return static_cast<long long>(votes.size()); }
};

enum class RuleKind { Plurality, Veto, KApproval, Borda };

struct Rule {
  RuleKind kind = RuleKind::Plurality;
  int m = 1;
  int k = 1;  // meaningful for KApproval only

  static Rule plurality(int m);
  static Rule veto(int m);
  static Rule kapproval(int k, int m);
  static Rule borda(int m);

  // Canonical score vector. Veto uses the negative-score convention
  // (0,...,0,-1); plurality/k-approval are 0/1; Borda is (m-1,...,0).
  std::vector<Score> alpha() const;

  // The k of the equivalent k-approval rule; throws for Borda.
  int approval_k() const;

  std::string name() const;
};

// Per-candidate total scores induced by n votes under a rule.
struct ScoringProfile {
  std::vector<Score> scores;
  long long n = 0;

  ScoringProfile() = default;
  ScoringProfile(std::vector<Score> s, long long n_) : scores(std::move(s)), n(n_) {}

  int m() const { return static_cast<int>(scores.size()); }
};

enum class TieBreak { ForManipulators, AgainstManipulators, FixedOrder };

std::string tiebreak_name(TieBreak tb);
TieBreak tiebreak_from_name(const std::string& s);

Rule rule_from_name(const std::string& s, int k, int m);

// Validates the ScoringProfile invariants for `rule` (sum and range).
void check_scoring_profile(const ScoringProfile& x, const Rule& rule);

ScoringProfile tally(const Profile& profile, const Rule& rule);

// Adds the tally of `votes` on top of `x` (the standing scores of the
// non-manipulators). Used heavily by the oracle.
ScoringProfile add_votes(const ScoringProfile& x, const std::vector<Preference>& votes,
                         const Rule& rule);

// Winner of a score vector under a tie-break policy. For FixedOrder,
// `ref` is the fixed reference order; for For/Against it is the
// manipulators' reference order (the coalition's first member's truth).
int winner(const std::vector<Score>& scores, TieBreak tb, const Preference& ref);

inline int winner(const ScoringProfile& x, TieBreak tb, const Preference& ref) {
  return winner(x.scores, tb, ref);
}

// true iff every preference ranks a strictly above b (vacuously true on
// an empty list; false when a == b).
bool unanimously_prefers(const std::vector<Preference>& truths, int a, int b);

}  // namespace clab
