#include "classify.hpp"

#include <algorithm>

namespace clab {

namespace {

struct ScoreStats {
  Score max = 0;
  Score min = 0;
  Score second = 0;  // largest score strictly below a unique max; = max when tied
  int max_count = 0;
  bool all_equal = true;
};

ScoreStats stats(const std::vector<Score>& s) {
  ScoreStats st;
  st.max = *std::max_element(s.begin(), s.end());
  st.min = *std::min_element(s.begin(), s.end());
  st.all_equal = (st.max == st.min);
  st.max_count = static_cast<int>(std::count(s.begin(), s.end(), st.max));
  if (st.max_count > 1) {
    st.second = st.max;
  } else {
    st.second = st.min;
    for (Score v : s)
      if (v != st.max) st.second = std::max(st.second, v);
  }
  return st;
}

// Margin of a unique winner to the best rival; 0 when the top is tied.
Score unique_margin(const ScoreStats& st) {
  return st.max_count == 1 ? st.max - st.second : 0;
}

void require_two_way_tiebreak(TieBreak tb) {
  if (tb == TieBreak::FixedOrder)
    throw Error(ErrorCode::Unsupported,
                "characterizations cover only the for/against tie-breaks");
}

Classification degenerate_single_candidate() {
  return Classification{ClassStatus::Proof, "single-candidate", true};
}

}  // namespace

std::string class_status_name(ClassStatus s) {
  switch (s) {
    case ClassStatus::Proof: return "Proof";
    case ClassStatus::Manipulable: return "Manipulable";
    case ClassStatus::Unknown: return "Unknown";
  }
  return "?";
}

Classification classify_plurality(const ScoringProfile& x, int c, TieBreak tb) {
  if (c < 1) throw Error(ErrorCode::InvalidArgument, "c must be >= 1");
  require_two_way_tiebreak(tb);
  if (x.m() == 1) return degenerate_single_candidate();
  const ScoreStats st = stats(x.scores);
  const Score margin = unique_margin(st);

  if (c == 1) {
    if (tb == TieBreak::ForManipulators) {
      if (st.max - st.min <= 1) return {ClassStatus::Proof, "1a", true};
      if (margin >= 2) return {ClassStatus::Proof, "2", true};
    } else {
      if (st.all_equal) return {ClassStatus::Proof, "1b", true};
      if (margin >= 2) return {ClassStatus::Proof, "2", true};
      if (st.max_count == 1) return {ClassStatus::Proof, "3", true};
    }
    return {ClassStatus::Manipulable, "", true};
  }
  if (margin >= c + 1) return {ClassStatus::Proof, "coalition-margin", true};
  return {ClassStatus::Manipulable, "", true};
}

Classification classify_kapproval(const ScoringProfile& x, int k, int c, TieBreak tb) {
  if (c < 1) throw Error(ErrorCode::InvalidArgument, "c must be >= 1");
  require_two_way_tiebreak(tb);
  const int m = x.m();
  if (m == 1) return degenerate_single_candidate();
  if (k <= 1 || k >= m)
    throw Error(ErrorCode::InvalidArgument, "k-approval characterization needs 1 < k < m");
  const ScoreStats st = stats(x.scores);
  const Score margin = unique_margin(st);

  if (c == 1) {
    if (margin >= 2) return {ClassStatus::Proof, "1", true};
    if (st.all_equal && tb == TieBreak::ForManipulators)
      return {ClassStatus::Proof, "2", true};
    return {ClassStatus::Manipulable, "", true};
  }
  if (margin >= 2LL * c) return {ClassStatus::Proof, "coalition-margin", false};
  return {ClassStatus::Unknown, "", false};
}

Classification classify_veto(const ScoringProfile& x, int c, TieBreak tb) {
  if (c < 1) throw Error(ErrorCode::InvalidArgument, "c must be >= 1");
  require_two_way_tiebreak(tb);
  const int m = x.m();
  if (m == 1) return degenerate_single_candidate();
  const ScoreStats st = stats(x.scores);
  const Score margin = unique_margin(st);

  if (margin >= c + 1) return {ClassStatus::Proof, "1", false};
  // All-equal profiles: with tie-breaking for the manipulators, any
  // reachable winner the reference voter prefers is some member's
  // last-ranked candidate, so no deviation improves the whole coalition.
  // Against the manipulators this only survives for a single voter; a
  // coalition of two can already split its vetoes to steer the tie
  // (e.g. (-1,-1,-1,-1) with c = 2), so those profiles stay Unknown.
  if (c < m - 1 && st.all_equal &&
      (tb == TieBreak::ForManipulators || c == 1))
    return {ClassStatus::Proof, "2", false};
  return {ClassStatus::Unknown, "", false};
}

Classification classify_borda_sp(const ScoringProfile& x) {
  const int m = x.m();
  if (m == 1) return degenerate_single_candidate();
  const ScoreStats st = stats(x.scores);
  const Score margin = unique_margin(st);

  if (margin >= m) return {ClassStatus::Proof, "1", true};
  if (st.all_equal) return {ClassStatus::Proof, "2", true};
  // All but one tied at the max, loser exactly one below.
  if (st.max_count == m - 1 && st.min == st.max - 1)
    return {ClassStatus::Proof, "3", true};
  return {ClassStatus::Manipulable, "", true};
}

Classification classify(const ScoringProfile& x, const Rule& rule, int c, TieBreak tb) {
  switch (rule.kind) {
    case RuleKind::Plurality:
      return classify_plurality(x, c, tb);
    case RuleKind::Veto:
      return classify_veto(x, c, tb);
    case RuleKind::KApproval:
      return classify_kapproval(x, rule.k, c, tb);
    case RuleKind::Borda:
      if (c == 1) return classify_borda_sp(x);
      return {ClassStatus::Unknown, "", false};  // no Borda coalition characterization
  }
  throw Error(ErrorCode::InvalidArgument, "bad rule kind");
}

bool borda_sufficient_manipulable(const Profile& p, int l) {
  const long long n = p.n();
  const int m = p.m;
  if (l < 1) throw Error(ErrorCode::InvalidArgument, "l must be >= 1");
  if ((static_cast<long long>(l) - 1) * n >= m)
    throw Error(ErrorCode::OutOfRegime, "requires (l-1)*n < m");
  if (n == 0) return false;
  // Candidates present in the top l positions of every vote.
  std::vector<char> in_all(m, 1);
  for (const auto& v : p.votes) {
    std::vector<char> top(m, 0);
    for (int i = 0; i < std::min(l, m); ++i) top[v.order[i]] = 1;
    for (int cand = 0; cand < m; ++cand) in_all[cand] &= top[cand];
  }
  int count = 0;
  for (int cand = 0; cand < m; ++cand) count += in_all[cand];
  return count >= 2;
}

}  // namespace clab
