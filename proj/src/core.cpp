#include "core.hpp"

#include <algorithm>
#include <numeric>

namespace clab {

Preference::Preference(std::vector<int> o) : order(std::move(o)) {
  const int mm = static_cast<int>(order.size());
  if (mm < 1) throw Error(ErrorCode::InvalidArgument, "preference must rank at least one candidate");
  std::vector<char> seen(mm, 0);
  for (int c : order) {
    if (c < 0 || c >= mm || seen[c])
      throw Error(ErrorCode::InvalidArgument, "preference is not a permutation of 0..m-1");
    seen[c] = 1;
  }
}

int Preference::rank_of(int c) const {
  for (int i = 0; i < m(); ++i)
    if (order[i] == c) return i;
  throw Error(ErrorCode::InvalidArgument, "candidate out of range");
}

Preference Preference::identity(int m) {
  std::vector<int> o(m);
  std::iota(o.begin(), o.end(), 0);
  return Preference(std::move(o));
}

Profile::Profile(std::vector<Preference> v, int m_) : votes(std::move(v)), m(m_) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "profile needs m >= 1");
  for (const auto& p : votes)
    if (p.m() != m) throw Error(ErrorCode::InvalidArgument, "all votes must share the same m");
}

Rule Rule::plurality(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  return Rule{RuleKind::Plurality, m, 1};
}

Rule Rule::veto(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  return Rule{RuleKind::Veto, m, m - 1};
}

Rule Rule::kapproval(int k, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  if (k < 1 || k > m - 1)
    throw Error(ErrorCode::InvalidArgument, "k-approval needs 1 <= k <= m-1");
  return Rule{RuleKind::KApproval, m, k};
}

Rule Rule::borda(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  return Rule{RuleKind::Borda, m, 0};
}

std::vector<Score> Rule::alpha() const {
  std::vector<Score> a(m, 0);
  switch (kind) {
    case RuleKind::Plurality:
      a[0] = 1;
      break;
    case RuleKind::Veto:
      a[m - 1] = -1;
      break;
    case RuleKind::KApproval:
      for (int i = 0; i < k; ++i) a[i] = 1;
      break;
    case RuleKind::Borda:
      for (int i = 0; i < m; ++i) a[i] = m - 1 - i;
      break;
  }
  return a;
}

int Rule::approval_k() const {
  switch (kind) {
    case RuleKind::Plurality: return 1;
    case RuleKind::Veto: return m - 1;
    case RuleKind::KApproval: return k;
    case RuleKind::Borda:
      throw Error(ErrorCode::Unsupported, "Borda is not an approval rule");
  }
  throw Error(ErrorCode::InvalidArgument, "bad rule kind");
}

std::string Rule::name() const {
  switch (kind) {
    case RuleKind::Plurality: return "plurality";
    case RuleKind::Veto: return "veto";
    case RuleKind::KApproval: return "kapproval";
    case RuleKind::Borda: return "borda";
  }
  return "?";
}

std::string tiebreak_name(TieBreak tb) {
  switch (tb) {
    case TieBreak::ForManipulators: return "for";
    case TieBreak::AgainstManipulators: return "against";
    case TieBreak::FixedOrder: return "fixed";
  }
  return "?";
}

TieBreak tiebreak_from_name(const std::string& s) {
  if (s == "for") return TieBreak::ForManipulators;
  if (s == "against") return TieBreak::AgainstManipulators;
  if (s == "fixed") return TieBreak::FixedOrder;
  throw Error(ErrorCode::InvalidArgument, "unknown tie-break: " + s);
}

Rule rule_from_name(const std::string& s, int k, int m) {
  if (s == "plurality") return Rule::plurality(m);
  if (s == "veto") return Rule::veto(m);
  if (s == "kapproval") return Rule::kapproval(k, m);
  if (s == "borda") return Rule::borda(m);
  throw Error(ErrorCode::InvalidArgument, "unknown rule: " + s);
}

void check_scoring_profile(const ScoringProfile& x, const Rule& rule) {
  if (x.m() != rule.m)
    throw Error(ErrorCode::InvalidArgument, "scoring profile size does not match rule");
  if (x.n < 0) throw Error(ErrorCode::InvalidArgument, "voter count must be >= 0");
  const auto a = rule.alpha();
  const Score per_vote = std::accumulate(a.begin(), a.end(), Score{0});
  const Score total = std::accumulate(x.scores.begin(), x.scores.end(), Score{0});
  if (total != x.n * per_vote)
    throw Error(ErrorCode::InvalidArgument, "scores do not sum to n * sum(alpha)");
  const Score lo = x.n * a.back();
  const Score hi = x.n * a.front();
  for (Score s : x.scores)
    if (s < lo || s > hi)
      throw Error(ErrorCode::InvalidArgument, "score outside [n*alpha_m, n*alpha_1]");
}

ScoringProfile tally(const Profile& profile, const Rule& rule) {
  if (profile.m != rule.m)
    throw Error(ErrorCode::InvalidArgument, "profile m does not match rule m");
  const auto a = rule.alpha();
  std::vector<Score> scores(rule.m, 0);
  for (const auto& p : profile.votes)
    for (int pos = 0; pos < rule.m; ++pos) scores[p.order[pos]] += a[pos];
  return ScoringProfile(std::move(scores), profile.n());
}

ScoringProfile add_votes(const ScoringProfile& x, const std::vector<Preference>& votes,
                         const Rule& rule) {
  const auto a = rule.alpha();
  ScoringProfile out = x;
  for (const auto& p : votes)
    for (int pos = 0; pos < rule.m; ++pos) out.scores[p.order[pos]] += a[pos];
  out.n += static_cast<long long>(votes.size());
  return out;
}

int winner(const std::vector<Score>& scores, TieBreak tb, const Preference& ref) {
  const int m = static_cast<int>(scores.size());
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "empty score vector");
  if (ref.m() != m)
    throw Error(ErrorCode::InvalidArgument, "reference order size mismatch");
  const Score top = *std::max_element(scores.begin(), scores.end());
  // Walk the reference order; among argmax candidates, For/FixedOrder pick
  // the best-ranked, Against the worst-ranked.
  if (tb == TieBreak::AgainstManipulators) {
    for (int i = m - 1; i >= 0; --i)
      if (scores[ref.order[i]] == top) return ref.order[i];
  } else {
    for (int i = 0; i < m; ++i)
      if (scores[ref.order[i]] == top) return ref.order[i];
  }
  throw Error(ErrorCode::InvalidArgument, "unreachable");
}

bool unanimously_prefers(const std::vector<Preference>& truths, int a, int b) {
  if (a == b) return false;
  for (const auto& p : truths)
    if (!p.prefers(a, b)) return false;
  return true;
}

}  // namespace clab
