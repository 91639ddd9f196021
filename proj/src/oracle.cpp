#include "oracle.hpp"

#include <algorithm>

namespace clab {

namespace {

// Advances a non-decreasing index sequence (a multiset over [0, count)) in
// lexicographic order. Returns false after the last one.
bool next_multiset(std::vector<int>& idx, int count) {
  const int c = static_cast<int>(idx.size());
  for (int i = c - 1; i >= 0; --i) {
    if (idx[i] + 1 < count) {
      ++idx[i];
      for (int j = i + 1; j < c; ++j) idx[j] = idx[i];
      return true;
    }
  }
  return false;
}

std::vector<Preference> pick(const std::vector<Preference>& perms,
                             const std::vector<int>& idx) {
  std::vector<Preference> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(perms[i]);
  return out;
}

struct EvalCounter {
  unsigned long long used = 0;
  unsigned long long cap;
  explicit EvalCounter(unsigned long long c) : cap(c) {}
  // Returns false when the budget is exhausted.
  bool charge() {
    if (used >= cap) return false;
    ++used;
    return true;
  }
};

}  // namespace

std::vector<Preference> all_preferences(int m) {
  std::vector<int> o(m);
  for (int i = 0; i < m; ++i) o[i] = i;
  std::vector<Preference> out;
  do {
    out.push_back(Preference(o));
  } while (std::next_permutation(o.begin(), o.end()));
  return out;
}

OracleVerdict collusion_oracle(const ScoringProfile& x, const Rule& rule, int c,
                               TieBreak tb, const Budget& budget) {
  if (c < 1) throw Error(ErrorCode::InvalidArgument, "coalition size must be >= 1");
  if (x.m() != rule.m)
    throw Error(ErrorCode::InvalidArgument, "scoring profile size does not match rule");
  if (rule.m == 1) return OracleVerdict{VerdictStatus::Proof, std::nullopt, 0};

  const auto perms = all_preferences(rule.m);
  const int nperm = static_cast<int>(perms.size());
  const Preference fixed_ref = Preference::identity(rule.m);
  EvalCounter evals(budget.max_evaluations);

  for (int si = 0; si < nperm; ++si) {
    const Preference& sigma = perms[si];
    const Preference& ref = (tb == TieBreak::FixedOrder) ? fixed_ref : sigma;

    // Achievable winners over all deviation multisets, with the first
    // deviation (in lexicographic multiset order) that reaches each one.
    std::vector<int> achieved_order;  // winners in discovery order
    std::vector<std::vector<int>> first_dev(rule.m);
    std::vector<char> seen(rule.m, 0);
    {
      std::vector<int> dev(c, 0);
      do {
        if (!evals.charge())
          return OracleVerdict{VerdictStatus::BudgetExceeded, std::nullopt, evals.used};
        const int w = winner(add_votes(x, pick(perms, dev), rule), tb, ref);
        if (!seen[w]) {
          seen[w] = 1;
          achieved_order.push_back(w);
          first_dev[w] = dev;
        }
      } while (next_multiset(dev, nperm));
    }

    // Coalition truths with first member sigma; the tail is a multiset.
    std::vector<int> tail(c - 1, 0);
    do {
      std::vector<Preference> truths;
      truths.reserve(c);
      truths.push_back(sigma);
      for (int i : tail) truths.push_back(perms[i]);

      if (!evals.charge())
        return OracleVerdict{VerdictStatus::BudgetExceeded, std::nullopt, evals.used};
      const int w_truth = winner(add_votes(x, truths, rule), tb, ref);

      for (int w : achieved_order) {
        if (w == w_truth) continue;
        if (unanimously_prefers(truths, w, w_truth)) {
          Witness wit;
          wit.truths = truths;
          wit.deviation = pick(perms, first_dev[w]);
          wit.truthful_winner = w_truth;
          wit.deviated_winner = w;
          return OracleVerdict{VerdictStatus::Manipulable, std::move(wit), evals.used};
        }
      }
    } while (c > 1 && next_multiset(tail, nperm));
  }
  return OracleVerdict{VerdictStatus::Proof, std::nullopt, evals.used};
}

OracleVerdict strategyproof_oracle(const ScoringProfile& x, const Rule& rule,
                                   TieBreak tb, const Budget& budget) {
  return collusion_oracle(x, rule, 1, tb, budget);
}

std::vector<int> achievable_winners(const ScoringProfile& x, const Rule& rule, int c,
                                    const Preference& sigma_ref, TieBreak tb,
                                    const Budget& budget) {
  if (c < 1) throw Error(ErrorCode::InvalidArgument, "coalition size must be >= 1");
  if (rule.m == 1) return {0};
  const auto perms = all_preferences(rule.m);
  const int nperm = static_cast<int>(perms.size());
  const Preference fixed_ref = Preference::identity(rule.m);
  const Preference& ref = (tb == TieBreak::FixedOrder) ? fixed_ref : sigma_ref;
  EvalCounter evals(budget.max_evaluations);

  std::vector<char> seen(rule.m, 0);
  std::vector<int> dev(c, 0);
  do {
    if (!evals.charge())
      throw Error(ErrorCode::BudgetExceeded, "achievable_winners: budget exceeded");
    seen[winner(add_votes(x, pick(perms, dev), rule), tb, ref)] = 1;
  } while (next_multiset(dev, nperm));

  std::vector<int> out;
  for (int w = 0; w < rule.m; ++w)
    if (seen[w]) out.push_back(w);
  return out;
}

bool replay_witness(const ScoringProfile& x, const Rule& rule, TieBreak tb,
                    const Witness& w) {
  if (w.truths.empty() || w.truths.size() != w.deviation.size()) return false;
  const Preference ref =
      (tb == TieBreak::FixedOrder) ? Preference::identity(rule.m) : w.truths.front();
  const int wt = winner(add_votes(x, w.truths, rule), tb, ref);
  const int wd = winner(add_votes(x, w.deviation, rule), tb, ref);
  return wt == w.truthful_winner && wd == w.deviated_winner &&
         unanimously_prefers(w.truths, wd, wt);
}

}  // namespace clab
