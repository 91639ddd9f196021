#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "count.hpp"
#include "naive_oracle.hpp"
#include "oracle.hpp"

using namespace clab;

TEST_CASE("plurality spec cases") {
  const Rule r3 = Rule::plurality(3);
  // (8,2,2) with 12 voters survives a coalition of 5 but not 6.
  for (TieBreak tb : {TieBreak::ForManipulators, TieBreak::AgainstManipulators}) {
    CHECK(collusion_oracle(ScoringProfile({8, 2, 2}, 12), r3, 5, tb).status ==
          VerdictStatus::Proof);
  }
  CHECK(collusion_oracle(ScoringProfile({8, 2, 2}, 12), r3, 6,
                         TieBreak::ForManipulators).status == VerdictStatus::Manipulable);
  CHECK(strategyproof_oracle(ScoringProfile({1, 1, 0}, 2), r3,
                             TieBreak::ForManipulators).status == VerdictStatus::Proof);
  CHECK(strategyproof_oracle(ScoringProfile({1, 1, 1}, 3), r3,
                             TieBreak::AgainstManipulators).status == VerdictStatus::Proof);

  // (2,2,0): with the favorable tie-break the sole voter already gets the
  // best tied leader truthfully, so only the adversarial tie-break admits a
  // manipulation (truth c>a>b gains by voting a).
  CHECK(strategyproof_oracle(ScoringProfile({2, 2, 0}, 4), r3,
                             TieBreak::ForManipulators).status == VerdictStatus::Proof);
  CHECK(strategyproof_oracle(ScoringProfile({2, 2, 0}, 4), r3,
                             TieBreak::AgainstManipulators).status ==
        VerdictStatus::Manipulable);
}

TEST_CASE("borda margin >= m is proof") {
  CHECK(strategyproof_oracle(ScoringProfile({9, 3, 6}, 6), Rule::borda(3),
                             TieBreak::ForManipulators).status == VerdictStatus::Proof);
}

TEST_CASE("achievable winners") {
  const Rule r3 = Rule::plurality(3);
  const auto big = achievable_winners(ScoringProfile({8, 2, 2}, 12), r3, 1,
                                      Preference::identity(3), TieBreak::ForManipulators);
  CHECK(big == std::vector<int>{0});

  // (1,1,0), one manipulator, reference c>b>a: every candidate reachable.
  const auto all = achievable_winners(ScoringProfile({1, 1, 0}, 2), r3, 1,
                                      Preference({2, 1, 0}), TieBreak::ForManipulators);
  CHECK(all == std::vector<int>{0, 1, 2});

  CHECK(achievable_winners(ScoringProfile({0}, 0), Rule::plurality(1), 1,
                           Preference::identity(1), TieBreak::ForManipulators) ==
        std::vector<int>{0});
}

TEST_CASE("witness replays and validates") {
  const Rule r3 = Rule::plurality(3);
  const auto v = strategyproof_oracle(ScoringProfile({2, 2, 0}, 4), r3,
                                      TieBreak::AgainstManipulators);
  REQUIRE(v.status == VerdictStatus::Manipulable);
  REQUIRE(v.witness.has_value());
  CHECK(replay_witness(ScoringProfile({2, 2, 0}, 4), r3, TieBreak::AgainstManipulators,
                       *v.witness));
}

TEST_CASE("budget exhaustion reported") {
  const auto v = collusion_oracle(ScoringProfile({2, 2, 0}, 4), Rule::plurality(3), 2,
                                  TieBreak::ForManipulators, Budget{10});
  CHECK(v.status == VerdictStatus::BudgetExceeded);
  CHECK(v.evaluations == 10);
}

TEST_CASE("grouped enumeration agrees with the literal quantifier loop") {
  // All rules, m <= 3, c <= 2, both tie-breaks, every scoring profile of
  // small electorates.
  for (int m = 1; m <= 3; ++m) {
    std::vector<Rule> rules{Rule::plurality(m)};
    if (m >= 2) rules.push_back(Rule::veto(m));
    if (m >= 3) rules.push_back(Rule::kapproval(2, m));
    if (m >= 2) rules.push_back(Rule::borda(m));
    for (const Rule& rule : rules)
      for (long long n = 0; n <= 2; ++n)
        for (int c = 1; c <= 2; ++c)
          for (TieBreak tb : {TieBreak::ForManipulators, TieBreak::AgainstManipulators})
            enumerate_scoring_profiles(rule, n, [&](const ScoringProfile& x) {
              const auto fast = collusion_oracle(x, rule, c, tb);
              const auto naive = testing::naive_collusion_status(x, rule, c, tb);
              CHECK(fast.status == naive);
              if (fast.status == VerdictStatus::Manipulable)
                CHECK(replay_witness(x, rule, tb, *fast.witness));
            });
  }
}

TEST_CASE("manipulability is not monotone in coalition size") {
  // A larger coalition must improve unanimously, which can be strictly
  // harder: (1,1,0) falls to a single strategic voter under the adversarial
  // tie-break, yet any pair of extra voters leaves one of them with their
  // top choice winning, so no joint deviation helps both.
  const Rule rule = Rule::plurality(3);
  const ScoringProfile x({1, 1, 0}, 2);
  CHECK(collusion_oracle(x, rule, 1, TieBreak::AgainstManipulators).status ==
        VerdictStatus::Manipulable);
  CHECK(collusion_oracle(x, rule, 2, TieBreak::AgainstManipulators).status ==
        VerdictStatus::Proof);
  CHECK(testing::naive_collusion_status(x, rule, 2, TieBreak::AgainstManipulators) ==
        VerdictStatus::Proof);
}

TEST_CASE("oracle status is label-neutral") {
  const Rule rule = Rule::plurality(3);
  enumerate_scoring_profiles(rule, 3, [&](const ScoringProfile& x) {
    std::vector<Score> rot{x.scores[1], x.scores[2], x.scores[0]};
    const ScoringProfile y(std::move(rot), x.n);
    for (TieBreak tb : {TieBreak::ForManipulators, TieBreak::AgainstManipulators})
      CHECK(collusion_oracle(x, rule, 1, tb).status ==
            collusion_oracle(y, rule, 1, tb).status);
  });
}
