#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "count.hpp"
#include "sample.hpp"

using namespace clab;

namespace {

// Independent reference implementation of the generator: splitmix64
// seeding followed by xoshiro256**, written out literally.
struct RefRng {
  std::uint64_t s[4];
  explicit RefRng(std::uint64_t seed, std::uint64_t stream) {
    auto mix = [](std::uint64_t& st) {
      std::uint64_t z = (st += 0x9E3779B97F4A7C15ULL);
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      return z ^ (z >> 31);
    };
    std::uint64_t sm = seed ^ mix(stream);
    for (auto& w : s) w = mix(sm);
  }
  std::uint64_t next() {
    auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
  }
};

// Upper-tail p-value of a chi-square statistic.
double chi2_pvalue(double stat, int dof) {
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

double chi2_stat(const std::vector<long long>& observed, double expected) {
  double stat = 0.0;
  for (long long o : observed) {
    const double d = static_cast<double>(o) - expected;
    stat += d * d / expected;
  }
  return stat;
}

}  // namespace

TEST_CASE("generator test vectors") {
  struct Vec {
    std::uint64_t seed, stream;
    std::uint64_t first5[5];
  };
  const Vec vectors[] = {
      {42, 0, {2303456275738999573ULL, 5438210688795116325ULL, 10433286269970717030ULL,
               11285640936736227471ULL, 8727968146348237200ULL}},
      {42, 1, {6361458328680127711ULL, 2631838692071214148ULL, 13221152241774850206ULL,
               4150474096137592771ULL, 1250501227627954357ULL}},
      {1, 7, {11267009516587750391ULL, 8506319691436970989ULL, 13635460078374679377ULL,
              10329196443169813125ULL, 16379045017238396896ULL}},
      {0, 0, {18110106563157542208ULL, 8650457082529208451ULL, 3032169436225125478ULL,
              5211024849135804362ULL, 3138158484029544281ULL}},
  };
  for (const auto& v : vectors) {
    RngStream s = RngStream::from(v.seed, v.stream);
    RefRng ref(v.seed, v.stream);
    for (std::uint64_t expected : v.first5) {
      CHECK(s.next() == expected);
      CHECK(ref.next() == expected);
    }
    // Longer agreement run against the independent implementation.
    for (int i = 0; i < 1000; ++i) CHECK(s.next() == ref.next());
  }
}

TEST_CASE("uniform rejects zero bound and respects range") {
  RngStream s = RngStream::from(3, 3);
  CHECK_THROWS_AS(s.uniform(0), Error);
  for (int i = 0; i < 1000; ++i) CHECK(s.uniform(7) < 7);
  CHECK(s.uniform(1) == 0);
  const BigInt big = BigInt(1) << 100;
  for (int i = 0; i < 50; ++i) {
    const BigInt r = s.uniform_big(big);
    CHECK(r >= 0);
    CHECK(r < big);
  }
}

TEST_CASE("spawned streams are pure and distinct") {
  const RngStream parent = RngStream::from(42, 0);
  RngStream a = spawn_stream(parent, 0);
  RngStream b = spawn_stream(parent, 0);
  RngStream c = spawn_stream(parent, 1);
  CHECK(a.stream_id == b.stream_id);
  CHECK(a.next() == 1485548216175460757ULL);
  CHECK(b.next() == 1485548216175460757ULL);
  CHECK(c.next() == 10123097457795776554ULL);
  CHECK(a.stream_id != c.stream_id);
}

TEST_CASE("sample_ic determinism and trivial cases") {
  RngStream r1 = RngStream::from(9, 4);
  RngStream r2 = RngStream::from(9, 4);
  const Profile p1 = sample_ic(5, 4, r1);
  const Profile p2 = sample_ic(5, 4, r2);
  REQUIRE(p1.votes.size() == 5);
  for (size_t i = 0; i < 5; ++i) CHECK(p1.votes[i].order == p2.votes[i].order);

  RngStream r3 = RngStream::from(9, 4);
  const Profile trivial = sample_ic(3, 1, r3);
  for (const auto& v : trivial.votes) CHECK(v.order == std::vector<int>{0});
}

TEST_CASE("sample_ic uniformity, m=4, n=1") {
  RngStream rng = RngStream::from(20240817, 0);
  std::map<std::vector<int>, long long> counts;
  const int trials = 240000;
  for (int i = 0; i < trials; ++i)
    ++counts[sample_ic(1, 4, rng).votes[0].order];
  REQUIRE(counts.size() == 24);
  std::vector<long long> observed;
  for (const auto& [perm, cnt] : counts) observed.push_back(cnt);
  const double p = chi2_pvalue(chi2_stat(observed, trials / 24.0), 23);
  CHECK(p > 0.01);
}

TEST_CASE("isc sampler support and normalizer") {
  for (int m = 2; m <= 4; ++m)
    for (long long n = 1; n <= 3; ++n) {
      std::vector<Rule> rules{Rule::plurality(m), Rule::veto(m)};
      if (m >= 3) rules.push_back(Rule::kapproval(2, m));
      for (const Rule& rule : rules) {
        IscSampler sampler(rule, n);
        CHECK(sampler.support_size() == count_scoring_profiles(rule, n));
        std::set<std::vector<Score>> support;
        enumerate_scoring_profiles(rule, n, [&](const ScoringProfile& x) {
          support.insert(x.scores);
        });
        RngStream rng = RngStream::from(7, static_cast<std::uint64_t>(m * 10 + n));
        for (int i = 0; i < 200; ++i) {
          const auto x = sampler.draw(rng);
          CHECK(support.count(x.scores) == 1);
          check_scoring_profile(x, rule);
        }
      }
    }
  RngStream rng = RngStream::from(0, 0);
  CHECK_THROWS_AS(sample_isc(Rule::borda(3), 2, rng), Error);
}

TEST_CASE("isc uniformity, plurality n=4 m=3") {
  const Rule rule = Rule::plurality(3);
  IscSampler sampler(rule, 4);
  REQUIRE(sampler.support_size() == 15);
  RngStream rng = RngStream::from(123, 1);
  std::map<std::vector<Score>, long long> counts;
  const int trials = 150000;
  for (int i = 0; i < trials; ++i) ++counts[sampler.draw(rng).scores];
  REQUIRE(counts.size() == 15);
  std::vector<long long> observed;
  for (const auto& [scores, cnt] : counts) observed.push_back(cnt);
  CHECK(chi2_pvalue(chi2_stat(observed, trials / 15.0), 14) > 0.01);
}

TEST_CASE("isc uniformity, 2-approval n=2 m=3") {
  const Rule rule = Rule::kapproval(2, 3);
  IscSampler sampler(rule, 2);
  REQUIRE(sampler.support_size() == 6);
  RngStream rng = RngStream::from(5, 2);
  std::map<std::vector<Score>, long long> counts;
  const int trials = 60000;
  for (int i = 0; i < trials; ++i) ++counts[sampler.draw(rng).scores];
  REQUIRE(counts.size() == 6);
  std::vector<long long> observed;
  for (const auto& [scores, cnt] : counts) observed.push_back(cnt);
  CHECK(chi2_pvalue(chi2_stat(observed, trials / 6.0), 5) > 0.01);
}

TEST_CASE("isc uniformity, veto n=3 m=3") {
  const Rule rule = Rule::veto(3);
  IscSampler sampler(rule, 3);
  REQUIRE(sampler.support_size() == 10);
  RngStream rng = RngStream::from(77, 0);
  std::map<std::vector<Score>, long long> counts;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    const auto x = sampler.draw(rng);
    for (Score s : x.scores) CHECK(s <= 0);
    ++counts[x.scores];
  }
  REQUIRE(counts.size() == 10);
  std::vector<long long> observed;
  for (const auto& [scores, cnt] : counts) observed.push_back(cnt);
  CHECK(chi2_pvalue(chi2_stat(observed, trials / 10.0), 9) > 0.01);
}

TEST_CASE("veto n=1 m=2 two-point distribution") {
  RngStream rng = RngStream::from(99, 0);
  IscSampler sampler(Rule::veto(2), 1);
  long long first = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) {
    const auto x = sampler.draw(rng);
    const bool a = x.scores == std::vector<Score>{0, -1};
    const bool b = x.scores == std::vector<Score>{-1, 0};
    CHECK((a || b));
    if (a) ++first;
  }
  CHECK(chi2_pvalue(chi2_stat({first, trials - first}, trials / 2.0), 1) > 0.01);
}
