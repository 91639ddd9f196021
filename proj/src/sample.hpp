#pragma once

#include <array>
#include <cstdint>

#include "core.hpp"
#include "count.hpp"

namespace clab {

// Deterministic cross-platform RNG: xoshiro256** seeded from
// (seed, stream_id) via splitmix64. The (seed, stream_id) pair fully
// determines the output sequence; test vectors live in
// tests/test_sample.cpp and the README.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::array<std::uint64_t, 4> state{};

  static RngStream from(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next();

  // Uniform in [0, bound) by rejection (no modulo bias). bound >= 1.
  std::uint64_t uniform(std::uint64_t bound);

  // Uniform in [0, bound) for arbitrary-precision bounds.
  BigInt uniform_big(const BigInt& bound);
};

std::uint64_t splitmix64(std::uint64_t& state);

// Statistically independent substream, a pure function of
// (parent.seed, parent.stream_id, child_index).
RngStream spawn_stream(const RngStream& parent, std::uint64_t child_index);

enum class Culture { IC, ISC };

std::string culture_name(Culture c);
Culture culture_from_name(const std::string& s);

// n independent uniform permutations (Fisher-Yates).
Profile sample_ic(long long n, int m, RngStream& rng);

// Uniform over S^n([m]) by sequential conditional sampling with exact
// integer DP weights. Supported for plurality, veto (negated plurality)
// and k-approval; Borda is rejected.
ScoringProfile sample_isc(const Rule& rule, long long n, RngStream& rng);

// Precomputed DP table for repeated ISC draws with one (rule, n).
class IscSampler {
 public:
  IscSampler(const Rule& rule, long long n);
  ScoringProfile draw(RngStream& rng) const;
  // Number of vectors with `parts` entries in [0, n] summing to `total`.
  const BigInt& table(int parts, long long total) const;
  const BigInt& support_size() const;

 private:
  Rule rule_;
  long long n_;
  long long target_;
  std::vector<std::vector<BigInt>> dp_;  // dp_[parts][total]
};

}  // namespace clab
