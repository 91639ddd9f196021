#include "sample.hpp"

#include <algorithm>

namespace clab {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream RngStream::from(std::uint64_t seed, std::uint64_t stream_id) {
  RngStream s;
  s.seed = seed;
  s.stream_id = stream_id;
  std::uint64_t sm = seed;
  std::uint64_t mixer = stream_id;
  sm ^= splitmix64(mixer);
  for (auto& w : s.state) w = splitmix64(sm);
  return s;
}

std::uint64_t RngStream::next() {
  // xoshiro256** by Blackman and Vigna.
  const std::uint64_t result = rotl(state[1] * 5, 7) * 9;
  const std::uint64_t t = state[1] << 17;
  state[2] ^= state[0];
  state[3] ^= state[1];
  state[1] ^= state[2];
  state[0] ^= state[3];
  state[2] ^= t;
  state[3] = rotl(state[3], 45);
  return result;
}

std::uint64_t RngStream::uniform(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidArgument, "uniform bound must be >= 1");
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

BigInt RngStream::uniform_big(const BigInt& bound) {
  if (bound <= 0) throw Error(ErrorCode::InvalidArgument, "uniform bound must be >= 1");
  if (bound <= BigInt(UINT64_MAX))
    return BigInt(uniform(static_cast<std::uint64_t>(bound)));
  unsigned bits = 0;
  BigInt b = bound - 1;
  while (b > 0) {
    ++bits;
    b >>= 1;
  }
  const unsigned words = (bits + 63) / 64;
  for (;;) {
    BigInt r = 0;
    for (unsigned i = 0; i < words; ++i) {
      r <<= 64;
      r += next();
    }
    r >>= (words * 64 - bits);
    if (r < bound) return r;
  }
}

RngStream spawn_stream(const RngStream& parent, std::uint64_t child_index) {
  std::uint64_t mixer = parent.stream_id ^ (child_index + 1) * 0x9E3779B97F4A7C15ULL;
  const std::uint64_t child_stream = splitmix64(mixer);
  return RngStream::from(parent.seed, child_stream);
}

std::string culture_name(Culture c) {
  return c == Culture::IC ? "ic" : "isc";
}

Culture culture_from_name(const std::string& s) {
  if (s == "ic") return Culture::IC;
  if (s == "isc") return Culture::ISC;
  throw Error(ErrorCode::InvalidArgument, "unknown culture: " + s);
}

Profile sample_ic(long long n, int m, RngStream& rng) {
  if (n < 0 || m < 1) throw Error(ErrorCode::InvalidArgument, "need n >= 0, m >= 1");
  Profile p;
  p.m = m;
  p.votes.reserve(static_cast<size_t>(n));
  for (long long v = 0; v < n; ++v) {
    std::vector<int> o(m);
    for (int i = 0; i < m; ++i) o[i] = i;
    for (int i = m - 1; i > 0; --i)
      std::swap(o[i], o[rng.uniform(static_cast<std::uint64_t>(i) + 1)]);
    Preference pref;
    pref.order = std::move(o);  // already a permutation, skip revalidation
    p.votes.push_back(std::move(pref));
  }
  return p;
}

IscSampler::IscSampler(const Rule& rule, long long n) : rule_(rule), n_(n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
  if (rule.kind == RuleKind::Borda)
    throw Error(ErrorCode::Unsupported, "no uniform scoring-profile sampler for Borda");
  // Veto draws a plurality composition and negates, so its DP is the
  // plurality one.
  const long long k = (rule.kind == RuleKind::Veto) ? 1 : rule.approval_k();
  target_ = n * k;
  dp_.assign(rule.m + 1, std::vector<BigInt>(static_cast<size_t>(target_) + 1, 0));
  dp_[0][0] = 1;
  for (int parts = 1; parts <= rule.m; ++parts)
    for (long long t = 0; t <= target_; ++t) {
      BigInt sum = 0;
      for (long long v = 0; v <= std::min(n, t); ++v) sum += dp_[parts - 1][t - v];
      dp_[parts][t] = sum;
    }
}

const BigInt& IscSampler::table(int parts, long long total) const {
  return dp_[parts][static_cast<size_t>(total)];
}

const BigInt& IscSampler::support_size() const {
  return dp_[rule_.m][static_cast<size_t>(target_)];
}

ScoringProfile IscSampler::draw(RngStream& rng) const {
  std::vector<Score> scores(rule_.m, 0);
  long long rem = target_;
  BigInt r = rng.uniform_big(support_size());
  for (int i = 0; i < rule_.m; ++i) {
    const int left = rule_.m - i - 1;
    for (long long v = 0; v <= std::min(n_, rem); ++v) {
      const BigInt& w = dp_[left][static_cast<size_t>(rem - v)];
      if (r < w) {
        scores[i] = v;
        rem -= v;
        break;
      }
      r -= w;
    }
  }
  if (rule_.kind == RuleKind::Veto)
    for (auto& s : scores) s = -s;
  return ScoringProfile(std::move(scores), n_);
}

ScoringProfile sample_isc(const Rule& rule, long long n, RngStream& rng) {
  return IscSampler(rule, n).draw(rng);
}

}  // namespace clab
