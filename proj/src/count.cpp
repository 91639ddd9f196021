#include "count.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

#include "oracle.hpp"

namespace clab {

BigInt binom(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

BigInt factorial(long long n) {
  BigInt r = 1;
  for (long long i = 2; i <= n; ++i) r *= i;
  return r;
}

namespace {

// Coefficient of x^target in (1 + x + ... + x^cap)^parts.
BigInt bounded_composition_count(long long parts, long long cap, long long target) {
  if (target < 0) return 0;
  std::vector<BigInt> dp(static_cast<size_t>(target) + 1, 0);
  dp[0] = 1;
  for (long long p = 0; p < parts; ++p) {
    std::vector<BigInt> next(dp.size(), 0);
    // prefix[t] = sum_{s=max(0,t-cap)}^{t} dp[s], via sliding window
    BigInt window = 0;
    for (long long t = 0; t <= target; ++t) {
      window += dp[static_cast<size_t>(t)];
      if (t - cap - 1 >= 0) window -= dp[static_cast<size_t>(t - cap - 1)];
      next[static_cast<size_t>(t)] = window;
    }
    dp.swap(next);
  }
  return dp[static_cast<size_t>(target)];
}

long long rule_target(const Rule& rule, long long n) {
  return n * static_cast<long long>(rule.approval_k());
}

}  // namespace

BigInt count_scoring_profiles(const Rule& rule, long long n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
  if (rule.kind == RuleKind::Borda)
    throw Error(ErrorCode::Unsupported, "no closed count for Borda scoring profiles");
  return bounded_composition_count(rule.m, n, rule_target(rule, n));
}

BigInt paper_kapproval_formula(long long n, int k, int m) {
  BigInt sum = 0;
  for (int i = 0; i <= k; ++i) {
    const BigInt term = binom(n * (k - i) + m - 1, m - 1);
    sum += (i % 2 == 0) ? term : -term;
  }
  return sum;
}

BigInt count_almost_equal(const Rule& rule, long long n) {
  if (rule.kind != RuleKind::Plurality && rule.kind != RuleKind::Veto)
    throw Error(ErrorCode::Unsupported, "almost-equal count covers plurality and veto only");
  if (n < 1 || rule.m <= n)
    throw Error(ErrorCode::OutOfRegime, "almost-equal count needs m > n >= 1");
  return binom(rule.m, n);
}

BigInt count_F_kapproval(long long n, int k, int m) {
  if (k < 1 || n < 1 || static_cast<long long>(m) < n * k)
    throw Error(ErrorCode::OutOfRegime, "needs m >= n*k >= 1");
  BigInt r = factorial(m);
  const BigInt f = factorial(m - k);
  for (long long i = 0; i < n; ++i) r *= f;
  r /= factorial(m - n * k);
  return r;
}

std::string bound_id_name(BoundId id) {
  switch (id) {
    case BoundId::PluralityCP: return "plurality-cp";
    case BoundId::PluralityE: return "plurality-e";
    case BoundId::KApprovalF: return "kapproval-f";
    case BoundId::VetoE: return "veto-e";
    case BoundId::VetoF: return "veto-f";
    case BoundId::VetoCP: return "veto-cp";
    case BoundId::BordaLimit: return "borda-limit";
  }
  return "?";
}

BoundId bound_id_from_name(const std::string& s) {
  for (BoundId id : {BoundId::PluralityCP, BoundId::PluralityE, BoundId::KApprovalF,
                     BoundId::VetoE, BoundId::VetoF, BoundId::VetoCP, BoundId::BordaLimit})
    if (bound_id_name(id) == s) return id;
  throw Error(ErrorCode::InvalidArgument, "unknown bound id: " + s);
}

namespace {

BigRat rational_power(const BigRat& base, long long e) {
  BigRat r = 1;
  for (long long i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

BoundValue bound_value(const BoundSpec& spec) {
  BoundValue out;
  const long long n = spec.n;
  const long long m = spec.m;
  const long long c = spec.c;
  const long long k = spec.k;
  switch (spec.id) {
    case BoundId::PluralityCP: {
      if (m < 1 || c < 1 || n <= c)
        throw Error(ErrorCode::OutOfRegime, "plurality-cp bound needs n > c >= 1");
      out.value = rational_power(BigRat(n - c, n + 1), m - 1);
      break;
    }
    case BoundId::PluralityE:
    case BoundId::VetoE:
    case BoundId::VetoF: {
      if (n < 1 || m <= n)
        throw Error(ErrorCode::OutOfRegime, "bound needs m > n >= 1");
      out.value = rational_power(BigRat(m - n + 1, m), n);
      break;
    }
    case BoundId::KApprovalF: {
      if (n < 1 || k < 1 || m < n * k)
        throw Error(ErrorCode::OutOfRegime, "kapproval-f bound needs m >= n*k");
      out.value = rational_power(BigRat(m - n * k + 1, m), n * k);
      break;
    }
    case BoundId::VetoCP: {
      const long long e = (c + 1) * (m - 1);
      const long long den = m * n - e;
      if (c < 1 || m < 2 || den <= 0)
        throw Error(ErrorCode::OutOfRegime, "veto-cp bound needs m*n > (c+1)(m-1)");
      const long long num = n - e + 1;
      if (num <= 0) {
        out.value = 0;
        out.clamped = true;
      } else {
        out.value = rational_power(BigRat(num, den), e);
      }
      break;
    }
    case BoundId::BordaLimit: {
      if (n < 1) throw Error(ErrorCode::OutOfRegime, "borda-limit needs n >= 1");
      out.is_float = true;
      const double t = std::pow(spec.lambda, static_cast<double>(n));
      out.float_value = 1.0 - (1.0 + t) * std::exp(-t);
      break;
    }
  }
  return out;
}

std::pair<BigInt, BigInt> at_least_two_cover_count(const std::vector<std::set<int>>& sets) {
  const int nsets = static_cast<int>(sets.size());
  if (nsets > 20) throw Error(ErrorCode::TooLarge, "at most 20 sets supported");
  // Dense-relabel the universe into bit positions.
  std::map<int, int> index;
  for (const auto& s : sets)
    for (int e : s)
      if (!index.count(e)) {
        const int next = static_cast<int>(index.size());
        if (next >= 64) throw Error(ErrorCode::TooLarge, "universe larger than 64 elements");
        index[e] = next;
      }
  std::vector<std::uint64_t> masks(nsets, 0);
  for (int i = 0; i < nsets; ++i)
    for (int e : sets[i]) masks[i] |= (std::uint64_t{1} << index[e]);

  // Brute: membership counts.
  BigInt brute = 0;
  for (const auto& [elem, bit] : index) {
    int cnt = 0;
    for (int i = 0; i < nsets; ++i)
      if (masks[i] >> bit & 1) ++cnt;
    if (cnt >= 2) ++brute;
  }

  // Alternating intersection sum.
  BigInt formula = 0;
  for (std::uint32_t sub = 1; sub < (1u << nsets); ++sub) {
    const int r = __builtin_popcount(sub);
    if (r < 2) continue;
    std::uint64_t inter = ~std::uint64_t{0};
    for (int i = 0; i < nsets; ++i)
      if (sub >> i & 1) inter &= masks[i];
    const int card = __builtin_popcountll(inter & ((index.size() == 64)
                                                       ? ~std::uint64_t{0}
                                                       : ((std::uint64_t{1} << index.size()) - 1)));
    const long long coef = (r % 2 == 0 ? 1 : -1) * static_cast<long long>(r - 1);
    formula += coef * card;
  }
  return {brute, formula};
}

std::pair<BigInt, BigInt> series_identity_check(int l) {
  if (l < 3) throw Error(ErrorCode::OutOfRegime, "needs l >= 3");
  const BigInt lhs = 1 - (l % 2 == 0 ? 1 : -1) * BigInt(l - 1);
  BigInt rhs = 0;
  for (int i = 2; i <= l - 1; ++i) {
    const BigInt term = BigInt(i - 1) * binom(l, i);
    rhs += (i % 2 == 0) ? term : -term;
  }
  return {lhs, rhs};
}

double exp_partial_sum(double x, int terms) {
  if (terms < 2) throw Error(ErrorCode::InvalidArgument, "needs terms >= 2");
  double sum = 0.0;
  double pow_over_fact = x;  // x^i / i!, starting at i = 1
  for (int i = 2; i <= terms; ++i) {
    pow_over_fact *= x / i;
    const double term = (i - 1) * pow_over_fact;
    sum += (i % 2 == 0) ? term : -term;
  }
  return sum;
}

namespace {

void enumerate_compositions(int m, long long cap, long long target,
                            std::vector<Score>& cur,
                            const std::function<void(const std::vector<Score>&)>& emit) {
  const int idx = static_cast<int>(cur.size());
  if (idx == m - 1) {
    if (target >= 0 && target <= cap) {
      cur.push_back(target);
      emit(cur);
      cur.pop_back();
    }
    return;
  }
  const long long hi = std::min(cap, target);
  for (long long v = 0; v <= hi; ++v) {
    cur.push_back(v);
    enumerate_compositions(m, cap, target - v, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

void enumerate_scoring_profiles(const Rule& rule, long long n,
                                const std::function<void(const ScoringProfile&)>& fn) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
  const int m = rule.m;

  if (rule.kind == RuleKind::Borda) {
    double profiles = 1;
    for (int i = 2; i <= m; ++i) profiles *= i;
    profiles = std::pow(profiles, static_cast<double>(n));
    if (profiles > 1e8)
      throw Error(ErrorCode::TooLarge, "Borda enumeration guard: (m!)^n > 1e8");
    const auto perms = all_preferences(m);
    std::set<std::vector<Score>> seen;
    // Tallies are order-invariant, so multisets of votes suffice.
    std::vector<int> idx(static_cast<size_t>(n), 0);
    const int nperm = static_cast<int>(perms.size());
    while (true) {
      Profile p;
      p.m = m;
      for (int i : idx) p.votes.push_back(perms[i]);
      seen.insert(tally(p, rule).scores);
      // next non-decreasing index sequence
      int pos = static_cast<int>(idx.size()) - 1;
      while (pos >= 0 && idx[pos] + 1 >= nperm) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (size_t j = pos + 1; j < idx.size(); ++j) idx[j] = idx[pos];
    }
    for (const auto& s : seen) fn(ScoringProfile(std::vector<Score>(s), n));
    return;
  }

  const BigInt total = count_scoring_profiles(rule, n);
  if (total > 100'000'000)
    throw Error(ErrorCode::TooLarge, "enumeration guard: |S^n([m])| > 1e8");
  const long long target = n * static_cast<long long>(rule.approval_k());
  const bool negate = (rule.kind == RuleKind::Veto);
  std::vector<Score> cur;
  enumerate_compositions(m, n, negate ? n : target, cur,
                         [&](const std::vector<Score>& comp) {
                           std::vector<Score> s = comp;
                           if (negate)
                             for (auto& v : s) v = -v;
                           fn(ScoringProfile(std::move(s), n));
                         });
}

std::vector<ScoringProfile> collect_scoring_profiles(const Rule& rule, long long n) {
  std::vector<ScoringProfile> out;
  enumerate_scoring_profiles(rule, n, [&](const ScoringProfile& x) { out.push_back(x); });
  return out;
}

}  // namespace clab
