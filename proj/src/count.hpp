#pragma once

#include <functional>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "core.hpp"

namespace clab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// C(n, k) with arbitrary precision; 0 for k < 0, k > n, or negative n.
BigInt binom(long long n, long long k);

BigInt factorial(long long n);

// |S^n([m])|: number of achievable score vectors. Computed by DP
// coefficient extraction over (1+x+...+x^n)^m restricted to total nk
// (k = 1 for plurality, m-1 for veto, which both reduce to the
// stars-and-bars count C(n+m-1, m-1)). Borda is unsupported.
BigInt count_scoring_profiles(const Rule& rule, long long n);

// The printed inclusion-exclusion style summation
// sum_{i=0}^k (-1)^i C(n(k-i)+m-1, m-1), kept verbatim for the audit
// report; it disagrees with direct enumeration on small cases.
BigInt paper_kapproval_formula(long long n, int k, int m);

// |E^n([m])| = C(m, n) for plurality and veto, m > n >= 1.
BigInt count_almost_equal(const Rule& rule, long long n);

// |F^n([m])| = m! ((m-k)!)^n / (m-nk)! for k-approval, m >= nk >= 1.
BigInt count_F_kapproval(long long n, int k, int m);

enum class BoundId { PluralityCP, PluralityE, KApprovalF, VetoE, VetoF, VetoCP, BordaLimit };

std::string bound_id_name(BoundId id);
BoundId bound_id_from_name(const std::string& s);

struct BoundSpec {
  BoundId id = BoundId::PluralityCP;
  long long n = 0;
  int m = 0;
  int c = 1;
  int k = 2;
  double lambda = 1.0;  // BordaLimit only
};

struct BoundValue {
  BigRat value;          // exact, except BordaLimit
  bool is_float = false;  // BordaLimit evaluates in double
  double float_value = 0.0;
  bool clamped = false;  // raw expression was negative and clamped to 0
};

// Exact-rational instantiation of the theorem lower bounds; BordaLimit
// is 1 - (1 + lambda^n) e^{-lambda^n} in double precision.
BoundValue bound_value(const BoundSpec& spec);

// Number of universe elements present in at least two of the sets,
// computed both by direct membership counting and by the alternating
// intersection sum sum_{r=2}^m (-1)^r (r-1) sum_{|I|=r} |A_I|.
std::pair<BigInt, BigInt> at_least_two_cover_count(const std::vector<std::set<int>>& sets);

// lhs = 1 - (-1)^l (l-1), rhs = sum_{i=2}^{l-1} (-1)^i (i-1) C(l, i).
std::pair<BigInt, BigInt> series_identity_check(int l);

// Partial sum sum_{i=2}^{terms} (-1)^i (i-1) x^i / i!, converging to
// 1 - (1+x) e^{-x}.
double exp_partial_sum(double x, int terms);

// Every element of S^n([m]) exactly once. For Borda the realizable score
// vectors are found by enumerating and deduplicating all (m!)^n voting
// profiles, guarded at 1e8.
void enumerate_scoring_profiles(const Rule& rule, long long n,
                                const std::function<void(const ScoringProfile&)>& fn);

std::vector<ScoringProfile> collect_scoring_profiles(const Rule& rule, long long n);

}  // namespace clab
