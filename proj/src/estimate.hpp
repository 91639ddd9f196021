#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "classify.hpp"
#include "count.hpp"
#include "oracle.hpp"
#include "sample.hpp"

namespace clab {

struct Wilson {
  double low = 0.0;
  double high = 1.0;
};

// 95% Wilson score interval on successes/trials.
Wilson wilson95(long long successes, long long trials);

struct ExperimentConfig {
  Rule rule;
  long long n = 1;
  int c = 1;
  TieBreak tb = TieBreak::ForManipulators;
  Culture culture = Culture::ISC;
  long long trials = 10000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // substream selector (sweeps use one per point)
  unsigned long long oracle_budget = 100'000'000ULL;
  bool resolve_unknown = false;
  int threads = 1;
};

struct EstimateResult {
  long long trials = 0;
  long long proof = 0;
  long long manipulable = 0;
  long long unknown = 0;
  double fraction_proof = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::uint64_t seed = 0;
  double elapsed_s = 0.0;
};

// Classifier verdict with optional oracle resolution of Unknown.
struct LabelOutcome {
  ClassStatus status = ClassStatus::Unknown;
  std::string basis;
  std::optional<Witness> witness;  // when the oracle found a manipulation
  bool budget_exceeded = false;
};

LabelOutcome label_profile(const ScoringProfile& x, const Rule& rule, int c, TieBreak tb,
                           bool resolve_unknown, unsigned long long oracle_budget);

// Monte Carlo estimate of the proof fraction under the configured
// culture. Deterministic for a fixed (seed, stream) regardless of the
// thread count: trials are split into fixed-size blocks, one spawned
// substream per block.
EstimateResult estimate_fraction(const ExperimentConfig& cfg);

struct ExactFractions {
  BigInt support = 0;
  BigInt proof = 0;
  BigInt manipulable = 0;
  BigInt unknown = 0;
  BigRat proof_fraction() const;
  BigRat manipulable_fraction() const;
};

// Exact fractions by iterating the full support (ISC: S^n([m]);
// IC: all (m!)^n voting profiles).
ExactFractions exhaustive_fraction(const ExperimentConfig& cfg);

enum class SweepAxis { N, M };

struct SweepRow {
  ExperimentConfig cfg;
  EstimateResult result;
  std::string error;  // non-empty when the point failed
};

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis,
                            const std::vector<long long>& values);

enum class CheckMode { Exhaustive, MonteCarlo };
enum class Verdict { Pass, Fail, Inconclusive };

std::string verdict_name(Verdict v);

struct BoundCheckRequest {
  BoundSpec spec;
  CheckMode mode = CheckMode::Exhaustive;
  TieBreak tb = TieBreak::ForManipulators;  // used where the fraction is tb-dependent
  long long trials = 20000;                 // MonteCarlo mode
  std::uint64_t seed = 0;
  unsigned long long oracle_budget = 100'000'000ULL;
};

struct BoundCheckRow {
  BoundCheckRequest request;
  std::string value;   // exact rational ("p/q") or float text
  double value_float = 0.0;
  std::string bound;
  double bound_float = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

std::vector<BoundCheckRow> verify_bounds(const std::vector<BoundCheckRequest>& grid);

// The default acceptance grid behind `verify-bounds --preset paper-grid`.
std::vector<BoundCheckRequest> paper_grid_bound_requests();

struct HarnessPoint {
  Rule rule;
  long long n = 1;
  int c = 1;
  TieBreak tb = TieBreak::ForManipulators;
};

struct Disagreement {
  std::vector<Score> scores;
  ClassStatus classifier = ClassStatus::Unknown;
  std::string basis;
  VerdictStatus oracle = VerdictStatus::Proof;
  std::optional<Witness> witness;
};

struct HarnessPointResult {
  HarnessPoint point;
  long long profiles = 0;
  long long disagreements = 0;  // classifier Proof/Manipulable vs opposite oracle verdict
  long long false_proof = 0;    // classifier Proof, oracle Manipulable
  long long unknown_resolved_proof = 0;
  long long unknown_resolved_manipulable = 0;
  std::vector<Disagreement> detail;
  std::map<std::string, long long> basis_counts;
  std::string error;  // TooLarge / BudgetExceeded per point
};

std::vector<HarnessPointResult> agreement_harness(const std::vector<HarnessPoint>& grid,
                                                  unsigned long long oracle_budget =
                                                      100'000'000ULL);

std::vector<HarnessPoint> paper_grid_harness_points();

// CSV emission (UTF-8, LF, header row, floats at 17 significant digits).
std::string estimate_csv_header();
std::string estimate_csv_row(const ExperimentConfig& cfg, const EstimateResult& r);
std::string bounds_csv_header();
std::string bounds_csv_row(const BoundCheckRow& row);
std::string format_double(double v);

}  // namespace clab
