#include "estimate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

namespace clab {

Wilson wilson95(long long successes, long long trials) {
  if (trials <= 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = p + z2 / (2.0 * nn);
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  Wilson w;
  // Exact endpoints at the boundary counts avoid float residue there.
  w.low = (successes == 0) ? 0.0 : std::max(0.0, (center - half) / denom);
  w.high = (successes == trials) ? 1.0 : std::min(1.0, (center + half) / denom);
  return w;
}

LabelOutcome label_profile(const ScoringProfile& x, const Rule& rule, int c, TieBreak tb,
                           bool resolve_unknown, unsigned long long oracle_budget) {
  LabelOutcome out;
  const Classification cls = classify(x, rule, c, tb);
  out.status = cls.status;
  out.basis = cls.basis;
  if (cls.status == ClassStatus::Unknown && resolve_unknown) {
    const OracleVerdict v = collusion_oracle(x, rule, c, tb, Budget{oracle_budget});
    switch (v.status) {
      case VerdictStatus::Proof:
        out.status = ClassStatus::Proof;
        break;
      case VerdictStatus::Manipulable:
        out.status = ClassStatus::Manipulable;
        out.witness = v.witness;
        break;
      case VerdictStatus::BudgetExceeded:
        out.budget_exceeded = true;
        break;
    }
  }
  return out;
}

namespace {

constexpr long long kBlock = 1024;

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (cfg.c < 1) throw Error(ErrorCode::InvalidArgument, "c must be >= 1");
  if (cfg.n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
  if (cfg.culture == Culture::ISC && cfg.rule.kind == RuleKind::Borda)
    throw Error(ErrorCode::Unsupported, "ISC is not defined for Borda");
}

bool all_gaps_within_one(const std::vector<Score>& s) {
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  return *hi - *lo <= 1;
}

struct BlockCounts {
  long long proof = 0, manipulable = 0, unknown = 0, event = 0;
};

// Runs `trials` samples split into fixed blocks, one substream each, and
// reduces block counts in index order. `body` consumes a per-block RNG
// and fills that block's counts.
template <typename Body>
std::vector<BlockCounts> run_blocks(const ExperimentConfig& cfg, const Body& body) {
  const long long nblocks = (cfg.trials + kBlock - 1) / kBlock;
  std::vector<BlockCounts> blocks(static_cast<size_t>(nblocks));
  const RngStream base = RngStream::from(cfg.seed, cfg.stream);
  std::atomic<long long> next{0};
  auto worker = [&]() {
    for (;;) {
      const long long b = next.fetch_add(1);
      if (b >= nblocks) break;
      RngStream rng = spawn_stream(base, static_cast<std::uint64_t>(b));
      const long long lo = b * kBlock;
      const long long hi = std::min(cfg.trials, lo + kBlock);
      body(rng, hi - lo, blocks[static_cast<size_t>(b)]);
    }
  };
  const int nthreads = std::max(1, cfg.threads);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return blocks;
}

}  // namespace

EstimateResult estimate_fraction(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  std::optional<IscSampler> isc;
  if (cfg.culture == Culture::ISC) isc.emplace(cfg.rule, cfg.n);

  const auto blocks = run_blocks(cfg, [&](RngStream& rng, long long count, BlockCounts& bc) {
    for (long long i = 0; i < count; ++i) {
      ScoringProfile x = (cfg.culture == Culture::ISC)
                             ? isc->draw(rng)
                             : tally(sample_ic(cfg.n, cfg.rule.m, rng), cfg.rule);
      const LabelOutcome lo =
          label_profile(x, cfg.rule, cfg.c, cfg.tb, cfg.resolve_unknown, cfg.oracle_budget);
      switch (lo.status) {
        case ClassStatus::Proof: ++bc.proof; break;
        case ClassStatus::Manipulable: ++bc.manipulable; break;
        case ClassStatus::Unknown: ++bc.unknown; break;
      }
    }
  });

  EstimateResult r;
  r.trials = cfg.trials;
  r.seed = cfg.seed;
  for (const auto& b : blocks) {
    r.proof += b.proof;
    r.manipulable += b.manipulable;
    r.unknown += b.unknown;
  }
  r.fraction_proof = static_cast<double>(r.proof) / static_cast<double>(r.trials);
  const Wilson w = wilson95(r.proof, r.trials);
  r.ci_low = w.low;
  r.ci_high = w.high;
  r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

BigRat ExactFractions::proof_fraction() const {
  if (support == 0) return 0;
  return BigRat(proof, support);
}

BigRat ExactFractions::manipulable_fraction() const {
  if (support == 0) return 0;
  return BigRat(manipulable, support);
}

ExactFractions exhaustive_fraction(const ExperimentConfig& cfg) {
  if (cfg.c < 1) throw Error(ErrorCode::InvalidArgument, "c must be >= 1");
  ExactFractions out;

  auto tab = [&](const LabelOutcome& lo) {
    switch (lo.status) {
      case ClassStatus::Proof: ++out.proof; break;
      case ClassStatus::Manipulable: ++out.manipulable; break;
      case ClassStatus::Unknown: ++out.unknown; break;
    }
    ++out.support;
  };

  if (cfg.culture == Culture::ISC) {
    if (cfg.rule.kind != RuleKind::Borda) {
      const BigInt sz = count_scoring_profiles(cfg.rule, cfg.n);
      if (sz > 10'000'000)
        throw Error(ErrorCode::TooLarge, "exhaustive guard: |S^n([m])| > 1e7");
    }
    enumerate_scoring_profiles(cfg.rule, cfg.n, [&](const ScoringProfile& x) {
      tab(label_profile(x, cfg.rule, cfg.c, cfg.tb, cfg.resolve_unknown, cfg.oracle_budget));
    });
    return out;
  }

  // IC: iterate all (m!)^n vote sequences; labels depend only on the
  // tally, so memoize per score vector.
  double total = 1;
  double fact = 1;
  for (int i = 2; i <= cfg.rule.m; ++i) fact *= i;
  for (long long i = 0; i < cfg.n; ++i) total *= fact;
  if (total > 1e7) throw Error(ErrorCode::TooLarge, "exhaustive guard: (m!)^n > 1e7");

  const auto perms = all_preferences(cfg.rule.m);
  const int nperm = static_cast<int>(perms.size());
  std::map<std::vector<Score>, LabelOutcome> memo;
  std::vector<int> idx(static_cast<size_t>(cfg.n), 0);
  for (;;) {
    Profile p;
    p.m = cfg.rule.m;
    for (int i : idx) p.votes.push_back(perms[i]);
    const ScoringProfile x = tally(p, cfg.rule);
    auto it = memo.find(x.scores);
    if (it == memo.end())
      it = memo
               .emplace(x.scores, label_profile(x, cfg.rule, cfg.c, cfg.tb,
                                                cfg.resolve_unknown, cfg.oracle_budget))
               .first;
    tab(it->second);
    int pos = static_cast<int>(idx.size()) - 1;
    while (pos >= 0 && idx[pos] + 1 >= nperm) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (size_t j = pos + 1; j < idx.size(); ++j) idx[j] = 0;
  }
  return out;
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis,
                            const std::vector<long long>& values) {
  std::vector<SweepRow> rows;
  for (size_t i = 0; i < values.size(); ++i) {
    SweepRow row;
    row.cfg = base;
    row.cfg.stream = i;
    try {
      if (axis == SweepAxis::N) {
        row.cfg.n = values[i];
      } else {
        const int m = static_cast<int>(values[i]);
        row.cfg.rule = rule_from_name(base.rule.name(), base.rule.k, m);
      }
      row.result = estimate_fraction(row.cfg);
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

std::string rat_str(const BigRat& r) {
  return r.str();
}

double rat_double(const BigRat& r) {
  return static_cast<double>(r);
}

// Exact fraction of profiles whose tally has all pairwise gaps <= 1, for
// MonteCarlo cross-checks of the E/F bounds.
BigRat exact_value_for(const BoundSpec& spec, TieBreak tb, unsigned long long budget) {
  switch (spec.id) {
    case BoundId::PluralityCP: {
      ExperimentConfig cfg;
      cfg.rule = Rule::plurality(spec.m);
      cfg.n = spec.n;
      cfg.c = spec.c;
      cfg.tb = tb;
      cfg.culture = Culture::ISC;
      cfg.resolve_unknown = false;  // plurality characterization is complete
      return exhaustive_fraction(cfg).proof_fraction();
    }
    case BoundId::VetoCP: {
      ExperimentConfig cfg;
      cfg.rule = Rule::veto(spec.m);
      cfg.n = spec.n;
      cfg.c = spec.c;
      cfg.tb = tb;
      cfg.culture = Culture::ISC;
      cfg.resolve_unknown = true;  // veto characterization is sufficient-only
      cfg.oracle_budget = budget;
      return exhaustive_fraction(cfg).proof_fraction();
    }
    case BoundId::PluralityE:
      return BigRat(count_almost_equal(Rule::plurality(spec.m), spec.n),
                    count_scoring_profiles(Rule::plurality(spec.m), spec.n));
    case BoundId::VetoE:
      return BigRat(count_almost_equal(Rule::veto(spec.m), spec.n),
                    count_scoring_profiles(Rule::veto(spec.m), spec.n));
    case BoundId::VetoF: {
      BigInt denom = 1;
      const BigInt fact = factorial(spec.m);
      for (long long i = 0; i < spec.n; ++i) denom *= fact;
      return BigRat(count_F_kapproval(spec.n, 1, spec.m), denom);
    }
    case BoundId::KApprovalF: {
      BigInt denom = 1;
      const BigInt fact = factorial(spec.m);
      for (long long i = 0; i < spec.n; ++i) denom *= fact;
      return BigRat(count_F_kapproval(spec.n, spec.k, spec.m), denom);
    }
    case BoundId::BordaLimit:
      throw Error(ErrorCode::Unsupported, "borda-limit has no finite exact check");
  }
  throw Error(ErrorCode::InvalidArgument, "bad bound id");
}

// Monte Carlo event fraction for a bound: CP bounds sample ISC and count
// proof labels; E bounds sample ISC and count almost-equal score vectors;
// F bounds sample IC and count almost-equal tallies.
EstimateResult mc_value_for(const BoundCheckRequest& req) {
  const BoundSpec& spec = req.spec;
  ExperimentConfig cfg;
  cfg.n = spec.n;
  cfg.c = spec.c;
  cfg.tb = req.tb;
  cfg.trials = req.trials;
  cfg.seed = req.seed;
  cfg.oracle_budget = req.oracle_budget;

  switch (spec.id) {
    case BoundId::PluralityCP:
      cfg.rule = Rule::plurality(spec.m);
      cfg.culture = Culture::ISC;
      return estimate_fraction(cfg);
    case BoundId::VetoCP:
      cfg.rule = Rule::veto(spec.m);
      cfg.culture = Culture::ISC;
      cfg.resolve_unknown = true;
      return estimate_fraction(cfg);
    default:
      break;
  }

  // Event-fraction loop for the E/F bounds.
  const bool ic = (spec.id == BoundId::VetoF || spec.id == BoundId::KApprovalF);
  const int k = (spec.id == BoundId::KApprovalF) ? spec.k : 1;
  cfg.rule = ic ? (k == 1 ? Rule::plurality(spec.m) : Rule::kapproval(k, spec.m))
                : (spec.id == BoundId::VetoE ? Rule::veto(spec.m) : Rule::plurality(spec.m));
  cfg.culture = ic ? Culture::IC : Culture::ISC;
  validate_config(cfg);
  std::optional<IscSampler> isc;
  if (!ic) isc.emplace(cfg.rule, cfg.n);
  const auto blocks = run_blocks(cfg, [&](RngStream& rng, long long count, BlockCounts& bc) {
    for (long long i = 0; i < count; ++i) {
      const ScoringProfile x =
          ic ? tally(sample_ic(cfg.n, cfg.rule.m, rng), cfg.rule) : isc->draw(rng);
      if (all_gaps_within_one(x.scores)) ++bc.event;
    }
  });
  EstimateResult r;
  r.trials = cfg.trials;
  r.seed = cfg.seed;
  for (const auto& b : blocks) r.proof += b.event;
  r.fraction_proof = static_cast<double>(r.proof) / static_cast<double>(r.trials);
  const Wilson w = wilson95(r.proof, r.trials);
  r.ci_low = w.low;
  r.ci_high = w.high;
  return r;
}

}  // namespace

std::vector<BoundCheckRow> verify_bounds(const std::vector<BoundCheckRequest>& grid) {
  std::vector<BoundCheckRow> rows;
  for (const auto& req : grid) {
    BoundCheckRow row;
    row.request = req;
    try {
      const BoundValue bv = bound_value(req.spec);
      if (bv.is_float) {
        row.bound = format_double(bv.float_value);
        row.bound_float = bv.float_value;
        row.verdict = Verdict::Inconclusive;
        row.note = "limit expression only; no finite-instance check";
        rows.push_back(std::move(row));
        continue;
      }
      row.bound = rat_str(bv.value);
      row.bound_float = rat_double(bv.value);
      if (req.mode == CheckMode::Exhaustive) {
        const BigRat value = exact_value_for(req.spec, req.tb, req.oracle_budget);
        row.value = rat_str(value);
        row.value_float = rat_double(value);
        row.verdict = (value >= bv.value) ? Verdict::Pass : Verdict::Fail;
      } else {
        const EstimateResult r = mc_value_for(req);
        row.value = format_double(r.fraction_proof);
        row.value_float = r.fraction_proof;
        // A lower-bound theorem is only refuted when the whole CI sits
        // below the bound.
        row.verdict = (r.ci_high >= rat_double(bv.value)) ? Verdict::Pass : Verdict::Fail;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "ci=[%.6f,%.6f]", r.ci_low, r.ci_high);
        row.note = buf;
      }
    } catch (const Error& e) {
      row.verdict = Verdict::Inconclusive;
      row.note = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<BoundCheckRequest> paper_grid_bound_requests() {
  std::vector<BoundCheckRequest> grid;
  auto add = [&](BoundId id, long long n, int m, int c, int k, TieBreak tb) {
    BoundCheckRequest req;
    req.spec.id = id;
    req.spec.n = n;
    req.spec.m = m;
    req.spec.c = c;
    req.spec.k = k;
    req.tb = tb;
    grid.push_back(req);
  };
  const TieBreak both[] = {TieBreak::ForManipulators, TieBreak::AgainstManipulators};
  for (int m = 2; m <= 4; ++m)
    for (int c = 1; c <= 2; ++c)
      for (long long n = c + 1; n <= 8; ++n)
        for (TieBreak tb : both) {
          add(BoundId::PluralityCP, n, m, c, 1, tb);
          if (c > 1) break;  // the coalition classifier is tb-insensitive
        }
  for (int m = 2; m <= 4; ++m)
    for (long long n = 1; n < m; ++n) {
      add(BoundId::PluralityE, n, m, 1, 1, TieBreak::ForManipulators);
      add(BoundId::VetoE, n, m, 1, 1, TieBreak::ForManipulators);
      add(BoundId::VetoF, n, m, 1, 1, TieBreak::ForManipulators);
    }
  add(BoundId::KApprovalF, 1, 3, 1, 2, TieBreak::ForManipulators);
  add(BoundId::KApprovalF, 1, 4, 1, 2, TieBreak::ForManipulators);
  add(BoundId::KApprovalF, 2, 4, 1, 2, TieBreak::ForManipulators);
  for (int m = 2; m <= 4; ++m)
    for (int c = 1; c <= 2; ++c)
      for (long long n = 1; n <= 8; ++n) {
        const long long e = (c + 1) * (m - 1);
        if (n - e + 1 <= 0 || m * n - e <= 0) continue;
        for (TieBreak tb : both) add(BoundId::VetoCP, n, m, c, 1, tb);
      }
  return grid;
}

std::vector<HarnessPointResult> agreement_harness(const std::vector<HarnessPoint>& grid,
                                                  unsigned long long oracle_budget) {
  std::vector<HarnessPointResult> out;
  for (const auto& pt : grid) {
    HarnessPointResult res;
    res.point = pt;
    try {
      enumerate_scoring_profiles(pt.rule, pt.n, [&](const ScoringProfile& x) {
        const Classification cls = classify(x, pt.rule, pt.c, pt.tb);
        const OracleVerdict orc = collusion_oracle(x, pt.rule, pt.c, pt.tb,
                                                   Budget{oracle_budget});
        if (orc.status == VerdictStatus::BudgetExceeded)
          throw Error(ErrorCode::BudgetExceeded, "oracle budget exceeded");
        ++res.profiles;
        if (!cls.basis.empty()) ++res.basis_counts[cls.basis];
        if (cls.status == ClassStatus::Unknown) {
          if (orc.status == VerdictStatus::Proof)
            ++res.unknown_resolved_proof;
          else
            ++res.unknown_resolved_manipulable;
          return;
        }
        const bool cls_proof = (cls.status == ClassStatus::Proof);
        const bool orc_proof = (orc.status == VerdictStatus::Proof);
        if (cls_proof != orc_proof) {
          ++res.disagreements;
          if (cls_proof) ++res.false_proof;
          Disagreement d;
          d.scores = x.scores;
          d.classifier = cls.status;
          d.basis = cls.basis;
          d.oracle = orc.status;
          d.witness = orc.witness;
          res.detail.push_back(std::move(d));
        }
      });
    } catch (const Error& e) {
      res.error = e.what();
    }
    out.push_back(std::move(res));
  }
  return out;
}

std::vector<HarnessPoint> paper_grid_harness_points() {
  std::vector<HarnessPoint> grid;
  const TieBreak both[] = {TieBreak::ForManipulators, TieBreak::AgainstManipulators};
  auto add = [&](Rule rule, long long n, int c, TieBreak tb) {
    grid.push_back(HarnessPoint{rule, n, c, tb});
  };
  for (int m = 2; m <= 4; ++m)
    for (long long n = 1; n <= 5; ++n)
      for (int c = 1; c <= 3; ++c)
        for (TieBreak tb : both) add(Rule::plurality(m), n, c, tb);
  for (int m = 3; m <= 4; ++m)
    for (long long n = 1; n <= 3; ++n)
      for (int c = 1; c <= 2; ++c)
        for (TieBreak tb : both) add(Rule::kapproval(2, m), n, c, tb);
  for (int m = 3; m <= 4; ++m)
    for (long long n = 1; n <= 4; ++n)
      for (int c = 1; c <= 2; ++c)
        for (TieBreak tb : both) add(Rule::veto(m), n, c, tb);
  for (int m = 3; m <= 4; ++m)
    for (long long n = 1; n <= 3; ++n)
      for (TieBreak tb : both) add(Rule::borda(m), n, 1, tb);
  return grid;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string estimate_csv_header() {
  return "rule,k,n,m,c,tiebreak,culture,trials,proof,manipulable,unknown,fraction,"
         "ci_low,ci_high,seed\n";
}

std::string estimate_csv_row(const ExperimentConfig& cfg, const EstimateResult& r) {
  std::string k = (cfg.rule.kind == RuleKind::KApproval) ? std::to_string(cfg.rule.k) : "";
  std::string row;
  row += cfg.rule.name() + "," + k + "," + std::to_string(cfg.n) + "," +
         std::to_string(cfg.rule.m) + "," + std::to_string(cfg.c) + "," +
         tiebreak_name(cfg.tb) + "," + culture_name(cfg.culture) + "," +
         std::to_string(r.trials) + "," + std::to_string(r.proof) + "," +
         std::to_string(r.manipulable) + "," + std::to_string(r.unknown) + "," +
         format_double(r.fraction_proof) + "," + format_double(r.ci_low) + "," +
         format_double(r.ci_high) + "," + std::to_string(r.seed) + "\n";
  return row;
}

std::string bounds_csv_header() {
  return "bound_id,n,m,c,k,tiebreak,mode,value,bound,verdict,note\n";
}

std::string bounds_csv_row(const BoundCheckRow& row) {
  const auto& s = row.request.spec;
  std::string out;
  out += bound_id_name(s.id) + "," + std::to_string(s.n) + "," + std::to_string(s.m) +
         "," + std::to_string(s.c) + "," + std::to_string(s.k) + "," +
         tiebreak_name(row.request.tb) + "," +
         (row.request.mode == CheckMode::Exhaustive ? "exhaustive" : "montecarlo") + "," +
         row.value + "," + row.bound + "," + verdict_name(row.verdict) + "," + row.note +
         "\n";
  return out;
}

}  // namespace clab
