#include "collusionlab.h"

#include <string>

#include <json.hpp>

#include "classify.hpp"
#include "count.hpp"
#include "estimate.hpp"
#include "oracle.hpp"
#include "sample.hpp"

using nlohmann::json;
using namespace clab;

struct clab_result {
  bool ok = false;
  std::string json_text;
  std::string csv_text;
  std::string error_text;
};

namespace {

clab_status status_from(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return CLAB_ERR_INVALID_ARGUMENT;
    case ErrorCode::Unsupported: return CLAB_ERR_UNSUPPORTED;
    case ErrorCode::BudgetExceeded: return CLAB_ERR_BUDGET_EXCEEDED;
    case ErrorCode::TooLarge: return CLAB_ERR_TOO_LARGE;
    case ErrorCode::OutOfRegime: return CLAB_ERR_OUT_OF_REGIME;
  }
  return CLAB_ERR_INTERNAL;
}

Rule rule_from_request(const json& j) {
  const std::string name = j.at("rule").get<std::string>();
  const int m = j.at("m").get<int>();
  const int k = j.value("k", 2);
  return rule_from_name(name, k, m);
}

json preference_to_json(const Preference& p) {
  return json(p.order);
}

json witness_to_json(const Witness& w) {
  json truths = json::array();
  for (const auto& p : w.truths) truths.push_back(preference_to_json(p));
  json devs = json::array();
  for (const auto& p : w.deviation) devs.push_back(preference_to_json(p));
  return json{{"truths", truths},
              {"deviation", devs},
              {"truthful_winner", w.truthful_winner},
              {"deviated_winner", w.deviated_winner}};
}

std::string verdict_status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Proof: return "Proof";
    case VerdictStatus::Manipulable: return "Manipulable";
    case VerdictStatus::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

ScoringProfile scoring_profile_from_request(const json& j, const Rule& rule) {
  std::vector<Score> scores = j.at("scores").get<std::vector<Score>>();
  ScoringProfile x(std::move(scores), j.at("n").get<long long>());
  check_scoring_profile(x, rule);
  return x;
}

void op_classify(const json& req, clab_result& res) {
  const Rule rule = rule_from_request(req);
  const ScoringProfile x = scoring_profile_from_request(req, rule);
  const int c = req.value("c", 1);
  const TieBreak tb = tiebreak_from_name(req.value("tiebreak", "for"));
  const Classification cls = classify(x, rule, c, tb);
  json out{{"status", class_status_name(cls.status)},
           {"basis", cls.basis},
           {"complete", cls.complete}};
  if (req.value("oracle", false)) {
    const Budget budget{req.value("oracle_budget", 100000000ULL)};
    const OracleVerdict v = collusion_oracle(x, rule, c, tb, budget);
    out["oracle_status"] = verdict_status_name(v.status);
    out["oracle_evaluations"] = v.evaluations;
    if (v.witness) out["witness"] = witness_to_json(*v.witness);
  }
  res.json_text = out.dump(2);
}

void op_oracle(const json& req, clab_result& res) {
  const Rule rule = rule_from_request(req);
  const ScoringProfile x = scoring_profile_from_request(req, rule);
  const int c = req.value("c", 1);
  const TieBreak tb = tiebreak_from_name(req.value("tiebreak", "for"));
  const Budget budget{req.value("oracle_budget", 100000000ULL)};
  const OracleVerdict v = collusion_oracle(x, rule, c, tb, budget);
  json out{{"status", verdict_status_name(v.status)}, {"evaluations", v.evaluations}};
  if (v.witness) out["witness"] = witness_to_json(*v.witness);
  res.json_text = out.dump(2);
}

void op_count(const json& req, clab_result& res) {
  const Rule rule = rule_from_request(req);
  const long long n = req.at("n").get<long long>();
  const BigInt authoritative = count_scoring_profiles(rule, n);
  json out{{"rule", rule.name()},
           {"n", n},
           {"m", rule.m},
           {"k", rule.approval_k()},
           {"authoritative", authoritative.str()}};
  if (req.value("audit", false)) {
    const BigInt printed = paper_kapproval_formula(n, rule.approval_k(), rule.m);
    const bool match = (printed == authoritative);
    out["paper_formula"] = printed.str();
    out["match"] = match;
    res.csv_text = "rule,n,m,k,authoritative,paper_formula,match\n" + rule.name() + "," +
                   std::to_string(n) + "," + std::to_string(rule.m) + "," +
                   std::to_string(rule.approval_k()) + "," + authoritative.str() + "," +
                   printed.str() + "," + (match ? "true" : "false") + "\n";
  }
  res.json_text = out.dump(2);
}

void op_sample(const json& req, clab_result& res) {
  const Rule rule = rule_from_request(req);
  const long long n = req.at("n").get<long long>();
  const Culture culture = culture_from_name(req.value("culture", "isc"));
  const long long count = req.value("count", 1LL);
  const std::uint64_t seed = req.value("seed", 0ULL);
  const std::uint64_t stream = req.value("stream", 0ULL);
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");

  RngStream rng = RngStream::from(seed, stream);
  std::string csv = "index,payload\n";
  json samples = json::array();
  std::optional<IscSampler> isc;
  if (culture == Culture::ISC) isc.emplace(rule, n);
  for (long long i = 0; i < count; ++i) {
    std::string payload;
    if (culture == Culture::ISC) {
      const ScoringProfile x = isc->draw(rng);
      for (int j2 = 0; j2 < x.m(); ++j2)
        payload += (j2 ? ";" : "") + std::to_string(x.scores[j2]);
      samples.push_back(json(x.scores));
    } else {
      const Profile p = sample_ic(n, rule.m, rng);
      json jp = json::array();
      for (size_t v = 0; v < p.votes.size(); ++v) {
        std::string vote;
        for (int j2 = 0; j2 < rule.m; ++j2)
          vote += (j2 ? ">" : "") + std::to_string(p.votes[v].order[j2]);
        payload += (v ? "|" : "") + vote;
        jp.push_back(preference_to_json(p.votes[v]));
      }
      samples.push_back(jp);
    }
    csv += std::to_string(i) + "," + payload + "\n";
  }
  res.csv_text = csv;
  res.json_text = json{{"rule", rule.name()},
                       {"n", n},
                       {"m", rule.m},
                       {"culture", culture_name(culture)},
                       {"count", count},
                       {"seed", seed},
                       {"samples", samples}}
                      .dump(2);
}

ExperimentConfig config_from_request(const json& req) {
  ExperimentConfig cfg;
  cfg.rule = rule_from_request(req);
  cfg.n = req.at("n").get<long long>();
  cfg.c = req.value("c", 1);
  cfg.tb = tiebreak_from_name(req.value("tiebreak", "for"));
  cfg.culture = culture_from_name(req.value("culture", "isc"));
  cfg.trials = req.value("trials", 10000LL);
  cfg.seed = req.value("seed", 0ULL);
  cfg.stream = req.value("stream", 0ULL);
  cfg.oracle_budget = req.value("oracle_budget", 100000000ULL);
  cfg.resolve_unknown = req.value("resolve_unknown", false);
  cfg.threads = req.value("threads", 1);
  return cfg;
}

json result_to_json(const ExperimentConfig& cfg, const EstimateResult& r) {
  return json{{"rule", cfg.rule.name()},
              {"k", cfg.rule.kind == RuleKind::KApproval ? json(cfg.rule.k) : json()},
              {"n", cfg.n},
              {"m", cfg.rule.m},
              {"c", cfg.c},
              {"tiebreak", tiebreak_name(cfg.tb)},
              {"culture", culture_name(cfg.culture)},
              {"trials", r.trials},
              {"proof", r.proof},
              {"manipulable", r.manipulable},
              {"unknown", r.unknown},
              {"fraction", r.fraction_proof},
              {"ci_low", r.ci_low},
              {"ci_high", r.ci_high},
              {"seed", r.seed},
              {"elapsed_s", r.elapsed_s}};
}

void op_estimate(const json& req, clab_result& res) {
  const ExperimentConfig cfg = config_from_request(req);
  const EstimateResult r = estimate_fraction(cfg);
  res.csv_text = estimate_csv_header() + estimate_csv_row(cfg, r);
  res.json_text = result_to_json(cfg, r).dump(2);
}

void op_sweep(const json& req, clab_result& res) {
  const ExperimentConfig base = config_from_request(req);
  const std::string axis_name = req.at("axis").get<std::string>();
  SweepAxis axis;
  if (axis_name == "n")
    axis = SweepAxis::N;
  else if (axis_name == "m")
    axis = SweepAxis::M;
  else
    throw Error(ErrorCode::InvalidArgument, "axis must be \"n\" or \"m\"");
  const auto values = req.at("values").get<std::vector<long long>>();
  const auto rows = sweep(base, axis, values);

  std::string csv = estimate_csv_header();
  json jrows = json::array();
  for (const auto& row : rows) {
    if (row.error.empty()) {
      csv += estimate_csv_row(row.cfg, row.result);
      jrows.push_back(result_to_json(row.cfg, row.result));
    } else {
      json err = {{"n", row.cfg.n}, {"m", row.cfg.rule.m}, {"error", row.error}};
      jrows.push_back(err);
    }
  }
  res.csv_text = csv;
  res.json_text = json{{"axis", axis_name}, {"rows", jrows}}.dump(2);
}

BoundCheckRequest bound_request_from_json(const json& j) {
  BoundCheckRequest req;
  req.spec.id = bound_id_from_name(j.at("bound_id").get<std::string>());
  req.spec.n = j.at("n").get<long long>();
  req.spec.m = j.value("m", 0);
  req.spec.c = j.value("c", 1);
  req.spec.k = j.value("k", 2);
  req.spec.lambda = j.value("lambda", 1.0);
  req.mode = (j.value("mode", "exhaustive") == "montecarlo") ? CheckMode::MonteCarlo
                                                             : CheckMode::Exhaustive;
  req.tb = tiebreak_from_name(j.value("tiebreak", "for"));
  req.trials = j.value("trials", 20000LL);
  req.seed = j.value("seed", 0ULL);
  req.oracle_budget = j.value("oracle_budget", 100000000ULL);
  return req;
}

void op_verify_bounds(const json& req, clab_result& res) {
  std::vector<BoundCheckRequest> grid;
  if (req.value("preset", "") == "paper-grid") {
    grid = paper_grid_bound_requests();
  } else if (req.contains("requests")) {
    for (const auto& j : req.at("requests")) grid.push_back(bound_request_from_json(j));
  } else {
    throw Error(ErrorCode::InvalidArgument, "need preset=paper-grid or requests=[...]");
  }
  const auto rows = verify_bounds(grid);
  std::string csv = bounds_csv_header();
  json jrows = json::array();
  long long fails = 0;
  for (const auto& row : rows) {
    csv += bounds_csv_row(row);
    if (row.verdict == Verdict::Fail) ++fails;
    jrows.push_back(json{{"bound_id", bound_id_name(row.request.spec.id)},
                         {"n", row.request.spec.n},
                         {"m", row.request.spec.m},
                         {"c", row.request.spec.c},
                         {"k", row.request.spec.k},
                         {"tiebreak", tiebreak_name(row.request.tb)},
                         {"mode", row.request.mode == CheckMode::Exhaustive ? "exhaustive"
                                                                           : "montecarlo"},
                         {"value", row.value},
                         {"bound", row.bound},
                         {"verdict", verdict_name(row.verdict)},
                         {"note", row.note}});
  }
  res.csv_text = csv;
  res.json_text = json{{"rows", jrows}, {"fails", fails}}.dump(2);
}

void op_harness(const json& req, clab_result& res) {
  std::vector<HarnessPoint> grid;
  if (req.value("preset", "") == "paper-grid") {
    grid = paper_grid_harness_points();
  } else if (req.contains("points")) {
    for (const auto& j : req.at("points")) {
      HarnessPoint pt;
      pt.rule = rule_from_request(j);
      pt.n = j.at("n").get<long long>();
      pt.c = j.value("c", 1);
      pt.tb = tiebreak_from_name(j.value("tiebreak", "for"));
      grid.push_back(pt);
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "need preset=paper-grid or points=[...]");
  }
  const unsigned long long budget = req.value("oracle_budget", 100000000ULL);
  const auto results = agreement_harness(grid, budget);

  std::string csv =
      "rule,k,n,m,c,tiebreak,profiles,disagreements,false_proof,unknown_proof,"
      "unknown_manipulable,error\n";
  json jpoints = json::array();
  long long total_disagreements = 0;
  long long total_false_proof = 0;
  for (const auto& r : results) {
    const auto& pt = r.point;
    csv += pt.rule.name() + "," +
           (pt.rule.kind == RuleKind::KApproval ? std::to_string(pt.rule.k) : "") + "," +
           std::to_string(pt.n) + "," + std::to_string(pt.rule.m) + "," +
           std::to_string(pt.c) + "," + tiebreak_name(pt.tb) + "," +
           std::to_string(r.profiles) + "," + std::to_string(r.disagreements) + "," +
           std::to_string(r.false_proof) + "," + std::to_string(r.unknown_resolved_proof) +
           "," + std::to_string(r.unknown_resolved_manipulable) + "," + r.error + "\n";
    total_disagreements += r.disagreements;
    total_false_proof += r.false_proof;
    json detail = json::array();
    for (const auto& d : r.detail) {
      json jd{{"scores", d.scores},
              {"classifier", class_status_name(d.classifier)},
              {"basis", d.basis},
              {"oracle", verdict_status_name(d.oracle)}};
      if (d.witness) jd["witness"] = witness_to_json(*d.witness);
      detail.push_back(jd);
    }
    jpoints.push_back(json{{"rule", pt.rule.name()},
                           {"k", pt.rule.kind == RuleKind::KApproval ? json(pt.rule.k) : json()},
                           {"n", pt.n},
                           {"m", pt.rule.m},
                           {"c", pt.c},
                           {"tiebreak", tiebreak_name(pt.tb)},
                           {"profiles", r.profiles},
                           {"disagreements", r.disagreements},
                           {"false_proof", r.false_proof},
                           {"unknown_resolved_proof", r.unknown_resolved_proof},
                           {"unknown_resolved_manipulable", r.unknown_resolved_manipulable},
                           {"basis_counts", r.basis_counts},
                           {"disagreement_detail", detail},
                           {"error", r.error}});
  }
  res.csv_text = csv;
  res.json_text = json{{"points", jpoints},
                       {"total_disagreements", total_disagreements},
                       {"total_false_proof", total_false_proof}}
                      .dump(2);
}

clab_status dispatch(const std::string& op, const json& req, clab_result& res) {
  try {
    if (op == "classify")
      op_classify(req, res);
    else if (op == "oracle")
      op_oracle(req, res);
    else if (op == "count")
      op_count(req, res);
    else if (op == "sample")
      op_sample(req, res);
    else if (op == "estimate")
      op_estimate(req, res);
    else if (op == "sweep")
      op_sweep(req, res);
    else if (op == "verify_bounds")
      op_verify_bounds(req, res);
    else if (op == "harness")
      op_harness(req, res);
    else {
      res.error_text = "unknown op: " + op;
      return CLAB_ERR_INVALID_ARGUMENT;
    }
    res.ok = true;
    return CLAB_OK;
  } catch (const Error& e) {
    res.error_text = e.what();
    return status_from(e.code());
  } catch (const json::exception& e) {
    res.error_text = std::string("bad request: ") + e.what();
    return CLAB_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    res.error_text = e.what();
    return CLAB_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* clab_version(void) { return "1.0.0"; }

clab_status clab_run_json(const char* op, const char* request_json, clab_result** out) {
  if (out) *out = nullptr;
  auto res = new clab_result;
  clab_status st = CLAB_ERR_INVALID_ARGUMENT;
  if (!op || !request_json) {
    res->error_text = "op and request_json must be non-NULL";
  } else {
    json req = json::parse(request_json, nullptr, false);
    if (req.is_discarded()) {
      res->error_text = "request is not valid JSON";
    } else {
      st = dispatch(op, req, *res);
    }
  }
  if (out)
    *out = res;
  else
    delete res;
  return st;
}

clab_status clab_classify_scores(const char* rule, int k, int m, long long n,
                                 const long long* scores, int c, const char* tiebreak,
                                 int use_oracle, unsigned long long oracle_budget,
                                 clab_result** out) {
  if (!rule || !scores || !tiebreak || m < 1) {
    if (out) {
      auto res = new clab_result;
      res->error_text = "invalid arguments";
      *out = res;
    }
    return CLAB_ERR_INVALID_ARGUMENT;
  }
  json req{{"rule", rule}, {"k", k},           {"m", m},
           {"n", n},       {"c", c},           {"tiebreak", tiebreak},
           {"oracle", use_oracle != 0},        {"oracle_budget", oracle_budget}};
  req["scores"] = std::vector<long long>(scores, scores + m);
  return clab_run_json("classify", req.dump().c_str(), out);
}

const char* clab_result_json(const clab_result* r) {
  return (r && r->ok) ? r->json_text.c_str() : nullptr;
}

const char* clab_result_csv(const clab_result* r) {
  return r ? r->csv_text.c_str() : "";
}

const char* clab_result_error(const clab_result* r) {
  return (r && !r->ok) ? r->error_text.c_str() : nullptr;
}

void clab_result_free(clab_result* r) { delete r; }

}  // extern "C"
