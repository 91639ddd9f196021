// Command-line front end for the collusionlab shared library. All computation
// goes through the C API; this file only parses flags, assembles JSON
// requests, and writes CSV/JSON artifacts with a manifest sidecar.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "collusionlab.h"

using nlohmann::json;

namespace {

std::string iso_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x00000100000001B3ULL;
  }
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int status_exit_code(clab_status st) {
  switch (st) {
    case CLAB_OK: return 0;
    case CLAB_ERR_INVALID_ARGUMENT: return 2;
    case CLAB_ERR_UNSUPPORTED:
    case CLAB_ERR_OUT_OF_REGIME:
    case CLAB_ERR_TOO_LARGE: return 3;
    case CLAB_ERR_BUDGET_EXCEEDED: return 4;
    default: return 1;
  }
}

bool write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  f << data;
  return static_cast<bool>(f);
}

// Shared per-subcommand state gathered from flags.
struct Common {
  std::string rule = "plurality";
  int k = 2;
  long long n = 0;
  int m = 0;
  int c = 1;
  std::string tiebreak = "for";
  std::string culture = "isc";
  long long trials = 10000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  int threads = 1;
  unsigned long long oracle_budget = 100000000ULL;
  bool resolve_unknown = false;
  bool strict = false;
  std::string out;
};

void add_seed_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed")->envname("COLLUSIONLAB_SEED");
  cmd->add_option("--stream", c.stream, "RNG stream id");
}

void add_out_flag(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Write CSV here (with a .manifest.json sidecar)");
}

// True when a successful result still carries an exhausted-budget signal.
bool has_budget_signal(const json& body) {
  if (body.is_object()) {
    if (body.value("status", "") == "BudgetExceeded") return true;
    if (body.value("oracle_status", "") == "BudgetExceeded") return true;
    if (body.contains("unknown") && body["unknown"].is_number() &&
        body["unknown"].get<long long>() > 0)
      return true;
    for (const auto& [key, val] : body.items()) {
      (void)key;
      if (val.is_array() || val.is_object())
        if (has_budget_signal(val)) return true;
    }
  } else if (body.is_array()) {
    for (const auto& v : body)
      if (has_budget_signal(v)) return true;
  }
  return false;
}

// Runs one library operation and emits all artifacts. Returns the exit code.
int run_op(const std::string& op, const json& request, const Common& c,
           const std::string& command_line) {
  const std::string started = iso_utc_now();
  clab_result* res = nullptr;
  const clab_status st = clab_run_json(op.c_str(), request.dump().c_str(), &res);
  if (st != CLAB_OK) {
    const char* err = clab_result_error(res);
    std::cerr << "error: " << (err ? err : "unknown") << "\n";
    clab_result_free(res);
    return status_exit_code(st);
  }

  const std::string body_text = clab_result_json(res);
  const std::string csv = clab_result_csv(res);
  const json body = json::parse(body_text);
  clab_result_free(res);
  const std::string finished = iso_utc_now();

  int code = 0;
  if (c.strict && has_budget_signal(body)) code = 4;
  if (op == "verify_bounds" && body.value("fails", 0LL) > 0 && code == 0) code = 1;

  if (c.out.empty()) {
    if (!csv.empty())
      std::cout << csv;
    else
      std::cout << body_text << "\n";
    return code;
  }

  const std::string& payload = csv.empty() ? body_text : csv;
  if (!write_file(c.out, payload)) {
    std::cerr << "error: cannot write " << c.out << "\n";
    return 1;
  }
  const std::string record_path = c.out + ".json";
  if (!csv.empty() && !write_file(record_path, body_text)) {
    std::cerr << "error: cannot write " << record_path << "\n";
    return 1;
  }

  json outputs = json::array();
  outputs.push_back({{"path", c.out}, {"fnv1a64", fnv1a64_hex(payload)}});
  if (!csv.empty())
    outputs.push_back({{"path", record_path}, {"fnv1a64", fnv1a64_hex(body_text)}});
  const json manifest{{"tool_version", clab_version()},
                      {"command", command_line},
                      {"op", op},
                      {"resolved_config", request},
                      {"seed", c.seed},
                      {"started_at", started},
                      {"finished_at", finished},
                      {"outputs", outputs}};
  if (!write_file(c.out + ".manifest.json", manifest.dump(2) + "\n")) {
    std::cerr << "error: cannot write manifest\n";
    return 1;
  }
  return code;
}

json base_request(const Common& c) {
  return json{{"rule", c.rule}, {"k", c.k}, {"m", c.m}, {"n", c.n}};
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Manipulability measurements for positional scoring rules"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(clab_version()));
  const std::string command_line = join_args(argc, argv);

  auto add_rule_flags = [](CLI::App* cmd, Common& c, bool need_scores,
                           std::vector<long long>* scores) {
    cmd->add_option("--rule", c.rule, "plurality|veto|kapproval|borda");
    cmd->add_option("--k", c.k, "Approved count for kapproval");
    cmd->add_option("--n", c.n, "Number of voters")->required();
    cmd->add_option("--m", c.m, "Number of candidates")->required();
    if (need_scores)
      cmd->add_option("--scores", *scores, "Comma-separated scores")
          ->required()
          ->delimiter(',');
  };

  // classify
  Common cc;
  std::vector<long long> cc_scores;
  bool cc_oracle = false;
  auto* cmd_classify = app.add_subcommand("classify", "Closed-form classification");
  add_rule_flags(cmd_classify, cc, true, &cc_scores);
  cmd_classify->add_option("--c", cc.c, "Coalition size");
  cmd_classify->add_option("--tiebreak", cc.tiebreak, "for|against|fixed");
  cmd_classify->add_flag("--oracle", cc_oracle, "Cross-check with the search oracle");
  cmd_classify->add_option("--oracle-budget", cc.oracle_budget, "Oracle evaluation cap");
  cmd_classify->add_flag("--strict", cc.strict, "Exit 4 on exhausted budgets");
  add_out_flag(cmd_classify, cc);

  // oracle
  Common oc;
  std::vector<long long> oc_scores;
  auto* cmd_oracle = app.add_subcommand("oracle", "Brute-force search verdict");
  add_rule_flags(cmd_oracle, oc, true, &oc_scores);
  cmd_oracle->add_option("--c", oc.c, "Coalition size");
  cmd_oracle->add_option("--tiebreak", oc.tiebreak, "for|against|fixed");
  cmd_oracle->add_option("--oracle-budget", oc.oracle_budget, "Oracle evaluation cap");
  cmd_oracle->add_flag("--strict", oc.strict, "Exit 4 on exhausted budgets");
  add_out_flag(cmd_oracle, oc);

  // count
  Common nc;
  bool nc_audit = false;
  auto* cmd_count = app.add_subcommand("count", "Count achievable scoring profiles");
  add_rule_flags(cmd_count, nc, false, nullptr);
  cmd_count->add_flag("--audit", nc_audit, "Also evaluate the printed summation");
  add_out_flag(cmd_count, nc);

  // sample
  Common sc;
  long long sc_count = 1;
  auto* cmd_sample = app.add_subcommand("sample", "Draw profiles from a culture");
  add_rule_flags(cmd_sample, sc, false, nullptr);
  cmd_sample->add_option("--culture", sc.culture, "ic|isc");
  cmd_sample->add_option("--count", sc_count, "Number of draws");
  add_seed_flags(cmd_sample, sc);
  add_out_flag(cmd_sample, sc);

  auto add_estimate_flags = [&](CLI::App* cmd, Common& c) {
    cmd->add_option("--c", c.c, "Coalition size");
    cmd->add_option("--tiebreak", c.tiebreak, "for|against");
    cmd->add_option("--culture", c.culture, "ic|isc");
    cmd->add_option("--trials", c.trials, "Monte Carlo trials");
    cmd->add_option("--threads", c.threads, "Worker threads");
    cmd->add_option("--oracle-budget", c.oracle_budget, "Oracle evaluation cap");
    cmd->add_flag("--resolve-unknown", c.resolve_unknown,
                  "Resolve classifier-unknown trials with the oracle");
    cmd->add_flag("--strict", c.strict, "Exit 4 on exhausted budgets");
    add_seed_flags(cmd, c);
    add_out_flag(cmd, c);
  };

  // estimate
  Common ec;
  auto* cmd_estimate = app.add_subcommand("estimate", "Monte Carlo proof fraction");
  add_rule_flags(cmd_estimate, ec, false, nullptr);
  add_estimate_flags(cmd_estimate, ec);

  // sweep
  Common wc;
  std::string wc_axis = "n";
  std::vector<long long> wc_values;
  auto* cmd_sweep = app.add_subcommand("sweep", "Estimate along an axis");
  add_rule_flags(cmd_sweep, wc, false, nullptr);
  add_estimate_flags(cmd_sweep, wc);
  cmd_sweep->add_option("--axis", wc_axis, "n|m")->required();
  cmd_sweep->add_option("--values", wc_values, "Axis values")->required()->delimiter(',');

  // verify-bounds
  Common bc;
  std::string bc_preset, bc_bound_id, bc_mode = "exhaustive";
  double bc_lambda = 1.0;
  auto* cmd_bounds = app.add_subcommand("verify-bounds", "Check theorem lower bounds");
  cmd_bounds->add_option("--preset", bc_preset, "paper-grid");
  cmd_bounds->add_option("--bound-id", bc_bound_id,
                         "plurality-cp|plurality-e|veto-cp|veto-e|kapproval-f|borda-limit");
  cmd_bounds->add_option("--n", bc.n, "Number of voters");
  cmd_bounds->add_option("--m", bc.m, "Number of candidates");
  cmd_bounds->add_option("--c", bc.c, "Coalition size");
  cmd_bounds->add_option("--k", bc.k, "Approved count for kapproval");
  cmd_bounds->add_option("--lambda", bc_lambda, "m/n ratio for the limit bound");
  cmd_bounds->add_option("--mode", bc_mode, "exhaustive|montecarlo");
  cmd_bounds->add_option("--tiebreak", bc.tiebreak, "for|against");
  cmd_bounds->add_option("--trials", bc.trials, "Monte Carlo trials");
  cmd_bounds->add_option("--oracle-budget", bc.oracle_budget, "Oracle evaluation cap");
  add_seed_flags(cmd_bounds, bc);
  add_out_flag(cmd_bounds, bc);

  // harness
  Common hc;
  std::string hc_preset;
  auto* cmd_harness = app.add_subcommand("harness", "Classifier vs oracle agreement");
  cmd_harness->add_option("--preset", hc_preset, "paper-grid");
  cmd_harness->add_option("--rule", hc.rule, "plurality|veto|kapproval|borda");
  cmd_harness->add_option("--k", hc.k, "Approved count for kapproval");
  cmd_harness->add_option("--n", hc.n, "Number of voters");
  cmd_harness->add_option("--m", hc.m, "Number of candidates");
  cmd_harness->add_option("--c", hc.c, "Coalition size");
  cmd_harness->add_option("--tiebreak", hc.tiebreak, "for|against");
  cmd_harness->add_option("--oracle-budget", hc.oracle_budget, "Oracle evaluation cap");
  add_out_flag(cmd_harness, hc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (cmd_classify->parsed()) {
    json req = base_request(cc);
    req["scores"] = cc_scores;
    req["c"] = cc.c;
    req["tiebreak"] = cc.tiebreak;
    req["oracle"] = cc_oracle;
    req["oracle_budget"] = cc.oracle_budget;
    return run_op("classify", req, cc, command_line);
  }
  if (cmd_oracle->parsed()) {
    json req = base_request(oc);
    req["scores"] = oc_scores;
    req["c"] = oc.c;
    req["tiebreak"] = oc.tiebreak;
    req["oracle_budget"] = oc.oracle_budget;
    return run_op("oracle", req, oc, command_line);
  }
  if (cmd_count->parsed()) {
    json req = base_request(nc);
    req["audit"] = nc_audit;
    return run_op("count", req, nc, command_line);
  }
  if (cmd_sample->parsed()) {
    json req = base_request(sc);
    req["culture"] = sc.culture;
    req["count"] = sc_count;
    req["seed"] = sc.seed;
    req["stream"] = sc.stream;
    return run_op("sample", req, sc, command_line);
  }
  if (cmd_estimate->parsed() || cmd_sweep->parsed()) {
    const bool is_sweep = cmd_sweep->parsed();
    Common& c = is_sweep ? wc : ec;
    json req = base_request(c);
    req["c"] = c.c;
    req["tiebreak"] = c.tiebreak;
    req["culture"] = c.culture;
    req["trials"] = c.trials;
    req["seed"] = c.seed;
    req["stream"] = c.stream;
    req["threads"] = c.threads;
    req["oracle_budget"] = c.oracle_budget;
    req["resolve_unknown"] = c.resolve_unknown;
    if (is_sweep) {
      req["axis"] = wc_axis;
      req["values"] = wc_values;
      return run_op("sweep", req, c, command_line);
    }
    return run_op("estimate", req, c, command_line);
  }
  if (cmd_bounds->parsed()) {
    json req;
    if (!bc_preset.empty()) {
      req["preset"] = bc_preset;
    } else if (!bc_bound_id.empty()) {
      req["requests"] = json::array({json{{"bound_id", bc_bound_id},
                                          {"n", bc.n},
                                          {"m", bc.m},
                                          {"c", bc.c},
                                          {"k", bc.k},
                                          {"lambda", bc_lambda},
                                          {"mode", bc_mode},
                                          {"tiebreak", bc.tiebreak},
                                          {"trials", bc.trials},
                                          {"seed", bc.seed},
                                          {"oracle_budget", bc.oracle_budget}}});
    } else {
      std::cerr << "error: need --preset or --bound-id\n";
      return 2;
    }
    return run_op("verify_bounds", req, bc, command_line);
  }
  if (cmd_harness->parsed()) {
    json req;
    if (!hc_preset.empty()) {
      req["preset"] = hc_preset;
    } else if (hc.m > 0) {
      req["points"] = json::array({json{{"rule", hc.rule},
                                        {"k", hc.k},
                                        {"m", hc.m},
                                        {"n", hc.n},
                                        {"c", hc.c},
                                        {"tiebreak", hc.tiebreak}}});
    } else {
      std::cerr << "error: need --preset or --rule/--n/--m\n";
      return 2;
    }
    req["oracle_budget"] = hc.oracle_budget;
    return run_op("harness", req, hc, command_line);
  }
  return 2;
}
