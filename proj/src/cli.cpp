#include "dioph/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dioph/approxsets.hpp"
#include "dioph/audit.hpp"
#include "dioph/campaigns.hpp"
#include "dioph/circleset.hpp"
#include "dioph/numtheory.hpp"
#include "dioph/overlap.hpp"

namespace dioph::cli {

using Json = nlohmann::ordered_json;

namespace {

std::uint64_t to_natural(const std::string& flag, const std::string& text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) throw UsageError(flag + ": expected a natural number, got '" + text + "'");
  return v;
}

Rational to_rational_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

struct FlagSpec {
  std::string name;  // without the leading dashes
  std::string help;
};

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> table = {
      {"set-measure", "measure of one reduced set E_n"},
      {"overlap", "intersection of E_m and E_n split into B1 and B2"},
      {"quasi-independence", "second moment against the first moment squared"},
      {"borel-cantelli", "S1^2 / S2 against the measure of the union"},
      {"union-growth", "measure of the union of E_n for M <= n <= N"},
      {"theorem3-check", "pairs with a large gcd in the support of psi"},
      {"lemma-scan", "support size and measure lower bounds over a range of n"},
      {"proof-audit", "step by step check of the support size bound"},
      {"primorial-optimality", "smallest cutoff reaching eps n on primorials"},
      {"blocks", "block sums over the ranges 2^2^k < n <= 2^2^(k+1)"},
      {"psi-diagnostics", "partial sums of psi and its weighted variants"},
  };
  return table;
}

// Flags accepted by each subcommand, beyond the global ones.
const std::map<std::string, std::vector<FlagSpec>>& flag_table() {
  static const std::map<std::string, std::vector<FlagSpec>> table = {
      {"set-measure", {{"n", "modulus n"}, {"psi", "approximation function"}, {"policy", "reduction policy"}}},
      {"overlap",
       {{"m", "smaller modulus"}, {"n", "larger modulus"}, {"psi", "approximation function"},
        {"policy", "reduction policy"}}},
      {"quasi-independence",
       {{"N", "largest modulus"}, {"eps", "exponent in (0, 1)"}, {"psi", "approximation function"},
        {"policy", "reduction policy (default log:eps/4)"}, {"pair-cap", "largest N audited pair by pair"}}},
      {"borel-cantelli", {{"N", "largest modulus"}, {"psi", "approximation function"}, {"policy", "reduction policy"}}},
      {"union-growth",
       {{"M", "smallest modulus"}, {"N", "largest modulus"}, {"every", "row stride"},
        {"psi", "approximation function"}, {"policy", "reduction policy"}}},
      {"lemma-scan",
       {{"eps", "exponent in (0, 1)"}, {"n-min", "first n"}, {"n-max", "last n"}, {"psi", "approximation function"}}},
      {"proof-audit",
       {{"eps", "exponent in (0, 1)"}, {"n", "single n (per-step rows)"}, {"n-min", "first n"}, {"n-max", "last n"}}},
      {"primorial-optimality",
       {{"eps", "exponent in (0, 1)"}, {"k-max", "largest primorial index"}, {"scan-limit", "largest D searched"}}},
      {"blocks",
       {{"psi", "approximation function"}, {"eps", "exponent"}, {"k-max", "largest block index"},
        {"cap", "largest n summed"}}},
      {"theorem3-check",
       {{"psi", "approximation function"}, {"eps", "exponent"}, {"N", "largest modulus"},
        {"pair-cap", "largest support cross-checked exhaustively"}}},
      {"psi-diagnostics", {{"psi", "approximation function"}, {"N", "largest modulus"}, {"eps", "exponent"}}},
  };
  return table;
}

std::optional<std::uint64_t> Command::*natural_field(const std::string& flag) {
  static const std::map<std::string, std::optional<std::uint64_t> Command::*> fields = {
      {"m", &Command::m},         {"n", &Command::n},           {"M", &Command::M},
      {"N", &Command::N},         {"n-min", &Command::n_min},   {"n-max", &Command::n_max},
      {"k-max", &Command::k_max}, {"cap", &Command::cap},       {"pair-cap", &Command::pair_cap},
      {"scan-limit", &Command::scan_limit}, {"every", &Command::every},
  };
  auto it = fields.find(flag);
  return it == fields.end() ? nullptr : it->second;
}

void apply_flag(Command& cmd, const std::string& flag, const std::string& value) {
  if (auto field = natural_field(flag)) {
    cmd.*field = to_natural("--" + flag, value);
  } else if (flag == "eps") {
    cmd.eps = to_rational_flag("--eps", value);
  } else if (flag == "psi") {
    try {
      cmd.psi = PsiSpec::parse(value).to_string();
    } catch (const std::exception& e) {
      throw UsageError(std::string("--psi: ") + e.what());
    }
  } else if (flag == "policy") {
    try {
      cmd.policy = ReductionPolicy::parse(value).to_string();
    } catch (const std::exception& e) {
      throw UsageError(std::string("--policy: ") + e.what());
    }
  }
}

bool eps_in_unit_interval(const Command& cmd) {
  return cmd.name == "lemma-scan" || cmd.name == "proof-audit" || cmd.name == "primorial-optimality" ||
         cmd.name == "quasi-independence";
}

void validate(const Command& cmd) {
  if (cmd.precision_bits < kMinPrecisionBits)
    throw UsageError("--precision-bits must be at least " + std::to_string(kMinPrecisionBits));
  if (cmd.prime_limit < 2 || cmd.prime_limit > 0xFFFFFFFFull) throw UsageError("--prime-limit must lie in [2, 2^32)");
  if (cmd.eps) {
    if (*cmd.eps <= 0) throw UsageError("--eps must be positive");
    if (eps_in_unit_interval(cmd) && *cmd.eps >= 1) throw UsageError("--eps must lie in (0, 1)");
  }
  auto positive = [](const std::optional<std::uint64_t>& v, const char* flag) {
    if (v && *v == 0) throw UsageError(std::string(flag) + " must be positive");
  };
  positive(cmd.m, "--m");
  positive(cmd.n, "--n");
  positive(cmd.M, "--M");
  positive(cmd.N, "--N");
  positive(cmd.n_min, "--n-min");
  positive(cmd.every, "--every");
  if (cmd.name == "set-measure" && !cmd.n) throw UsageError("set-measure requires --n");
  if (cmd.name == "overlap") {
    if (!cmd.m || !cmd.n) throw UsageError("overlap requires --m and --n");
    if (*cmd.m >= *cmd.n) throw UsageError("overlap requires m < n");
  }
  if (cmd.n_min && cmd.n_max && *cmd.n_min > *cmd.n_max) throw UsageError("--n-min exceeds --n-max");
  if (cmd.M && cmd.N && *cmd.M > *cmd.N) throw UsageError("--M exceeds --N");
  if (cmd.name == "proof-audit") {
    if (cmd.n && (cmd.n_min || cmd.n_max)) throw UsageError("proof-audit takes --n or a range, not both");
    if (cmd.n && *cmd.n < 3) throw UsageError("proof-audit requires n >= 3");
    if (cmd.n_min && *cmd.n_min < 3) throw UsageError("proof-audit requires n-min >= 3");
  }
  if (cmd.name == "primorial-optimality" && cmd.k_max && (*cmd.k_max == 0 || *cmd.k_max > kMaxPrimorialIndex))
    throw UsageError("--k-max must lie in [1, 40]");
  if (cmd.name == "blocks" && cmd.k_max && (*cmd.k_max == 0 || *cmd.k_max > kMaxBlockIndex))
    throw UsageError("--k-max must lie in [1, 4]");
  if (cmd.name == "blocks" && cmd.cap && *cmd.cap < 5) throw UsageError("--cap must be at least 5");
  if (cmd.name == "theorem3-check" && cmd.N && *cmd.N < 3) throw UsageError("theorem3-check requires N >= 3");
  if (cmd.name == "psi-diagnostics" && cmd.N && *cmd.N < 2) throw UsageError("psi-diagnostics requires N >= 2");
}

std::unique_ptr<CLI::App> build_app(Command& cmd, std::map<std::string, std::map<std::string, std::string>>& raw) {
  auto owner = std::make_unique<CLI::App>("Exact experiments on reduced Diophantine approximation sets", "dioph");
  CLI::App& app = *owner;
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--threads", cmd.threads, "worker threads (0 = all cores)");
  app.add_option("--precision-bits", cmd.precision_bits, "working precision for real quantities");
  app.add_option("--prime-limit", cmd.prime_limit, "sieve limit");
  app.add_option("--out", cmd.out, "CSV file; the JSON summary goes to <out>.json");
  app.add_flag("--timing", cmd.timing, "include runtime in the JSON summary");
  for (const auto& [name, flags] : flag_table()) {
    CLI::App* sub = app.add_subcommand(name, descriptions().at(name));
    for (const auto& f : flags) sub->add_option("--" + f.name, raw[name][f.name], f.help);
  }
  return owner;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, flags] : flag_table()) out.push_back(name);
    return out;
  }();
  return names;
}

std::string usage() {
  Command scratch;
  std::map<std::string, std::map<std::string, std::string>> raw;
  return build_app(scratch, raw)->help();
}

Command parse(const std::vector<std::string>& args) {
  Command cmd;
  std::map<std::string, std::map<std::string, std::string>> raw;
  auto owner = build_app(cmd, raw);
  CLI::App& app = *owner;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help(), true);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (const auto* sub : app.get_subcommands()) {
    cmd.name = sub->get_name();
    for (const auto& f : flag_table().at(cmd.name)) {
      if (sub->count("--" + f.name) > 0) apply_flag(cmd, f.name, raw[cmd.name][f.name]);
    }
  }
  validate(cmd);
  return cmd;
}

std::vector<std::string> to_args(const Command& cmd) {
  std::vector<std::string> args = {cmd.name};
  auto add = [&](const std::string& flag, const std::string& value) {
    args.push_back("--" + flag);
    args.push_back(value);
  };
  for (const auto& f : flag_table().at(cmd.name)) {
    if (auto field = natural_field(f.name)) {
      if (const auto& v = cmd.*field) add(f.name, std::to_string(*v));
    } else if (f.name == "eps" && cmd.eps) {
      add("eps", to_string(*cmd.eps));
    } else if (f.name == "psi" && cmd.psi) {
      add("psi", *cmd.psi);
    } else if (f.name == "policy" && cmd.policy) {
      add("policy", *cmd.policy);
    }
  }
  add("threads", std::to_string(cmd.threads));
  add("precision-bits", std::to_string(cmd.precision_bits));
  add("prime-limit", std::to_string(cmd.prime_limit));
  if (!cmd.out.empty()) add("out", cmd.out);
  if (cmd.timing) args.push_back("--timing");
  return args;
}

// --- execution ---------------------------------------------------------------

namespace {

struct Outcome {
  std::string csv;
  Json summary = Json::object();
  bool invariants_ok = true;
};

std::string opt_str(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : "none"; }

PsiSpec psi_of(const Command& cmd, const char* fallback) { return PsiSpec::parse(cmd.psi.value_or(fallback)); }

ReductionPolicy policy_of(const Command& cmd, const char* fallback) {
  return ReductionPolicy::parse(cmd.policy.value_or(fallback));
}

std::string row(std::initializer_list<std::string> cells) {
  std::string out;
  for (const auto& c : cells) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out + "\n";
}

std::string yes(bool b) { return b ? "true" : "false"; }

Outcome run_set_measure(const Command& cmd) {
  const PsiSpec psi = psi_of(cmd, "const:1/10");
  const ReductionPolicy policy = policy_of(cmd, "full");
  const std::uint64_t n = *cmd.n;
  const std::uint64_t cut = policy.dcut(n);
  const SupportSet s = support(n, cut);
  const Rational closed = measure_E(n, psi, policy);
  const CircleIntervalSet set = build_E(n, psi, policy);
  Outcome o;
  o.invariants_ok = set.measure() == closed;
  o.csv = "n,psi,policy,dcut,cardinality,measure,arcs\n" +
          row({std::to_string(n), psi.to_string(), policy.to_string(), std::to_string(cut),
               std::to_string(s.cardinality), to_string(closed), std::to_string(set.size())});
  o.summary["measure"] = to_string(closed);
  o.summary["cardinality"] = s.cardinality;
  o.summary["materialized_matches"] = o.invariants_ok;
  return o;
}

Outcome run_overlap(const Command& cmd) {
  const PsiSpec psi = psi_of(cmd, "const:1/10");
  const ReductionPolicy policy = policy_of(cmd, "full");
  const OverlapReport r = intersect_pair(*cmd.m, *cmd.n, psi, policy);
  Outcome o;
  o.invariants_ok = r.consistent();
  o.csv = overlap_csv_header() + "\n" + to_csv_row(r) + "\n";
  o.summary["total"] = to_string(r.total);
  o.summary["b1"] = to_string(r.b1);
  o.summary["b2"] = to_string(r.b2);
  o.summary["b1_bound"] = to_string(r.b1_bound);
  o.summary["coinciding_centers"] = r.coinciding_centers;
  o.summary["decomposition_ok"] = r.decomposition_ok();
  o.summary["b2_formula_ok"] = r.b2_formula_ok();
  o.summary["b1_within_bound"] = r.b1_within_bound();
  o.summary["forced_zero_ok"] = r.forced_zero_ok();
  return o;
}

Outcome run_quasi(const Command& cmd) {
  const Rational eps = cmd.eps.value_or(Rational(1, 2));
  const PsiSpec psi = psi_of(cmd, "const:1/2");
  const ReductionPolicy policy = cmd.policy ? ReductionPolicy::parse(*cmd.policy) : ReductionPolicy::log_power(eps / 4);
  const std::uint64_t N = cmd.N.value_or(1000);
  const auto q = quasi_independence(N, psi, policy, eps, cmd.pair_cap.value_or(kDefaultPairAuditCap));
  Outcome o;
  o.invariants_ok = q.first_moment_ok && q.pair_audit_ok && q.b1_aggregate_ok();
  o.csv =
      "N,eps,policy,s1,s2,sum_b1,sum_b2,b1_bound,sum_psi,log_weighted,partial_summation,constant,bound,ratio,"
      "within_bound,partial_summation_ok,b1_aggregate_ok,b2_chain_ok,first_moment_ok,pair_audit_run,pair_audit_ok\n" +
      row({std::to_string(N), to_string(eps), policy.to_string(), to_string(q.s1), to_string(q.s2),
           to_string(q.sum_b1), to_string(q.sum_b2), to_string(q.b1_bound), to_string(q.sum_psi),
           q.log_weighted.to_string(), q.partial_summation.to_string(), to_string(q.constant), q.bound.to_string(),
           q.ratio.to_string(), yes(q.within_bound()), yes(q.partial_summation_ok()), yes(q.b1_aggregate_ok()),
           yes(q.b2_chain_ok()), yes(q.first_moment_ok), yes(q.pair_audit_run), yes(q.pair_audit_ok)});
  o.summary["policy"] = policy.to_string();
  o.summary["s1"] = to_string(q.s1);
  o.summary["s2"] = to_string(q.s2);
  o.summary["ratio_s2_over_s1_squared"] = q.ratio.to_string();
  o.summary["bound"] = q.bound.to_string();
  o.summary["within_bound"] = q.within_bound();
  o.summary["b1_aggregate_ok"] = q.b1_aggregate_ok();
  o.summary["b2_chain_ok"] = q.b2_chain_ok();
  o.summary["first_moment_ok"] = q.first_moment_ok;
  o.summary["pair_audit_ok"] = q.pair_audit_ok;
  return o;
}

Outcome run_borel_cantelli(const Command& cmd) {
  const PsiSpec psi = psi_of(cmd, "const:1/2");
  const ReductionPolicy policy = policy_of(cmd, "log:1/4");
  const std::uint64_t N = cmd.N.value_or(1000);
  const auto b = borel_cantelli_bound(N, psi, policy);
  Outcome o;
  o.invariants_ok = b.ratio_below_union() && b.union_below_bound() && b.union_routes_agree;
  o.csv = "N,psi,policy,s1,s2,ratio,union_measure,ratio_below_union,union_below_bound,union_routes_agree\n" +
          row({std::to_string(N), psi.to_string(), policy.to_string(), to_string(b.s1), to_string(b.s2),
               to_string(b.ratio), to_string(b.union_measure), yes(b.ratio_below_union()),
               yes(b.union_below_bound()), yes(b.union_routes_agree)});
  o.summary["ratio"] = to_string(b.ratio);
  o.summary["ratio_approx"] = Real(b.ratio).to_string();
  o.summary["union_measure"] = to_string(b.union_measure);
  o.summary["ratio_below_union"] = b.ratio_below_union();
  o.summary["union_below_bound"] = b.union_below_bound();
  o.summary["union_routes_agree"] = b.union_routes_agree;
  return o;
}

Outcome run_union_growth(const Command& cmd) {
  const PsiSpec psi = psi_of(cmd, "const:1/10");
  const ReductionPolicy policy = policy_of(cmd, "full");
  const std::uint64_t M = cmd.M.value_or(1);
  const std::uint64_t N = cmd.N.value_or(100);
  const std::uint64_t every = cmd.every.value_or(1);
  Outcome o;
  o.csv = "M,N,union_measure,max_single_measure\n";
  CircleIntervalSet acc;
  Rational previous(0), max_single(0);
  bool monotone = true, dominates = true;
  for (std::uint64_t n = M; n <= N; ++n) {
    const CircleIntervalSet e = build_E(n, psi, policy);
    max_single = std::max(max_single, e.measure());
    acc = unite(acc, e);
    const Rational u = acc.measure();
    monotone = monotone && u >= previous;
    dominates = dominates && u >= max_single;
    previous = u;
    if ((n - M) % every == 0 || n == N)
      o.csv += row({std::to_string(M), std::to_string(n), to_string(u), to_string(max_single)});
  }
  const bool sweep_agrees = previous == union_measure(M, N, psi, policy);
  o.invariants_ok = monotone && dominates && sweep_agrees;
  o.summary["final_union_measure"] = to_string(previous);
  o.summary["monotone"] = monotone;
  o.summary["dominates_single_sets"] = dominates;
  o.summary["sweep_agrees"] = sweep_agrees;
  return o;
}

CampaignConfig config_of(const Command& cmd, const char* psi_fallback) {
  CampaignConfig cfg;
  if (cmd.eps) cfg.eps = *cmd.eps;
  if (cmd.n_min) cfg.n_min = *cmd.n_min;
  if (cmd.n_max) cfg.n_max = *cmd.n_max;
  cfg.psi = psi_of(cmd, psi_fallback);
  cfg.threads = cmd.threads;
  return cfg;
}

Outcome run_lemma_scan(const Command& cmd) {
  const CampaignConfig cfg = config_of(cmd, "const:1/2");
  const LemmaScan scan = lemma_corollary_scan(cfg);
  Outcome o;
  std::string csv = scan_csv_header() + "\n";
  bool phi_floor = true;
  for (const auto& r : scan.records) {
    csv += to_csv_row(r) + "\n";
    phi_floor = phi_floor && r.cardinality >= r.phi;
  }
  o.csv = std::move(csv);
  o.invariants_ok = phi_floor;
  o.summary["eps"] = to_string(cfg.eps);
  o.summary["n_min"] = cfg.n_min;
  o.summary["n_max"] = cfg.n_max;
  o.summary["lemma_failures"] = scan.lemma_failures;
  o.summary["corollary_failures"] = scan.corollary_failures;
  o.summary["largest_lemma_failure"] = opt_str(scan.largest_lemma_failure);
  o.summary["largest_corollary_failure"] = opt_str(scan.largest_corollary_failure);
  o.summary["min_lemma_slack"] = to_string(scan.min_lemma_slack);
  o.summary["min_lemma_slack_n"] = scan.min_lemma_slack_n;
  o.summary["min_lemma_ratio"] = Real(scan.min_lemma_ratio).to_string();
  o.summary["min_lemma_ratio_n"] = scan.min_lemma_ratio_n;
  o.summary["min_corollary_slack"] = to_string(scan.min_corollary_slack);
  o.summary["min_corollary_slack_n"] = scan.min_corollary_slack_n;
  o.summary["cardinality_at_least_phi"] = phi_floor;
  return o;
}

Outcome run_proof_audit(const Command& cmd) {
  Outcome o;
  if (cmd.n) {
    const ProofAudit a = proof_step_audit(*cmd.n, cmd.eps.value_or(Rational(1, 2)));
    o.csv = proof_audit_csv_header() + "\n" + to_csv_rows(a);
    o.invariants_ok = a.chain_holds();
    o.summary["n"] = a.n;
    o.summary["dcut"] = a.dcut;
    o.summary["chain_holds"] = a.chain_holds();
    Json failing = Json::array();
    for (const auto& s : a.steps)
      if (!s.holds) failing.push_back(s.name);
    o.summary["failing_steps"] = failing;
    return o;
  }
  CampaignConfig cfg = config_of(cmd, "const:1/2");
  if (!cmd.n_min) cfg.n_min = 1000;
  if (!cmd.n_max) cfg.n_max = 10000;
  const ProofAuditRange range = proof_audit_range(cfg);
  o.csv = proof_tally_csv_header() + "\n" + to_csv_rows(range);
  o.invariants_ok = range.hard_failures() == 0;
  o.summary["eps"] = to_string(range.eps);
  o.summary["n_min"] = range.n_min;
  o.summary["n_max"] = range.n_max;
  o.summary["hard_failures"] = range.hard_failures();
  Json steps = Json::object();
  for (const auto& t : range.tallies) {
    steps[t.name] = {{"failures", t.failures},
                     {"informational", t.informational},
                     {"largest_failing_n", opt_str(t.largest_failing_n)},
                     {"min_slack", t.min_slack.to_string()}};
  }
  o.summary["steps"] = steps;
  return o;
}

Outcome run_primorial(const Command& cmd) {
  const Rational eps = cmd.eps.value_or(Rational(1, 2));
  const auto rows = primorial_optimality(eps, cmd.k_max.value_or(10), cmd.scan_limit.value_or(10'000'000));
  Outcome o;
  o.csv = primorial_csv_header() + "\n";
  bool identity = true;
  for (const auto& r : rows) {
    o.csv += to_csv_row(r) + "\n";
    identity = identity && r.identity_ok;
  }
  o.invariants_ok = identity;
  o.summary["eps"] = to_string(eps);
  o.summary["rows"] = rows.size();
  o.summary["identity_ok"] = identity;
  return o;
}

Outcome run_blocks(const Command& cmd) {
  const Rational eps = cmd.eps.value_or(Rational(1));
  const PsiSpec psi = psi_of(cmd, "const:1/2");
  const auto k_max = static_cast<unsigned>(cmd.k_max.value_or(3));
  const BlockAnalysis b = block_divergence(psi, eps, k_max, cmd.cap.value_or(kDefaultBlockCap));
  Outcome o;
  o.csv = block_csv_header() + "\n";
  for (const auto& r : b.rows) o.csv += to_csv_row(r) + "\n";
  o.invariants_ok = b.partition_exact;
  o.summary["head_psi"] = to_string(b.head_psi);
  o.summary["partition_exact"] = b.partition_exact;
  o.summary["log_weighted_gap"] = b.log_weighted_gap.to_string();
  Json conds = Json::array();
  for (const auto& r : b.rows)
    conds.push_back({{"k", r.k}, {"block", r.block_condition()}, {"cumulative", r.cumulative_condition()},
                     {"truncated", r.truncated}});
  o.summary["blocks"] = conds;
  return o;
}

Outcome run_theorem3(const Command& cmd) {
  const Rational eps = cmd.eps.value_or(Rational(1, 2));
  const PsiSpec psi = psi_of(cmd, "primes:1/2");
  const auto t = theorem3_check(psi, eps, cmd.N.value_or(1000), cmd.pair_cap.value_or(kDefaultTheorem3PairCap));
  Outcome o;
  o.csv = theorem3_csv_header() + "\n";
  for (const auto& v : t.violations) o.csv += to_csv_row(v) + "\n";
  o.invariants_ok = t.b2_mismatches == 0;
  o.summary["support_size"] = t.support_size;
  o.summary["violations"] = t.violations.size();
  o.summary["pairs_cross_checked"] = t.pairs_cross_checked;
  o.summary["exhaustive_cross_check"] = t.exhaustive_cross_check;
  o.summary["b2_mismatches"] = t.b2_mismatches;
  return o;
}

Outcome run_psi_diagnostics(const Command& cmd) {
  const Rational eps = cmd.eps.value_or(Rational(1, 2));
  const PsiSpec psi = psi_of(cmd, "const:1/2");
  const auto d = psi_diagnostics(psi, cmd.N.value_or(1000), eps);
  Outcome o;
  o.csv = "N,eps,psi,sum_psi,sum_psi_phi,sum_psi_log_weighted\n" +
          row({std::to_string(d.N), to_string(d.eps), psi.to_string(), to_string(d.sum_psi), to_string(d.sum_psi_phi),
               d.sum_psi_log_weighted.to_string()});
  o.summary["sum_psi"] = to_string(d.sum_psi);
  o.summary["sum_psi_log_weighted"] = d.sum_psi_log_weighted.to_string();
  return o;
}

Outcome dispatch(const Command& cmd) {
  static const std::map<std::string, std::function<Outcome(const Command&)>> handlers = {
      {"set-measure", run_set_measure},   {"overlap", run_overlap},
      {"quasi-independence", run_quasi},  {"borel-cantelli", run_borel_cantelli},
      {"union-growth", run_union_growth}, {"lemma-scan", run_lemma_scan},
      {"proof-audit", run_proof_audit},   {"primorial-optimality", run_primorial},
      {"blocks", run_blocks},             {"theorem3-check", run_theorem3},
      {"psi-diagnostics", run_psi_diagnostics},
  };
  auto it = handlers.find(cmd.name);
  if (it == handlers.end()) throw UsageError("unknown subcommand '" + cmd.name + "'");
  return it->second(cmd);
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
  f.close();
  return static_cast<bool>(f);
}

}  // namespace

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  set_working_precision(cmd.precision_bits);
  set_prime_limit(cmd.prime_limit);
  audit::drain();
  const auto start = std::chrono::steady_clock::now();
  Outcome o = dispatch(cmd);

  Json summary = Json::object();
  summary["command"] = cmd.name;
  std::string args;
  for (const auto& a : to_args(cmd)) args += (args.empty() ? "" : " ") + a;
  summary["args"] = args;
  summary["precision_bits"] = cmd.precision_bits;
  summary["invariants_ok"] = o.invariants_ok;
  for (auto& [key, value] : o.summary.items()) summary[key] = value;
  summary["warnings"] = audit::drain();
  if (cmd.timing) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    summary["runtime_seconds"] = elapsed.count();
  }
  const std::string json = summary.dump(2) + "\n";

  if (cmd.out.empty()) {
    out << o.csv << std::flush;
    err << json << std::flush;
    if (!out || !err) return 1;
  } else if (!write_file(cmd.out, o.csv) || !write_file(cmd.out + ".json", json)) {
    err << "error: cannot write " << cmd.out << "\n";
    return 1;
  }
  return o.invariants_ok ? 0 : 1;
}

int main_entry(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  Command cmd;
  try {
    cmd = parse(args);
  } catch (const UsageError& e) {
    if (e.help) {
      std::cout << e.what();
      return 0;
    }
    std::cerr << "error: " << e.what() << "\n\n" << usage();
    return 2;
  }
  try {
    return run(cmd, std::cout, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dioph::cli
