#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dioph/cli.hpp"
#include "json.hpp"

using namespace dioph;
using dioph::cli::Command;
using dioph::cli::UsageError;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_args(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(cli::parse(args), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, ParseOverlap) {
  const Command c = cli::parse({"overlap", "--m", "2", "--n", "3", "--psi", "const:1/10", "--policy", "full"});
  EXPECT_EQ(c.name, "overlap");
  EXPECT_EQ(c.m, 2u);
  EXPECT_EQ(c.n, 3u);
  EXPECT_EQ(c.psi, "const:1/10");
  EXPECT_EQ(c.policy, "full");
  EXPECT_EQ(c.precision_bits, 128u);
}

TEST(Cli, ParseLemmaScan) {
  const Command c =
      cli::parse({"lemma-scan", "--eps", "1/2", "--n-min", "1000", "--n-max", "100000", "--out", "scan.csv"});
  EXPECT_EQ(c.eps, Rational(1, 2));
  EXPECT_EQ(c.n_min, 1000u);
  EXPECT_EQ(c.n_max, 100000u);
  EXPECT_EQ(c.out, "scan.csv");
}

TEST(Cli, UsageErrors) {
  EXPECT_THROW(cli::parse({"overlap", "--m", "5", "--n", "3"}), UsageError);
  EXPECT_THROW(cli::parse({"overlap", "--m", "3", "--n", "3"}), UsageError);
  EXPECT_THROW(cli::parse({"overlap", "--m", "2", "--n", "3", "--bogus", "1"}), UsageError);
  EXPECT_THROW(cli::parse({"lemma-scan", "--eps", "0.5"}), UsageError);
  EXPECT_THROW(cli::parse({"lemma-scan", "--eps", "3/2"}), UsageError);
  EXPECT_THROW(cli::parse({"blocks", "--psi", "const:x"}), UsageError);
  EXPECT_THROW(cli::parse({"blocks", "--k-max", "5"}), UsageError);
  EXPECT_THROW(cli::parse({"frobnicate"}), UsageError);
  EXPECT_THROW(cli::parse({}), UsageError);
  EXPECT_THROW(cli::parse({"overlap", "--m", "2", "--n", "3", "--precision-bits", "64"}), UsageError);
  EXPECT_THROW(cli::parse({"set-measure", "--n", "-4"}), UsageError);
  try {
    cli::parse({"--help"});
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_TRUE(e.help);
  }
}

TEST(Cli, ArgsRoundTrip) {
  const std::vector<std::vector<std::string>> invocations = {
      {"overlap", "--m", "2", "--n", "3", "--psi", "const:2/20", "--policy", "log:2/8"},
      {"set-measure", "--n", "6", "--policy", "cut:2", "--threads", "2"},
      {"lemma-scan", "--eps", "1/2", "--n-min", "10", "--n-max", "20", "--out", "x.csv", "--timing"},
      {"quasi-independence", "--N", "50", "--pair-cap", "10", "--precision-bits", "200"},
      {"theorem3-check", "--psi", "indicator:c=1/2,support=20;10", "--eps", "1", "--N", "20"},
      {"proof-audit", "--n", "1000", "--eps", "3/4"},
      {"primorial-optimality", "--k-max", "6", "--scan-limit", "1000"},
      {"union-growth", "--M", "2", "--N", "30", "--every", "5"},
      {"blocks", "--k-max", "2", "--cap", "100"},
      {"borel-cantelli", "--N", "12", "--prime-limit", "100000"},
      {"psi-diagnostics", "--N", "12", "--psi", "power:c=1,alpha=-1"},
  };
  for (const auto& args : invocations) {
    const Command once = cli::parse(args);
    const auto printed = cli::to_args(once);
    const Command twice = cli::parse(printed);
    EXPECT_EQ(once, twice) << args[0];
    EXPECT_EQ(cli::to_args(twice), printed);
  }
  EXPECT_EQ(cli::subcommands().size(), 11u);
}

TEST(Cli, RunOverlap) {
  const auto r = run_args({"overlap", "--m", "2", "--n", "3", "--psi", "const:1/10", "--policy", "full"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "m,n,gcd,total,b1,b2,b1_bound,coinciding_centers,b2_forced_zero\n2,3,1,1/15,0,1/15,2/25,1,false\n");
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j["total"], "1/15");
  EXPECT_EQ(j["b1"], "0");
  EXPECT_EQ(j["b2"], "1/15");
  EXPECT_EQ(j["invariants_ok"], true);
}

TEST(Cli, RunSetMeasure) {
  const auto r = run_args({"set-measure", "--n", "6", "--psi", "const:1/10", "--policy", "cut:2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.err)["measure"], "2/15");
  EXPECT_NE(r.out.find(",2/15,"), std::string::npos);
}

TEST(Cli, RunTheorem3OnPrimes) {
  const auto r = run_args({"theorem3-check", "--psi", "primes:1/2", "--N", "2000"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "m,n,gcd,threshold,near_tie\n");
  EXPECT_EQ(nlohmann::json::parse(r.err)["violations"], 0);
}

TEST(Cli, CsvHeaders) {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"lemma-scan", "--n-min", "10", "--n-max", "12"},
       "n,dcut,cardinality,phi,lower_bound,lemma_pass,measure,corollary_bound,corollary_pass"},
      {{"proof-audit", "--n", "100"}, "n,eps,dcut,d,step,exact,informational,lhs,rhs,holds,slack"},
      {{"proof-audit", "--n-min", "10", "--n-max", "20"},
       "eps,step,exact,informational,checked,failures,min_slack,min_slack_n,largest_failing_n"},
      {{"primorial-optimality", "--k-max", "3"},
       "k,n,phi,largest_prime,identity_checked_up_to,identity_ok,d_star,d_star_cardinality,d_star_ratio,"
       "totient_ratio,exp_neg_gamma"},
      {{"blocks", "--k-max", "1"},
       "k,lo,hi,summed_to,truncated,log_weighted_sum,inv_k2,block_condition,psi_sum,psi_lower_bound,"
       "cumulative_psi,log_n_pow,cumulative_condition"},
      {{"union-growth", "--N", "5"}, "M,N,union_measure,max_single_measure"},
      {{"psi-diagnostics", "--N", "5"}, "N,eps,psi,sum_psi,sum_psi_phi,sum_psi_log_weighted"},
      {{"borel-cantelli", "--N", "5"},
       "N,psi,policy,s1,s2,ratio,union_measure,ratio_below_union,union_below_bound,union_routes_agree"},
  };
  for (const auto& [args, header] : cases) {
    const auto r = run_args(args);
    EXPECT_EQ(r.code, 0) << args[0];
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), header) << args[0];
  }
}

TEST(Cli, Deterministic) {
  const std::vector<std::vector<std::string>> invocations = {
      {"lemma-scan", "--n-min", "100", "--n-max", "400", "--threads", "3"},
      {"quasi-independence", "--N", "60"},
      {"primorial-optimality", "--k-max", "5"},
      {"blocks", "--k-max", "2", "--psi", "logpow:c=1,beta=-1"},
  };
  for (const auto& args : invocations) {
    const auto a = run_args(args);
    const auto b = run_args(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.err, b.err);
  }
}

TEST(Cli, WritesSidecar) {
  const std::string path = testing::TempDir() + "dioph_cli_out.csv";
  const auto r = run_args({"set-measure", "--n", "6", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(read_file(path).substr(0, 5), "n,psi");
  EXPECT_EQ(nlohmann::json::parse(read_file(path + ".json"))["command"], "set-measure");
  const auto bad = run_args({"set-measure", "--n", "6", "--out", "/nonexistent/dir/x.csv"});
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, MainEntryExitCodes) {
  const char* usage[] = {"dioph", "overlap", "--m", "5", "--n", "3"};
  testing::internal::CaptureStderr();
  EXPECT_EQ(cli::main_entry(6, usage), 2);
  const char* ok[] = {"dioph", "overlap", "--m", "2", "--n", "3"};
  testing::internal::CaptureStdout();
  EXPECT_EQ(cli::main_entry(6, ok), 0);
  testing::internal::GetCapturedStdout();
  testing::internal::GetCapturedStderr();
}
