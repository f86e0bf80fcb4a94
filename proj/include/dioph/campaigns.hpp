#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioph/approxsets.hpp"
#include "dioph/rational.hpp"
#include "dioph/real.hpp"

namespace dioph {

struct CampaignConfig {
  Rational eps{1, 2};
  std::uint64_t n_min = 1000;
  std::uint64_t n_max = 100000;
  PsiSpec psi{ConstPsi{Rational(1, 2)}};
  unsigned threads = 0;
};

// --- lemma / corollary scan ------------------------------------------------

struct ScanRecord {
  std::uint64_t n = 0;
  std::uint64_t dcut = 0;
  std::uint64_t cardinality = 0;
  std::uint64_t phi = 0;
  Rational lower_bound;      // n eps / 10
  Rational measure;          // lambda(E_n^D)
  Rational corollary_bound;  // eps psi(n) / 5

  bool lemma_pass() const { return to_rational(cardinality) >= lower_bound; }
  bool corollary_pass() const { return measure >= corollary_bound; }
};

struct LemmaScan {
  Rational eps;
  std::vector<ScanRecord> records;
  std::uint64_t lemma_failures = 0;
  std::uint64_t corollary_failures = 0;
  std::optional<std::uint64_t> largest_lemma_failure;
  std::optional<std::uint64_t> largest_corollary_failure;
  Rational min_lemma_slack;  // min |S| - n eps / 10
  std::uint64_t min_lemma_slack_n = 0;
  Rational min_lemma_ratio;  // min |S| / (n eps / 10)
  std::uint64_t min_lemma_ratio_n = 0;
  Rational min_corollary_slack;
  std::uint64_t min_corollary_slack_n = 0;
};

/// Uses the policy log:eps. Requires 0 < eps < 1 and 1 <= n_min <= n_max.
LemmaScan lemma_corollary_scan(const CampaignConfig& cfg);

std::string scan_csv_header();
std::string to_csv_row(const ScanRecord& r);

// --- proof-step audit --------------------------------------------------------

struct ProofStep {
  std::string name;
  bool exact = true;           // both sides rational
  bool informational = false;  // only claimed for sufficiently large n
  std::string lhs;
  std::string rhs;
  bool holds = false;
  Real slack;  // lhs - rhs
};

struct ProofAudit {
  std::uint64_t n = 0;
  Rational eps;
  std::uint64_t dcut = 0;
  Real d;  // (ln n)^eps
  std::vector<ProofStep> steps;

  /// True when no exact or non-informational step fails.
  bool chain_holds() const;
};

/// Requires n >= 3 and 0 < eps < 1.
ProofAudit proof_step_audit(std::uint64_t n, const Rational& eps);

std::string proof_audit_csv_header();
std::string to_csv_rows(const ProofAudit& audit);

struct StepTally {
  std::string name;
  bool exact = true;
  bool informational = false;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  Real min_slack;
  std::uint64_t min_slack_n = 0;
  std::optional<std::uint64_t> largest_failing_n;
};

struct ProofAuditRange {
  Rational eps;
  std::uint64_t n_min = 0;
  std::uint64_t n_max = 0;
  std::vector<StepTally> tallies;

  std::uint64_t hard_failures() const;
};

ProofAuditRange proof_audit_range(const CampaignConfig& cfg);

std::string proof_tally_csv_header();
std::string to_csv_rows(const ProofAuditRange& range);

// --- primorial optimality ----------------------------------------------------

struct PrimorialRow {
  std::size_t k = 0;
  Integer n;
  Integer phi;
  std::uint64_t largest_prime = 0;
  std::uint64_t identity_checked_up_to = 0;
  bool identity_ok = false;
  std::optional<std::uint64_t> d_star;  // least D with |S(n, D)| >= eps n
  Integer d_star_cardinality;
  Real d_star_ratio;    // D* / (ln n)^(eps e^gamma)
  Real totient_ratio;   // phi(n) ln ln n / n
  Real exp_neg_gamma;
};

inline constexpr std::size_t kMaxPrimorialIndex = 40;

/// Requires 0 < eps < 1 and 1 <= k_max <= 40. D* is searched up to scan_limit.
std::vector<PrimorialRow> primorial_optimality(const Rational& eps, std::size_t k_max,
                                               std::uint64_t scan_limit = 10'000'000);

/// |S(n, D)| = sum_{d | n, d <= D} phi(n/d) for n = primorial(k).
Integer primorial_support_size(std::size_t k, std::uint64_t cut);

std::string primorial_csv_header();
std::string to_csv_row(const PrimorialRow& r);

// --- block analyzer ----------------------------------------------------------

struct BlockRow {
  unsigned k = 0;
  std::uint64_t lo = 0;  // first n of the block, 2^(2^k) + 1
  std::uint64_t hi = 0;  // 2^(2^(k+1))
  std::uint64_t summed_to = 0;
  bool truncated = false;
  Real log_weighted_sum;  // sum psi(n) / (ln n)^eps over the block
  Rational inv_k2;
  Rational psi_sum;       // sum psi(n) over the block
  Real psi_lower_bound;   // 2^(k eps) (ln 2)^eps / k^2
  Rational cumulative_psi;  // sum_{n <= summed_to} psi(n)
  Real log_n_pow;           // (ln summed_to)^(eps/2)

  bool block_condition() const { return log_weighted_sum >= inv_k2; }
  bool cumulative_condition() const { return Real(cumulative_psi) >= log_n_pow; }
};

struct BlockAnalysis {
  std::vector<BlockRow> rows;
  Rational head_psi;  // sum_{n <= 4} psi(n)
  bool partition_exact = false;  // head + block sums == direct cumulative sums
  Real log_weighted_gap;         // |sum of block log sums - direct sum|
};

inline constexpr unsigned kMaxBlockIndex = 4;
inline constexpr std::uint64_t kDefaultBlockCap = 1'000'000;

/// Requires 1 <= k_max <= 4 and eps > 0.
BlockAnalysis block_divergence(const PsiSpec& psi, const Rational& eps, unsigned k_max,
                               std::uint64_t cap = kDefaultBlockCap);

std::string block_csv_header();
std::string to_csv_row(const BlockRow& r);

// --- theorem 3 hypothesis ----------------------------------------------------

struct Violation {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t gcd = 0;
  Real threshold;  // n / (ln n)^eps
  bool near_tie = false;
};

struct Theorem3Check {
  Rational eps;
  std::uint64_t N = 0;
  std::uint64_t support_size = 0;
  std::vector<Violation> violations;
  std::uint64_t pairs_cross_checked = 0;
  bool exhaustive_cross_check = false;
  std::uint64_t b2_mismatches = 0;  // non-violating pairs with common centres
};

inline constexpr std::uint64_t kDefaultTheorem3PairCap = 2000;

/// Requires N >= 3 and eps > 0. Pairs are cross-checked exhaustively while
/// the support has at most pair_cap elements, otherwise only divisor-linked
/// pairs are.
Theorem3Check theorem3_check(const PsiSpec& psi, const Rational& eps, std::uint64_t N,
                             std::uint64_t pair_cap = kDefaultTheorem3PairCap);

std::string theorem3_csv_header();
std::string to_csv_row(const Violation& v);

}  // namespace dioph
