#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dioph/approxsets.hpp"
#include "dioph/rational.hpp"
#include "dioph/real.hpp"

namespace dioph {

/// Exact lambda(E_m ∩ E_n) split into contributions from arcs whose centres
/// differ (b1) and arcs with a common centre r/m = s/n (b2).
struct OverlapReport {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t gcd_mn = 0;
  Rational total;  // from the sweep intersection of the materialized sets
  Rational b1;
  Rational b2;
  Rational b2_closed_form;  // common-centre count times 2 min(psi(m)/m, psi(n)/n)
  Rational b1_bound;        // 8 psi(m) psi(n)
  std::uint64_t coinciding_centers = 0;
  bool b2_forced_zero = false;  // gcd(m, n) < n / Dcut(n)

  bool decomposition_ok() const { return b1 + b2 == total; }
  bool b2_formula_ok() const { return b2 == b2_closed_form; }
  bool b1_within_bound() const { return b1 >= 0 && b1 <= b1_bound; }
  bool forced_zero_ok() const { return !b2_forced_zero || b2 == 0; }
  bool consistent() const {
    return decomposition_ok() && b2_formula_ok() && b1_within_bound() && forced_zero_ok();
  }
};

std::string overlap_csv_header();
std::string to_csv_row(const OverlapReport& r);

/// Requires 1 <= m < n; throws std::domain_error otherwise.
OverlapReport intersect_pair(std::uint64_t m, std::uint64_t n, const PsiSpec& psi,
                             const ReductionPolicy& policy);

struct CommonCentres {
  std::uint64_t count = 0;
  Rational measure;
};

/// Number of common centres k/g (g = gcd(m, n)) kept by both cutoffs.
std::uint64_t common_centre_count(std::uint64_t m, std::uint64_t n, std::uint64_t dcut_m, std::uint64_t dcut_n);

/// Common centres k/g (g = gcd(m, n)) kept by both cutoffs, and their
/// overlap measure.
CommonCentres b2_closed_form(std::uint64_t m, std::uint64_t n, const Rational& psi_m, const Rational& psi_n,
                             std::uint64_t dcut_m, std::uint64_t dcut_n);

/// Integrals over the circle of 1[c > 0], c and c^2, where c(x) counts the
/// sets E_n (M <= n <= N) containing x. The second moment equals
/// sum_{m, n} lambda(E_m ∩ E_n) over ordered pairs, diagonal included.
struct CoverageMoments {
  Rational union_measure;
  Rational first_moment;
  Rational second_moment;
  std::uint64_t arcs = 0;
};

CoverageMoments coverage_moments(std::uint64_t M, std::uint64_t N, const PsiSpec& psi,
                                 const ReductionPolicy& policy);

/// lambda of the union of E_n for M <= n <= N. Requires 1 <= M <= N.
Rational union_measure(std::uint64_t M, std::uint64_t N, const PsiSpec& psi, const ReductionPolicy& policy);

inline constexpr std::uint64_t kDefaultPairAuditCap = 200;

struct QuasiIndependenceReport {
  std::uint64_t N = 0;
  Rational eps;
  Rational s1;             // sum_n lambda(E_n)
  Rational s2;             // sum_{m,n} lambda(E_m ∩ E_n)
  Rational sum_b1;         // over unordered pairs m < n
  Rational sum_b2;         // over unordered pairs m < n
  Rational b1_bound;       // sum_{m<n} 8 psi(m) psi(n)
  Rational sum_psi;
  Real log_weighted;       // sum_n psi(n) (ln n)^(eps/2)
  Real partial_summation;  // (ln N)^(eps/2) sum_n psi(n)
  Rational constant;       // 8 * 20^2 / eps^2 + 1
  Real bound;              // constant * s1^2 + 4 * log_weighted
  Real ratio;              // s2 / s1^2
  bool first_moment_ok = false;  // sweep first moment equals the closed-form s1
  bool pair_audit_run = false;
  bool pair_audit_ok = true;

  bool within_bound() const;
  bool partial_summation_ok() const;
  bool b1_aggregate_ok() const { return sum_b1 <= b1_bound; }
  /// sum_{m<n} B2 <= 2 sum_n psi(n) (ln n)^(eps/2); valid once Dcut(n)^2 <= (ln n)^(eps/2).
  bool b2_chain_ok() const;
};

/// Relative tolerance for inequalities whose right side is transcendental.
Real relative_tolerance();

/// Pairs up to pair_audit_cap are also checked one by one with intersect_pair.
QuasiIndependenceReport quasi_independence(std::uint64_t N, const PsiSpec& psi, const ReductionPolicy& policy,
                                           const Rational& eps,
                                           std::uint64_t pair_audit_cap = kDefaultPairAuditCap);

struct BorelCantelliReport {
  std::uint64_t N = 0;
  Rational s1;
  Rational s2;
  Rational ratio;  // s1^2 / s2
  Rational union_measure;
  bool union_routes_agree = false;  // merge-tree union equals the sweep union

  bool ratio_below_union() const { return ratio <= union_measure; }
  bool union_below_bound() const {
    return union_measure <= s1 && union_measure <= 1;
  }
};

/// Throws std::domain_error when every measure is zero.
BorelCantelliReport borel_cantelli_bound(std::uint64_t N, const PsiSpec& psi, const ReductionPolicy& policy);

}  // namespace dioph
