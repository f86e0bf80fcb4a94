#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dioph/circleset.hpp"
#include "dioph/rational.hpp"
#include "dioph/real.hpp"

namespace dioph {

/// psi(n) = c
struct ConstPsi {
  Rational c;
};
/// psi(n) = c (ln n)^beta
struct LogPowPsi {
  Rational c;
  Rational beta;
};
/// psi(n) = c n^alpha
struct PowerPsi {
  Rational c;
  Rational alpha;
};
/// Explicit values; 0 outside the table.
struct TablePsi {
  std::map<std::uint64_t, Rational> values;
  std::string source;  // file path the table was read from, if any
};
/// c on primes, 0 elsewhere.
struct PrimesOnlyPsi {
  Rational c;
};
/// c on the support set, 0 elsewhere.
struct IndicatorPsi {
  std::set<std::uint64_t> support;
  Rational c;
};

/// Number of fractional bits irrational psi values are rounded to.
inline constexpr unsigned kPsiDyadicBits = 64;

/// An approximation function psi: N -> [0, 1/2] with exact rational values.
class PsiSpec {
 public:
  using Family = std::variant<ConstPsi, LogPowPsi, PowerPsi, TablePsi, PrimesOnlyPsi, IndicatorPsi>;

  explicit PsiSpec(Family family, bool clamp = true);

  /// Accepts const:P, logpow:c=P,beta=P, power:c=P,alpha=P, primes:P,
  /// indicator:c=P,support=N;N;..., table:@FILE (CSV rows "n,psi").
  static PsiSpec parse(std::string_view text);
  std::string to_string() const;

  const Family& family() const { return family_; }
  bool clamp() const { return clamp_; }

  /// Exact value in [0, 1/2]. Out-of-range raw values are clamped, or raise
  /// std::domain_error when clamping is disabled. Requires n >= 1.
  Rational operator()(std::uint64_t n) const;

  /// Known finite support, when the family has one (table, indicator).
  const std::set<std::uint64_t>* finite_support() const;

 private:
  Family family_;
  bool clamp_;
  std::set<std::uint64_t> table_support_;
};

Rational eval_psi(const PsiSpec& psi, std::uint64_t n);

/// Rule for the gcd cutoff D(n) defining which numerators a/n are kept.
class ReductionPolicy {
 public:
  enum class Kind { full, coprime, log_power, fixed_cut };

  static ReductionPolicy full() { return ReductionPolicy(Kind::full, Rational(0), 0); }
  static ReductionPolicy coprime() { return ReductionPolicy(Kind::coprime, Rational(0), 0); }
  /// D(n) = (ln n)^eps; requires eps > 0.
  static ReductionPolicy log_power(Rational eps);
  static ReductionPolicy fixed_cut(std::uint64_t d) { return ReductionPolicy(Kind::fixed_cut, Rational(0), d); }

  /// Accepts full, coprime, log:P, cut:N.
  static ReductionPolicy parse(std::string_view text);
  std::string to_string() const;

  Kind kind() const { return kind_; }
  const Rational& epsilon() const { return eps_; }

  /// Integer cutoff, always >= 1. For log_power it is floor((ln n)^eps); a
  /// value within one ulp of an integer is resolved upwards and audited.
  std::uint64_t dcut(std::uint64_t n) const;

  friend bool operator==(const ReductionPolicy&, const ReductionPolicy&) = default;

 private:
  ReductionPolicy(Kind kind, Rational eps, std::uint64_t cut) : kind_(kind), eps_(std::move(eps)), cut_(cut) {}

  Kind kind_;
  Rational eps_;
  std::uint64_t cut_;
};

/// (ln n)^eps at the working precision.
Real log_power(std::uint64_t n, const Rational& eps);

/// S = {a in 1..n : gcd(a, n) <= cut}.
struct SupportSet {
  std::uint64_t n;
  std::uint64_t cut;
  std::uint64_t cardinality;

  /// Members by gcd filtering, ascending.
  std::vector<std::uint64_t> members() const;
};

/// Cardinality from sum_{d | n, d <= cut} phi(n/d).
SupportSet support(std::uint64_t n, std::uint64_t cut);

/// E_n^D as a normalized circle set.
CircleIntervalSet build_E(std::uint64_t n, const PsiSpec& psi, const ReductionPolicy& policy);

/// 2 psi(n) |S| / n without materializing the set.
Rational measure_E(std::uint64_t n, const PsiSpec& psi, const ReductionPolicy& policy);

struct PsiDiagnostics {
  std::uint64_t N;
  Rational eps;
  Rational sum_psi;          // sum psi(n)
  Rational sum_psi_phi;      // sum psi(n) phi(n) / n
  Real sum_psi_log_weighted; // sum psi(n) / (ln n)^eps
};

/// Partial sums over 2 <= n <= N.
PsiDiagnostics psi_diagnostics(const PsiSpec& psi, std::uint64_t N, const Rational& eps);

}  // namespace dioph
