#include "dioph/campaigns.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dioph/audit.hpp"
#include "dioph/numtheory.hpp"
#include "dioph/overlap.hpp"
#include "dioph/parallel.hpp"

namespace dioph {

namespace {

void require_unit_eps(const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw std::domain_error("eps must lie in (0, 1)");
}

Rational ratio_of(std::uint64_t num, std::uint64_t den) { return make_rational(to_integer(num), to_integer(den)); }

Rational harmonic(std::uint64_t cut) {
  std::vector<Rational> terms;
  for (std::uint64_t m = 1; m <= cut; ++m) terms.push_back(ratio_of(1, m));
  return exact_sum(std::move(terms));
}

/// prod (1 - 1/p) over the given primes.
Rational euler_factor(const std::vector<std::uint64_t>& primes) {
  Rational out(1);
  for (auto p : primes) out *= ratio_of(p - 1, p);
  return out;
}

Real euler_factor_real(const std::vector<std::uint64_t>& primes) { return Real(euler_factor(primes)); }

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

// --- lemma / corollary scan ------------------------------------------------

LemmaScan lemma_corollary_scan(const CampaignConfig& cfg) {
  require_unit_eps(cfg.eps);
  if (cfg.n_min == 0 || cfg.n_min > cfg.n_max) throw std::domain_error("scan needs 1 <= n_min <= n_max");
  const ReductionPolicy policy = ReductionPolicy::log_power(cfg.eps);
  const Rational lemma_factor = cfg.eps / 10;
  const Rational corollary_factor = cfg.eps / 5;

  LemmaScan scan;
  scan.eps = cfg.eps;
  scan.records = parallel_map<ScanRecord>(cfg.n_max - cfg.n_min + 1, cfg.threads, [&](std::size_t i) {
    ScanRecord r;
    r.n = cfg.n_min + i;
    const Factorization f = prime_table().factorize(r.n);
    r.dcut = policy.dcut(r.n);
    for (auto d : divisors_up_to(f, r.dcut)) r.cardinality += euler_phi(r.n / d);
    r.phi = euler_phi(f);
    r.lower_bound = lemma_factor * to_rational(r.n);
    const Rational psi_n = cfg.psi(r.n);
    r.measure = Rational(2) * psi_n * ratio_of(r.cardinality, r.n);
    r.corollary_bound = corollary_factor * psi_n;
    return r;
  });

  bool first = true;
  for (const auto& r : scan.records) {
    const Rational slack = to_rational(r.cardinality) - r.lower_bound;
    const Rational ratio = to_rational(r.cardinality) / r.lower_bound;
    const Rational cslack = r.measure - r.corollary_bound;
    if (first || slack < scan.min_lemma_slack) {
      scan.min_lemma_slack = slack;
      scan.min_lemma_slack_n = r.n;
    }
    if (first || ratio < scan.min_lemma_ratio) {
      scan.min_lemma_ratio = ratio;
      scan.min_lemma_ratio_n = r.n;
    }
    if (first || cslack < scan.min_corollary_slack) {
      scan.min_corollary_slack = cslack;
      scan.min_corollary_slack_n = r.n;
    }
    first = false;
    if (!r.lemma_pass()) {
      ++scan.lemma_failures;
      scan.largest_lemma_failure = r.n;
    }
    if (!r.corollary_pass()) {
      ++scan.corollary_failures;
      scan.largest_corollary_failure = r.n;
    }
  }
  return scan;
}

std::string scan_csv_header() {
  return "n,dcut,cardinality,phi,lower_bound,lemma_pass,measure,corollary_bound,corollary_pass";
}

std::string to_csv_row(const ScanRecord& r) {
  return std::to_string(r.n) + "," + std::to_string(r.dcut) + "," + std::to_string(r.cardinality) + "," +
         std::to_string(r.phi) + "," + to_string(r.lower_bound) + "," + bool_str(r.lemma_pass()) + "," +
         to_string(r.measure) + "," + to_string(r.corollary_bound) + "," + bool_str(r.corollary_pass());
}

// --- proof-step audit --------------------------------------------------------

bool ProofAudit::chain_holds() const {
  return std::all_of(steps.begin(), steps.end(), [](const ProofStep& s) { return s.holds || s.informational; });
}

namespace {

ProofStep exact_step(std::string name, const Rational& lhs, const Rational& rhs, bool strict = false) {
  ProofStep s;
  s.name = std::move(name);
  s.exact = true;
  s.lhs = to_string(lhs);
  s.rhs = to_string(rhs);
  s.holds = strict ? lhs < rhs : lhs >= rhs;
  s.slack = strict ? Real(rhs - lhs) : Real(lhs - rhs);
  return s;
}

ProofStep numeric_step(std::string name, const Real& lhs, const Real& rhs, bool informational) {
  ProofStep s;
  s.name = std::move(name);
  s.exact = false;
  s.informational = informational;
  s.lhs = lhs.to_string();
  s.rhs = rhs.to_string();
  s.holds = lhs >= rhs;
  s.slack = lhs - rhs;
  return s;
}

}  // namespace

ProofAudit proof_step_audit(std::uint64_t n, const Rational& eps) {
  require_unit_eps(eps);
  if (n < 3) throw std::domain_error("proof audit needs n >= 3");
  const PrimeTable& table = prime_table();
  ProofAudit audit;
  audit.n = n;
  audit.eps = eps;
  audit.dcut = ReductionPolicy::log_power(eps).dcut(n);
  audit.d = log_power(n, eps);
  const std::uint64_t cut = audit.dcut;
  const Factorization f = table.factorize(n);
  const Rational phi = to_rational(euler_phi(f));

  std::uint64_t cardinality = 0;
  Rational divisor_harmonic(0);
  for (auto d : divisors_up_to(f, cut)) {
    cardinality += euler_phi(n / d);
    divisor_harmonic += ratio_of(1, d);
  }
  const Rational size = to_rational(cardinality);

  std::set<std::uint64_t> prime_divisors;
  for (const auto& pe : f) prime_divisors.insert(pe.prime);
  std::vector<std::uint64_t> small_dividing;  // p <= D, p | n
  std::vector<std::uint64_t> small_coprime;   // p <= D, p does not divide n
  for (auto p : primes_up_to(cut)) (prime_divisors.contains(p) ? small_dividing : small_coprime).push_back(p);

  // sum of 1/d over d <= D built only from primes dividing n
  Rational smooth_sum(0);
  for (std::uint64_t d = 1; d <= cut; ++d) {
    bool smooth = true;
    for (const auto& pe : table.factorize(d)) smooth = smooth && prime_divisors.contains(pe.prime);
    if (smooth) smooth_sum += ratio_of(1, d);
  }
  Rational zeta_dividing(1);
  for (auto p : small_dividing) zeta_dividing *= ratio_of(p * p - p + 1, p * p - p);

  const Rational coprime_factor = euler_factor(small_coprime);
  const Rational harmonic_cut = harmonic(cut);
  const Real ln_d = log(audit.d);
  const Real ln_n = ln_of(n);

  std::vector<std::uint64_t> large_dividing, mid_dividing, huge_dividing;
  for (auto p : prime_divisors) {
    if (p <= cut) continue;
    large_dividing.push_back(p);
    (Real::from_uint(p) <= ln_n ? mid_dividing : huge_dividing).push_back(p);
  }
  const Real small_primes_factor = euler_factor_real(primes_up_to(cut));

  auto& s = audit.steps;
  s.push_back(exact_step("expr_S", size, phi * divisor_harmonic));
  s.push_back(exact_step("zeta_product", divisor_harmonic * zeta_dividing, smooth_sum));
  s.push_back(exact_step("zeta_ratio_lt_2", zeta_ratio_partial(cut), Rational(2), true));
  s.push_back(exact_step("comp", divisor_harmonic, smooth_sum / 2));
  s.push_back(exact_step("sieve_product", smooth_sum, coprime_factor * harmonic_cut));
  s.push_back(numeric_step("harmonic_log", Real(coprime_factor * harmonic_cut), Real(coprime_factor) * ln_d, false));
  const Real half_n = Real(ratio_of(n, 2));
  s.push_back(numeric_step("multiplication", Real(size),
                           half_n * ln_d * small_primes_factor * euler_factor_real(large_dividing), false));
  s.push_back(numeric_step("mertens_small", small_primes_factor,
                           Real(Rational(1)) / (Real(Rational(2)) * ln_d), true));
  s.push_back(numeric_step("mid_primes", euler_factor_real(mid_dividing), Real(Rational(4, 5) * eps), true));
  s.push_back(numeric_step("large_primes", euler_factor_real(huge_dividing), Real(Rational(1, 2)), true));
  const Real one(Rational(1));
  s.push_back(numeric_step("large_primes_bound", pow(one - one / ln_n, ln_n / log(ln_n)), Real(Rational(1, 2)),
                           true));
  s.push_back(exact_step("lemma", size, eps * to_rational(n) / 10));
  return audit;
}

std::string proof_audit_csv_header() { return "n,eps,dcut,d,step,exact,informational,lhs,rhs,holds,slack"; }

std::string to_csv_rows(const ProofAudit& audit) {
  std::string out;
  for (const auto& s : audit.steps) {
    out += std::to_string(audit.n) + "," + to_string(audit.eps) + "," + std::to_string(audit.dcut) + "," +
           audit.d.to_string() + "," + s.name + "," + bool_str(s.exact) + "," + bool_str(s.informational) + "," +
           s.lhs + "," + s.rhs + "," + bool_str(s.holds) + "," + s.slack.to_string() + "\n";
  }
  return out;
}

std::uint64_t ProofAuditRange::hard_failures() const {
  std::uint64_t total = 0;
  for (const auto& t : tallies)
    if (!t.informational) total += t.failures;
  return total;
}

namespace {

StepTally make_tally(const std::string& name, bool exact, bool informational) {
  StepTally t;
  t.name = name;
  t.exact = exact;
  t.informational = informational;
  return t;
}

void fold_tally(StepTally& into, const StepTally& from) {
  if (from.checked == 0) return;
  if (into.checked == 0 || from.min_slack < into.min_slack) {
    into.min_slack = from.min_slack;
    into.min_slack_n = from.min_slack_n;
  }
  into.checked += from.checked;
  into.failures += from.failures;
  if (from.largest_failing_n && (!into.largest_failing_n || *from.largest_failing_n > *into.largest_failing_n))
    into.largest_failing_n = from.largest_failing_n;
}

}  // namespace

ProofAuditRange proof_audit_range(const CampaignConfig& cfg) {
  require_unit_eps(cfg.eps);
  if (cfg.n_min < 3 || cfg.n_min > cfg.n_max) throw std::domain_error("audit range needs 3 <= n_min <= n_max");
  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t count = cfg.n_max - cfg.n_min + 1;
  const std::size_t chunks = static_cast<std::size_t>((count + kChunk - 1) / kChunk);
  auto partial = parallel_map<std::vector<StepTally>>(chunks, cfg.threads, [&](std::size_t c) {
    std::vector<StepTally> tallies;
    const std::uint64_t lo = cfg.n_min + c * kChunk;
    const std::uint64_t hi = std::min(cfg.n_max, lo + kChunk - 1);
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const ProofAudit audit = proof_step_audit(n, cfg.eps);
      if (tallies.empty()) {
        for (const auto& s : audit.steps) tallies.push_back(make_tally(s.name, s.exact, s.informational));
      }
      for (std::size_t i = 0; i < audit.steps.size(); ++i) {
        const ProofStep& s = audit.steps[i];
        StepTally one = make_tally(s.name, s.exact, s.informational);
        one.checked = 1;
        one.failures = s.holds ? 0 : 1;
        one.min_slack = s.slack;
        one.min_slack_n = n;
        if (!s.holds) one.largest_failing_n = n;
        fold_tally(tallies[i], one);
      }
    }
    return tallies;
  });
  ProofAuditRange range;
  range.eps = cfg.eps;
  range.n_min = cfg.n_min;
  range.n_max = cfg.n_max;
  for (const auto& chunk : partial) {
    if (range.tallies.empty()) {
      for (const auto& t : chunk) range.tallies.push_back(make_tally(t.name, t.exact, t.informational));
    }
    for (std::size_t i = 0; i < chunk.size(); ++i) fold_tally(range.tallies[i], chunk[i]);
  }
  return range;
}

std::string proof_tally_csv_header() {
  return "eps,step,exact,informational,checked,failures,min_slack,min_slack_n,largest_failing_n";
}

std::string to_csv_rows(const ProofAuditRange& range) {
  std::string out;
  for (const auto& t : range.tallies) {
    out += to_string(range.eps) + "," + t.name + "," + bool_str(t.exact) + "," + bool_str(t.informational) + "," +
           std::to_string(t.checked) + "," + std::to_string(t.failures) + "," + t.min_slack.to_string() + "," +
           std::to_string(t.min_slack_n) + "," +
           (t.largest_failing_n ? std::to_string(*t.largest_failing_n) : std::string("none")) + "\n";
  }
  return out;
}

// --- primorial optimality ----------------------------------------------------

namespace {

std::vector<std::uint64_t> first_primes(std::size_t k) {
  std::uint64_t cut = 16;
  std::vector<std::uint64_t> primes = primes_up_to(cut);
  while (primes.size() < k) primes = primes_up_to(cut *= 2);
  primes.resize(k);
  return primes;
}

/// Squarefree d whose prime factors are all <= largest; then phi(d) is set.
bool divides_primorial(std::uint64_t d, std::uint64_t largest, std::uint64_t& phi_d) {
  phi_d = 1;
  for (const auto& pe : prime_table().factorize(d)) {
    if (pe.exponent > 1 || pe.prime > largest) return false;
    phi_d *= pe.prime - 1;
  }
  return true;
}

}  // namespace

Integer primorial_support_size(std::size_t k, std::uint64_t cut) {
  const auto primes = first_primes(k);
  const std::uint64_t largest = primes.empty() ? 1 : primes.back();
  Integer total(0);
  std::uint64_t phi_d = 0;
  for (std::uint64_t d = 1; d <= cut; ++d) {
    if (!divides_primorial(d, largest, phi_d)) continue;
    // phi(n/d) is the product of p - 1 over the primes of n not dividing d.
    Integer phi_quotient(1);
    for (auto p : primes)
      if (d % p != 0) phi_quotient *= to_integer(p - 1);
    total += phi_quotient;
  }
  return total;
}

std::vector<PrimorialRow> primorial_optimality(const Rational& eps, std::size_t k_max, std::uint64_t scan_limit) {
  require_unit_eps(eps);
  if (k_max == 0 || k_max > kMaxPrimorialIndex) throw std::domain_error("k_max must lie in [1, 40]");
  const auto primes = first_primes(k_max);
  const Real gamma = euler_gamma();
  const Real exponent = Real(eps) * exp(gamma);
  std::vector<PrimorialRow> rows;
  for (std::size_t k = 1; k <= k_max; ++k) {
    PrimorialRow row;
    row.k = k;
    row.n = primorial(k);
    row.largest_prime = primes[k - 1];
    row.phi = 1;
    for (std::size_t i = 0; i < k; ++i) row.phi *= to_integer(primes[i] - 1);

    // |S(n, D)| = phi(n) sum_{l <= D} mu(l)^2 / phi(l) whenever D <= p_k.
    row.identity_checked_up_to = row.largest_prime;
    row.identity_ok = true;
    for (std::uint64_t d = 1; d <= row.largest_prime; ++d) {
      const Rational lhs(primorial_support_size(k, d));
      row.identity_ok = row.identity_ok && lhs == Rational(row.phi) * squarefree_phi_sum(d);
    }

    // Least D with |S| >= eps n: only divisors of n change the count.
    const Rational target = eps * Rational(row.n);
    Integer size(0);
    std::uint64_t phi_d = 0;
    const std::uint64_t limit = std::min(scan_limit, prime_table().limit());
    for (std::uint64_t d = 1; d <= limit; ++d) {
      if (!divides_primorial(d, row.largest_prime, phi_d)) continue;
      size += row.phi / to_integer(phi_d);
      if (Rational(size) >= target) {
        row.d_star = d;
        row.d_star_cardinality = size;
        break;
      }
    }
    const Real ln_n = log(Real(Rational(row.n)));
    if (row.d_star) row.d_star_ratio = Real::from_uint(*row.d_star) / pow(ln_n, exponent);
    row.totient_ratio = Real(make_rational(row.phi, row.n)) * log(ln_n);
    row.exp_neg_gamma = exp(-gamma);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string primorial_csv_header() {
  return "k,n,phi,largest_prime,identity_checked_up_to,identity_ok,d_star,d_star_cardinality,d_star_ratio,"
         "totient_ratio,exp_neg_gamma";
}

std::string to_csv_row(const PrimorialRow& r) {
  return std::to_string(r.k) + "," + to_string(r.n) + "," + to_string(r.phi) + "," +
         std::to_string(r.largest_prime) + "," + std::to_string(r.identity_checked_up_to) + "," +
         bool_str(r.identity_ok) + "," + (r.d_star ? std::to_string(*r.d_star) : std::string("none")) + "," +
         (r.d_star ? to_string(r.d_star_cardinality) : std::string("none")) + "," +
         (r.d_star ? r.d_star_ratio.to_string() : std::string("none")) + "," + r.totient_ratio.to_string() + "," +
         r.exp_neg_gamma.to_string();
}

// --- block analyzer ----------------------------------------------------------

BlockAnalysis block_divergence(const PsiSpec& psi, const Rational& eps, unsigned k_max, std::uint64_t cap) {
  if (k_max == 0 || k_max > kMaxBlockIndex) throw std::domain_error("k_max must lie in [1, 4]");
  if (eps <= 0) throw std::domain_error("eps must be positive");
  if (cap < 5) throw std::domain_error("cap must be at least 5");
  auto block_hi = [](unsigned k) { return std::uint64_t{1} << (std::uint64_t{1} << (k + 1)); };
  const std::uint64_t limit = std::min(cap, block_hi(k_max));

  BlockAnalysis out;
  std::vector<RationalAccumulator> block_psi(k_max + 1);
  std::vector<Real> block_log(k_max + 1, Real(working_precision()));
  RationalAccumulator head;
  RationalAccumulator direct;
  Real direct_log(working_precision());
  std::vector<Rational> direct_at_block_end(k_max + 1);

  unsigned k = 1;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    const Rational v = psi(n);
    direct.add(v);
    if (n <= 4) {
      head.add(v);
    } else {
      while (n > block_hi(k)) ++k;
      block_psi[k].add(v);
      if (v != 0) {
        const Real term = Real(v) / log_power(n, eps);
        block_log[k] += term;
        direct_log += term;
      }
    }
    if (n == std::min(block_hi(k), limit) && n > 4) direct_at_block_end[k] = direct.total();
  }

  out.head_psi = head.total();
  out.partition_exact = true;
  Rational recombined = out.head_psi;
  Real recombined_log(working_precision());
  for (unsigned b = 1; b <= k_max; ++b) {
    BlockRow row;
    row.k = b;
    row.lo = (std::uint64_t{1} << (std::uint64_t{1} << b)) + 1;
    row.hi = block_hi(b);
    row.truncated = row.hi > limit;
    row.summed_to = std::min(row.hi, limit);
    row.inv_k2 = Rational(1, b * b);
    row.psi_sum = block_psi[b].total();
    row.log_weighted_sum = block_log[b];
    const Real ln2 = ln_of(2);
    Real two_pow(Rational(1));
    mpfr_mul_2ui(two_pow.get(), two_pow.get(), b, MPFR_RNDN);
    row.psi_lower_bound = pow(two_pow, eps) * pow(ln2, eps) / Real(Rational(b * b));
    if (row.lo > limit) {
      row.summed_to = limit;
      row.cumulative_psi = direct.total();
    } else {
      row.cumulative_psi = direct_at_block_end[b];
      recombined += row.psi_sum;
      recombined_log += row.log_weighted_sum;
      out.partition_exact = out.partition_exact && recombined == row.cumulative_psi;
    }
    row.log_n_pow = pow(ln_of(row.summed_to), eps / 2);
    out.rows.push_back(std::move(row));
  }
  out.log_weighted_gap = abs(recombined_log - direct_log);
  return out;
}

std::string block_csv_header() {
  return "k,lo,hi,summed_to,truncated,log_weighted_sum,inv_k2,block_condition,psi_sum,psi_lower_bound,"
         "cumulative_psi,log_n_pow,cumulative_condition";
}

std::string to_csv_row(const BlockRow& r) {
  return std::to_string(r.k) + "," + std::to_string(r.lo) + "," + std::to_string(r.hi) + "," +
         std::to_string(r.summed_to) + "," + bool_str(r.truncated) + "," + r.log_weighted_sum.to_string() + "," +
         to_string(r.inv_k2) + "," + bool_str(r.block_condition()) + "," + to_string(r.psi_sum) + "," +
         r.psi_lower_bound.to_string() + "," + to_string(r.cumulative_psi) + "," + r.log_n_pow.to_string() + "," +
         bool_str(r.cumulative_condition());
}

// --- theorem 3 hypothesis ----------------------------------------------------

namespace {

enum class GcdTest { below, above, tie };

/// Compares gcd against n / (ln n)^eps; a difference within a few ulps is a tie.
GcdTest compare_threshold(std::uint64_t gcd, std::uint64_t n, const Real& log_pow) {
  const Real diff = Real::from_uint(gcd) * log_pow - Real::from_uint(n);
  Real tol = Real::from_uint(n);
  mpfr_div_2ui(tol.get(), tol.get(), working_precision() - 8, MPFR_RNDN);
  if (abs(diff) <= tol) return GcdTest::tie;
  return diff.is_zero() || diff > Real(Rational(0)) ? GcdTest::above : GcdTest::below;
}

}  // namespace

Theorem3Check theorem3_check(const PsiSpec& psi, const Rational& eps, std::uint64_t N, std::uint64_t pair_cap) {
  if (N < 3) throw std::domain_error("theorem3_check needs N >= 3");
  if (eps <= 0) throw std::domain_error("eps must be positive");
  Theorem3Check out;
  out.eps = eps;
  out.N = N;

  std::vector<std::uint64_t> support;
  if (const auto* finite = psi.finite_support()) {
    for (auto n : *finite)
      if (n <= N && psi(n) != 0) support.push_back(n);
  } else {
    for (std::uint64_t n = 1; n <= N; ++n)
      if (psi(n) != 0) support.push_back(n);
  }
  out.support_size = support.size();
  const std::set<std::uint64_t> in_support(support.begin(), support.end());

  const ReductionPolicy policy = ReductionPolicy::log_power(eps);
  std::map<std::uint64_t, std::uint64_t> cuts;
  for (auto n : support) cuts[n] = policy.dcut(n);

  std::set<std::pair<std::uint64_t, std::uint64_t>> violating;
  for (auto n : support) {
    if (n < 2) continue;
    const Real log_pow = log_power(n, eps);
    std::set<std::uint64_t> partners;
    for (auto g : divisors_up_to(n, n - 1)) {
      if (compare_threshold(g, n, log_pow) == GcdTest::below) continue;
      for (std::uint64_t m = g; m < n; m += g)
        if (in_support.contains(m)) partners.insert(m);
    }
    for (auto m : partners) {
      const std::uint64_t g = std::gcd(m, n);
      const GcdTest t = compare_threshold(g, n, log_pow);
      if (t == GcdTest::below) continue;
      if (t == GcdTest::tie)
        audit::warn("theorem3 near-tie: gcd(" + std::to_string(m) + ", " + std::to_string(n) +
                    ") against n/(ln n)^" + to_string(eps) + ", counted as violation");
      out.violations.push_back(
          Violation{m, n, g, Real::from_uint(n) / log_pow, t == GcdTest::tie});
      violating.insert({m, n});
    }
  }

  // Common centres under D = (ln n)^eps require gcd(m, n) >= n / D, so
  // every pair outside the violation list must have none.
  auto cross_check = [&](std::uint64_t m, std::uint64_t n) {
    ++out.pairs_cross_checked;
    if (common_centre_count(m, n, cuts[m], cuts[n]) > 0 && !violating.contains({m, n})) ++out.b2_mismatches;
  };
  out.exhaustive_cross_check = support.size() <= pair_cap;
  if (out.exhaustive_cross_check) {
    for (std::size_t j = 0; j < support.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) cross_check(support[i], support[j]);
  } else {
    for (auto n : support) {
      std::set<std::uint64_t> partners;
      for (auto d : divisors_up_to(n, cuts[n])) {
        if (d < 2) continue;
        for (std::uint64_t m = n / d; m < n; m += n / d)
          if (in_support.contains(m)) partners.insert(m);
      }
      for (auto m : partners) cross_check(m, n);
    }
  }
  return out;
}

std::string theorem3_csv_header() { return "m,n,gcd,threshold,near_tie"; }

std::string to_csv_row(const Violation& v) {
  return std::to_string(v.m) + "," + std::to_string(v.n) + "," + std::to_string(v.gcd) + "," +
         v.threshold.to_string() + "," + bool_str(v.near_tie);
}

}  // namespace dioph
