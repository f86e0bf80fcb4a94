#pragma once

#include <cstdint>
#include <vector>

#include "dioph/rational.hpp"

namespace dioph {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with ascending primes.
using Factorization = std::vector<PrimePower>;

inline constexpr std::uint64_t kDefaultPrimeLimit = 10'000'000;

/// Smallest-prime-factor table over [2, limit]. Immutable once built.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }

  /// Requires 2 <= k <= limit().
  std::uint64_t smallest_factor(std::uint64_t k) const { return spf_[k]; }

  /// Ascending primes <= limit().
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  bool is_prime(std::uint64_t k) const;

  /// Uses the table within range and trial division beyond it.
  Factorization factorize(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

/// Process-wide table, built on first use with the configured limit.
const PrimeTable& prime_table();

/// Sets the limit used for the process-wide table. Throws std::logic_error
/// if the table has already been built with a different limit.
void set_prime_limit(std::uint64_t limit);

/// All primes p <= cut, ascending; sieves locally when cut exceeds the table.
std::vector<std::uint64_t> primes_up_to(std::uint64_t cut);

std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t euler_phi(const Factorization& f);
int moebius(std::uint64_t n);

/// Divisors d of n with d <= cut, ascending.
std::vector<std::uint64_t> divisors_up_to(std::uint64_t n, std::uint64_t cut);
std::vector<std::uint64_t> divisors_up_to(const Factorization& f, std::uint64_t cut);

/// Product of the first k primes; primorial(0) == 1.
Integer primorial(std::size_t k);

/// Exact prod_{p <= cut} (1 - 1/p).
Rational mertens_product(std::uint64_t cut);

/// Exact sum_{l <= cut} mu(l)^2 / phi(l). Throws std::domain_error for cut == 0.
Rational squarefree_phi_sum(std::uint64_t cut);

/// Exact prod_{p <= cut} (1 + 1/(p(p-1))); increases towards zeta(2)zeta(3)/zeta(6).
Rational zeta_ratio_partial(std::uint64_t cut);

}  // namespace dioph
