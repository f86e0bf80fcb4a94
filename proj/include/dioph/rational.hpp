#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dioph {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws std::domain_error when den == 0.
Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(std::int64_t num, std::uint64_t den);

/// Parses "p/q" or "p" (optional leading '-'). Decimal input is rejected.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer to_integer(std::uint64_t v);
Rational to_rational(std::uint64_t v);

/// Exact sum by pairwise reduction; keeps operand sizes balanced so long
/// sums with unrelated denominators stay near-linear.
Rational exact_sum(std::vector<Rational> terms);

/// Running exact sum that buffers terms and folds them in balanced batches.
class RationalAccumulator {
 public:
  void add(Rational term);
  /// Sum of everything added so far.
  Rational total() const;

 private:
  static constexpr std::size_t kBatch = 4096;
  std::vector<Rational> pending_;
  Rational folded_{0};
};

/// Product tree over integers.
Integer exact_product(std::span<const Integer> factors);

}  // namespace dioph
