#include "dioph/numtheory.hpp"

#include <algorithm>
#include <map>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dioph {

namespace {

std::mutex g_table_mutex;
std::uint64_t g_prime_limit = kDefaultPrimeLimit;
std::unique_ptr<PrimeTable> g_table;

std::vector<std::uint64_t> simple_sieve(std::uint64_t cut) {
  std::vector<std::uint64_t> out;
  if (cut < 2) return out;
  std::vector<bool> composite(cut + 1, false);
  for (std::uint64_t i = 2; i <= cut; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= cut; j += i) composite[j] = true;
  }
  return out;
}

/// Integer product of f(p) over the primes, via a balanced tree.
template <typename F>
Integer prime_product(const std::vector<std::uint64_t>& primes, F f) {
  std::vector<Integer> factors;
  factors.reserve(primes.size());
  for (auto p : primes) factors.push_back(f(p));
  return exact_product(factors);
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(std::max<std::uint64_t>(limit, 2)) {
  if (limit_ > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("prime table limit exceeds 32 bits");
  spf_.assign(limit_ + 1, 0);
  for (std::uint64_t i = 2; i <= limit_; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    // Linear sieve: each composite is written once, by its smallest factor.
    for (std::uint32_t p : primes_) {
      if (p > spf_[i] || i * p > limit_) break;
      spf_[i * p] = p;
    }
  }
}

bool PrimeTable::is_prime(std::uint64_t k) const {
  if (k < 2) return false;
  if (k <= limit_) return spf_[k] == k;
  for (std::uint64_t d = 2; d * d <= k; ++d)
    if (k % d == 0) return false;
  return true;
}

Factorization PrimeTable::factorize(std::uint64_t n) const {
  if (n == 0) throw std::domain_error("factorization of 0");
  Factorization out;
  auto push = [&out](std::uint64_t p) {
    if (!out.empty() && out.back().prime == p)
      ++out.back().exponent;
    else
      out.push_back({p, 1});
  };
  for (std::uint64_t d = 2; n > limit_ && d * d <= n;) {
    if (n % d == 0) {
      push(d);
      n /= d;
    } else {
      d += (d == 2) ? 1 : 2;
    }
  }
  if (n > limit_) {
    push(n);
    return out;
  }
  while (n > 1) {
    const std::uint64_t p = spf_[n];
    push(p);
    n /= p;
  }
  return out;
}

const PrimeTable& prime_table() {
  std::lock_guard lock(g_table_mutex);
  if (!g_table) g_table = std::make_unique<PrimeTable>(g_prime_limit);
  return *g_table;
}

void set_prime_limit(std::uint64_t limit) {
  std::lock_guard lock(g_table_mutex);
  if (g_table && g_table->limit() != std::max<std::uint64_t>(limit, 2))
    throw std::logic_error("prime table already built with limit " +
                           std::to_string(g_table->limit()));
  g_prime_limit = limit;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t cut) {
  const PrimeTable& table = prime_table();
  if (cut > table.limit()) return simple_sieve(cut);
  const auto& primes = table.primes();
  const auto end = std::upper_bound(primes.begin(), primes.end(), cut);
  return std::vector<std::uint64_t>(primes.begin(), end);
}

std::uint64_t euler_phi(const Factorization& f) {
  std::uint64_t phi = 1;
  for (const auto& [p, e] : f) {
    phi *= p - 1;
    for (unsigned i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw std::domain_error("euler_phi(0)");
  return euler_phi(prime_table().factorize(n));
}

int moebius(std::uint64_t n) {
  if (n == 0) throw std::domain_error("moebius(0)");
  const Factorization f = prime_table().factorize(n);
  for (const auto& pe : f)
    if (pe.exponent > 1) return 0;
  return f.size() % 2 == 0 ? 1 : -1;
}

std::vector<std::uint64_t> divisors_up_to(const Factorization& f, std::uint64_t cut) {
  std::vector<std::uint64_t> out;
  if (cut == 0) return out;
  out.push_back(1);
  for (const auto& [p, e] : f) {
    const std::size_t base = out.size();
    for (std::size_t i = 0; i < base; ++i) {
      std::uint64_t d = out[i];
      for (unsigned k = 0; k < e; ++k) {
        if (d > cut / p) break;
        d *= p;
        out.push_back(d);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> divisors_up_to(std::uint64_t n, std::uint64_t cut) {
  if (n == 0) throw std::domain_error("divisors of 0");
  return divisors_up_to(prime_table().factorize(n), cut);
}

Integer primorial(std::size_t k) {
  Integer out(1);
  // The k-th prime is below k(ln k + ln ln k) for k >= 6; grow until enough.
  std::uint64_t cut = 16;
  std::vector<std::uint64_t> primes = primes_up_to(cut);
  while (primes.size() < k) {
    cut *= 2;
    primes = primes_up_to(cut);
  }
  for (std::size_t i = 0; i < k; ++i) out *= to_integer(primes[i]);
  return out;
}

Rational mertens_product(std::uint64_t cut) {
  const auto primes = primes_up_to(cut);
  const Integer num = prime_product(primes, [](std::uint64_t p) { return to_integer(p - 1); });
  const Integer den = prime_product(primes, [](std::uint64_t p) { return to_integer(p); });
  return make_rational(num, den);
}

Rational zeta_ratio_partial(std::uint64_t cut) {
  // 1 + 1/(p(p-1)) = (p^2 - p + 1) / (p^2 - p)
  const auto primes = primes_up_to(cut);
  const Integer num =
      prime_product(primes, [](std::uint64_t p) { return to_integer(p * p - p + 1); });
  const Integer den = prime_product(primes, [](std::uint64_t p) { return to_integer(p * p - p); });
  return make_rational(num, den);
}

Rational squarefree_phi_sum(std::uint64_t cut) {
  if (cut == 0) throw std::domain_error("squarefree_phi_sum(0)");
  // phi and squarefreeness by a local sieve; terms grouped by phi value.
  std::vector<std::uint64_t> phi(cut + 1);
  std::iota(phi.begin(), phi.end(), 0);
  std::vector<bool> squarefree(cut + 1, true);
  for (std::uint64_t p = 2; p <= cut; ++p) {
    if (phi[p] != p) continue;
    for (std::uint64_t j = p; j <= cut; j += p) phi[j] -= phi[j] / p;
    if (p <= cut / p)
      for (std::uint64_t j = p * p; j <= cut; j += p * p) squarefree[j] = false;
  }
  std::map<std::uint64_t, std::uint64_t> count_by_phi;
  for (std::uint64_t l = 1; l <= cut; ++l)
    if (squarefree[l]) ++count_by_phi[phi[l]];
  std::vector<Rational> terms;
  terms.reserve(count_by_phi.size());
  for (const auto& [value, count] : count_by_phi)
    terms.push_back(make_rational(to_integer(count), to_integer(value)));
  return exact_sum(std::move(terms));
}

}  // namespace dioph
