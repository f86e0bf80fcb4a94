#include "dioph/rational.hpp"

#include <stdexcept>

namespace dioph {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(std::int64_t num, std::uint64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Integer n;
  mpz_set_si(n.get_mpz_t(), num);
  return make_rational(n, to_integer(den));
}

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return make_rational(n, d);
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_string(const Integer& z) { return z.get_str(10); }

Integer to_integer(std::uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return z;
}

Rational to_rational(std::uint64_t v) { return Rational(to_integer(v)); }

Rational exact_sum(std::vector<Rational> terms) {
  if (terms.empty()) return Rational(0);
  while (terms.size() > 1) {
    std::size_t out = 0;
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) terms[out++] = terms[i] + terms[i + 1];
    if (terms.size() % 2 == 1) terms[out++] = std::move(terms.back());
    terms.resize(out);
  }
  return std::move(terms.front());
}

void RationalAccumulator::add(Rational term) {
  pending_.push_back(std::move(term));
  if (pending_.size() >= kBatch) {
    folded_ += exact_sum(std::move(pending_));
    pending_.clear();
  }
}

Rational RationalAccumulator::total() const { return folded_ + exact_sum(pending_); }

Integer exact_product(std::span<const Integer> factors) {
  if (factors.empty()) return Integer(1);
  if (factors.size() == 1) return factors.front();
  const std::size_t mid = factors.size() / 2;
  return exact_product(factors.subspan(0, mid)) * exact_product(factors.subspan(mid));
}

}  // namespace dioph
