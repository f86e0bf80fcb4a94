#include "dioph/real.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <vector>

namespace dioph {

namespace {

std::atomic<unsigned> g_precision{kDefaultPrecisionBits};

unsigned wider(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

unsigned working_precision() { return g_precision.load(std::memory_order_relaxed); }

void set_working_precision(unsigned bits) {
  if (bits < kMinPrecisionBits)
    throw std::invalid_argument("precision below " + std::to_string(kMinPrecisionBits) + " bits");
  g_precision.store(bits, std::memory_order_relaxed);
}

Real::Real(unsigned precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

Real::Real(const Rational& q, unsigned precision) {
  mpfr_init2(value_, precision);
  mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
}

Real Real::from_uint(std::uint64_t v, unsigned precision) {
  Real r(precision);
  mpfr_set_z(r.value_, to_integer(v).get_mpz_t(), MPFR_RNDN);
  return r;
}

Real Real::from_double(double v, unsigned precision) {
  Real r(precision);
  mpfr_set_d(r.value_, v, MPFR_RNDN);
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

void Real::widen_to(unsigned precision) {
  if (precision > this->precision()) mpfr_prec_round(value_, precision, MPFR_RNDN);
}

Real& Real::operator+=(const Real& rhs) {
  widen_to(rhs.precision());
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  widen_to(rhs.precision());
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  widen_to(rhs.precision());
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  widen_to(rhs.precision());
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, value_);
  return std::string(buf.data());
}

int compare(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()); }

int compare(const Real& a, const Rational& b) { return mpfr_cmp_q(a.get(), b.get_mpq_t()); }

Real log(const Real& x) {
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, const Real& exponent) {
  Real r(wider(base, exponent));
  mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, const Rational& exponent) {
  return pow(base, Real(exponent, base.precision()));
}

Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real ln_of(std::uint64_t n, unsigned precision) { return log(Real::from_uint(n, precision)); }

Real euler_gamma(unsigned precision) {
  Real r(precision);
  mpfr_const_euler(r.get(), MPFR_RNDN);
  return r;
}

Integer floor_integer(const Real& x) {
  if (!x.is_finite()) throw std::domain_error("floor of a non-finite value");
  Integer z;
  mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDD);
  return z;
}

bool near_integer(const Real& x, unsigned ulps) {
  if (!x.is_finite()) return false;
  Real nearest(x.precision());
  mpfr_rint(nearest.get(), x.get(), MPFR_RNDN);
  if (compare(nearest, x) == 0) return true;
  Real gap = abs(x - nearest);
  // One ulp of x is 2^(exp(x) - prec).
  Real ulp(x.precision());
  mpfr_set_ui_2exp(ulp.get(), ulps, mpfr_get_exp(x.get()) - static_cast<mpfr_exp_t>(x.precision()),
                   MPFR_RNDN);
  return compare(gap, ulp) <= 0;
}

}  // namespace dioph
