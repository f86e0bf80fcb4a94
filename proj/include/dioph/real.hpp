#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>

#include "dioph/rational.hpp"

namespace dioph {

inline constexpr unsigned kMinPrecisionBits = 113;
inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Process-wide mantissa width for transcendental comparisons.
unsigned working_precision();
/// Throws std::invalid_argument below kMinPrecisionBits.
void set_working_precision(unsigned bits);

/// Value-semantic wrapper over an MPFR float. Binary operations round to
/// nearest at the wider of the two operand precisions.
class Real {
 public:
  explicit Real(unsigned precision = working_precision());
  Real(const Rational& q, unsigned precision = working_precision());
  static Real from_uint(std::uint64_t v, unsigned precision = working_precision());
  static Real from_double(double v, unsigned precision = working_precision());

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
  Real operator-() const;

  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 25) const;

 private:
  void widen_to(unsigned precision);
  mpfr_t value_;
};

int compare(const Real& a, const Real& b);
int compare(const Real& a, const Rational& b);

inline bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
inline bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
inline bool operator>(const Real& a, const Real& b) { return compare(a, b) > 0; }
inline bool operator>=(const Real& a, const Real& b) { return compare(a, b) >= 0; }
inline bool operator<(const Real& a, const Rational& b) { return compare(a, b) < 0; }
inline bool operator<=(const Real& a, const Rational& b) { return compare(a, b) <= 0; }
inline bool operator>(const Real& a, const Rational& b) { return compare(a, b) > 0; }
inline bool operator>=(const Real& a, const Rational& b) { return compare(a, b) >= 0; }

Real log(const Real& x);
Real exp(const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, const Rational& exponent);
Real abs(const Real& x);
Real ln_of(std::uint64_t n, unsigned precision = working_precision());
Real euler_gamma(unsigned precision = working_precision());

/// floor(x); x must be finite.
Integer floor_integer(const Real& x);

/// True when x lies within `ulps` units in the last place of an integer.
bool near_integer(const Real& x, unsigned ulps = 1);

}  // namespace dioph
