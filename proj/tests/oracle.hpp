#pragma once

// Brute-force reference implementations. Nothing here calls into the
// library beyond the Rational type, so agreement is an independent check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "dioph/rational.hpp"

namespace oracle {

using dioph::Rational;

inline std::uint64_t phi(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t a = 1; a <= n; ++a) count += std::gcd(a, n) == 1;
  return count;
}

inline std::uint64_t support_size(std::uint64_t n, std::uint64_t cut) {
  std::uint64_t count = 0;
  for (std::uint64_t a = 1; a <= n; ++a) count += std::gcd(a, n) <= cut;
  return count;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline int moebius(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return sign;
}

struct Interval {
  Rational lo, hi;
};

/// Open arcs a/n +- psi/n for the numerators 1..n with gcd(a, n) <= cut,
/// as plain intervals on the real line (not reduced mod 1).
inline std::vector<Interval> raw_arcs(std::uint64_t n, const Rational& psi, std::uint64_t cut) {
  std::vector<Interval> out;
  if (psi == 0) return out;
  for (std::uint64_t a = 1; a <= n; ++a) {
    if (std::gcd(a, n) > cut) continue;
    const Rational centre(Rational(static_cast<long>(a)) / static_cast<long>(n));
    const Rational r = psi / static_cast<long>(n);
    out.push_back({centre - r, centre + r});
  }
  return out;
}

/// Measure of a union of arcs on R/Z: fold each into [0, 2) pieces cut at
/// integer points, then sort and merge on [0, 1).
inline Rational circle_union_measure(const std::vector<Interval>& arcs) {
  std::vector<Interval> pieces;
  for (const auto& arc : arcs) {
    if (arc.hi - arc.lo >= 1) return Rational(1);
    const mpz_class shift = [&] {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), arc.lo.get_num_mpz_t(), arc.lo.get_den_mpz_t());
      return q;
    }();
    Interval a{arc.lo - Rational(shift), arc.hi - Rational(shift)};
    if (a.hi <= 1) {
      pieces.push_back(a);
    } else {
      pieces.push_back({a.lo, Rational(1)});
      pieces.push_back({Rational(0), a.hi - 1});
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  Rational total(0);
  bool open = false;
  Rational cur_lo, cur_hi;
  for (const auto& p : pieces) {
    if (open && p.lo <= cur_hi) {
      cur_hi = std::max(cur_hi, p.hi);
      continue;
    }
    if (open) total += cur_hi - cur_lo;
    cur_lo = p.lo;
    cur_hi = p.hi;
    open = true;
  }
  if (open) total += cur_hi - cur_lo;
  return total;
}

/// Length of the overlap of two arcs on R/Z, each shorter than 1/2.
inline Rational circle_overlap(const Interval& x, const Interval& y) {
  Rational total(0);
  for (int shift = -2; shift <= 2; ++shift) {
    const Rational lo = std::max<Rational>(x.lo, y.lo + shift);
    const Rational hi = std::min<Rational>(x.hi, y.hi + shift);
    if (hi > lo) total += hi - lo;
  }
  return total;
}

/// Intersection measure of the two reduced sets, split by whether the arc
/// centres coincide mod 1. Arcs inside one set are disjoint, so summing
/// pairwise overlaps is exact.
struct PairSplit {
  Rational total, coinciding, other;
};

inline PairSplit pair_split(std::uint64_t m, const Rational& psi_m, std::uint64_t cut_m, std::uint64_t n,
                            const Rational& psi_n, std::uint64_t cut_n) {
  PairSplit out;
  const auto am = raw_arcs(m, psi_m, cut_m);
  const auto an = raw_arcs(n, psi_n, cut_n);
  for (const auto& x : am) {
    for (const auto& y : an) {
      const Rational v = circle_overlap(x, y);
      if (v == 0) continue;
      const Rational cx = (x.lo + x.hi) / 2, cy = (y.lo + y.hi) / 2;
      const Rational diff = cx - cy;
      (diff.get_den() == 1 ? out.coinciding : out.other) += v;
    }
  }
  out.total = out.coinciding + out.other;
  return out;
}

}  // namespace oracle
