#include "dioph/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dioph/circleset.hpp"
#include "dioph/numtheory.hpp"

namespace dioph {

namespace {

using i128 = __int128;

constexpr std::size_t kInt128Bits = 120;

bool fits_int128(const Integer& z) { return mpz_sizeinbase(z.get_mpz_t(), 2) <= kInt128Bits; }

i128 to_i128(const Integer& z) {
  std::uint64_t limbs[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(limbs, &count, -1, sizeof(std::uint64_t), 0, 0, z.get_mpz_t());
  const i128 magnitude = (static_cast<i128>(limbs[1]) << 64) | limbs[0];
  return z < 0 ? -magnitude : magnitude;
}

Integer from_i128(i128 v) {
  const bool negative = v < 0;
  unsigned __int128 magnitude = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  const std::uint64_t limbs[2] = {static_cast<std::uint64_t>(magnitude), static_cast<std::uint64_t>(magnitude >> 64)};
  Integer z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
  return negative ? Integer(-z) : z;
}

Integer from_int64(std::int64_t v) {
  Integer z;
  mpz_set_si(z.get_mpz_t(), v);
  return z;
}

template <typename Int>
Int lift(const Integer& z) {
  if constexpr (std::is_same_v<Int, i128>)
    return to_i128(z);
  else
    return z;
}

template <typename Int>
Int lift_int(std::int64_t v) {
  if constexpr (std::is_same_v<Int, i128>)
    return static_cast<i128>(v);
  else
    return from_int64(v);
}

template <typename Int>
Integer lower(const Int& v) {
  if constexpr (std::is_same_v<Int, i128>)
    return from_i128(v);
  else
    return v;
}

/// Residues a mod n in [0, n) of the kept numerators, ascending.
std::vector<std::int64_t> kept_residues(std::uint64_t n, std::uint64_t cut) {
  std::vector<std::int64_t> out;
  for (auto a : support(n, cut).members()) out.push_back(static_cast<std::int64_t>(a % n));
  std::sort(out.begin(), out.end());
  return out;
}

struct Attribution {
  Integer b1;  // numerators over the common scale
  Integer b2;
  std::uint64_t coinciding = 0;
};

/// Walks both arc lists (the second lifted by -1, 0, +1 turns) and
/// attributes every overlapping piece to its unique pair of source arcs.
/// Arcs within one set are disjoint, so each piece has one source pair.
template <typename Int>
Attribution attribute(std::uint64_t m, std::uint64_t n, const std::vector<std::int64_t>& res_m,
                      const std::vector<std::int64_t>& res_n, const Integer& unit_m, const Integer& rad_m,
                      const Integer& unit_n, const Integer& rad_n) {
  const Int um = lift<Int>(unit_m);
  const Int rm = lift<Int>(rad_m);
  const Int un = lift<Int>(unit_n);
  const Int rn = lift<Int>(rad_n);

  std::vector<std::int64_t> lifted;
  lifted.reserve(3 * res_n.size());
  for (std::int64_t turn = -1; turn <= 1; ++turn)
    for (auto b : res_n) lifted.push_back(b + turn * static_cast<std::int64_t>(n));

  Int b1{0};
  Int b2{0};
  std::uint64_t coinciding = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < res_m.size() && j < lifted.size()) {
    const Int cm = lift_int<Int>(res_m[i]) * um;
    const Int cn = lift_int<Int>(lifted[j]) * un;
    const Int alo = cm - rm;
    const Int ahi = cm + rm;
    const Int blo = cn - rn;
    const Int bhi = cn + rn;
    const Int lo = alo < blo ? blo : alo;
    const Int hi = ahi < bhi ? ahi : bhi;
    if (lo < hi) {
      const bool common = static_cast<i128>(res_m[i]) * static_cast<i128>(n) ==
                          static_cast<i128>(lifted[j]) * static_cast<i128>(m);
      if (common) {
        b2 += hi - lo;
        ++coinciding;
      } else {
        b1 += hi - lo;
      }
    }
    if (ahi < bhi)
      ++i;
    else
      ++j;
  }
  return Attribution{lower<Int>(b1), lower<Int>(b2), coinciding};
}

Integer lcm_of(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Rational min_radius(std::uint64_t m, std::uint64_t n, const Rational& psi_m, const Rational& psi_n) {
  const Rational rm = psi_m / to_rational(m);
  const Rational rn = psi_n / to_rational(n);
  return rm < rn ? rm : rn;
}

// --- coverage sweep -------------------------------------------------------

struct Level {
  std::uint64_t n;
  Integer p;  // psi(n) = p / q
  Integer q;
  i128 p_small = 0;
  i128 q_small = 0;
  bool small = false;
  double psi = 0.0;
};

/// Endpoint (a + sigma * psi(n)) / n of an arc; delta is +1 when the arc opens.
struct Event {
  double approx;
  std::int64_t a;
  std::uint32_t level;
  std::int8_t sigma;
  std::int8_t delta;
};

constexpr double kApproxMargin = 1e-12;

int exact_compare(const Event& x, const Event& y, const std::vector<Level>& levels) {
  const Level& lx = levels[x.level];
  const Level& ly = levels[y.level];
  if (lx.small && ly.small) {
    const i128 left = (static_cast<i128>(x.a) * lx.q_small + x.sigma * lx.p_small) *
                      (static_cast<i128>(ly.n) * ly.q_small);
    const i128 right = (static_cast<i128>(y.a) * ly.q_small + y.sigma * ly.p_small) *
                       (static_cast<i128>(lx.n) * lx.q_small);
    return left < right ? -1 : (left > right ? 1 : 0);
  }
  const Integer left = (from_int64(x.a) * lx.q + x.sigma * lx.p) * (to_integer(ly.n) * ly.q);
  const Integer right = (from_int64(y.a) * ly.q + y.sigma * ly.p) * (to_integer(lx.n) * lx.q);
  return cmp(left, right);
}

int compare_events(const Event& x, const Event& y, const std::vector<Level>& levels) {
  if (x.approx < y.approx - kApproxMargin) return -1;
  if (x.approx > y.approx + kApproxMargin) return 1;
  return exact_compare(x, y, levels);
}

}  // namespace

std::string overlap_csv_header() { return "m,n,gcd,total,b1,b2,b1_bound,coinciding_centers,b2_forced_zero"; }

std::string to_csv_row(const OverlapReport& r) {
  return std::to_string(r.m) + "," + std::to_string(r.n) + "," + std::to_string(r.gcd_mn) + "," +
         to_string(r.total) + "," + to_string(r.b1) + "," + to_string(r.b2) + "," + to_string(r.b1_bound) +
         "," + std::to_string(r.coinciding_centers) + "," + (r.b2_forced_zero ? "true" : "false");
}

std::uint64_t common_centre_count(std::uint64_t m, std::uint64_t n, std::uint64_t dcut_m, std::uint64_t dcut_n) {
  const std::uint64_t g = std::gcd(m, n);
  const std::uint64_t mg = m / g;
  const std::uint64_t ng = n / g;
  if (mg > dcut_m || ng > dcut_n) return 0;
  // Centre k/g equals (k m/g)/m with gcd(k m/g, m) = (m/g) gcd(k, g).
  std::uint64_t count = 0;
  for (std::uint64_t k = 1; k <= g; ++k) {
    const std::uint64_t h = std::gcd(k, g);
    if (mg * h <= dcut_m && ng * h <= dcut_n) ++count;
  }
  return count;
}

CommonCentres b2_closed_form(std::uint64_t m, std::uint64_t n, const Rational& psi_m, const Rational& psi_n,
                             std::uint64_t dcut_m, std::uint64_t dcut_n) {
  CommonCentres out{0, Rational(0)};
  if (psi_m == 0 || psi_n == 0) return out;
  out.count = common_centre_count(m, n, dcut_m, dcut_n);
  out.measure = Rational(2) * min_radius(m, n, psi_m, psi_n) * to_rational(out.count);
  return out;
}

OverlapReport intersect_pair(std::uint64_t m, std::uint64_t n, const PsiSpec& psi, const ReductionPolicy& policy) {
  if (m == 0 || m >= n) throw std::domain_error("intersect_pair requires 1 <= m < n");
  OverlapReport r;
  r.m = m;
  r.n = n;
  r.gcd_mn = std::gcd(m, n);
  const Rational psi_m = psi(m);
  const Rational psi_n = psi(n);
  const std::uint64_t dm = policy.dcut(m);
  const std::uint64_t dn = policy.dcut(n);
  r.b1_bound = Rational(8) * psi_m * psi_n;
  r.b2_forced_zero = r.gcd_mn * dn < n;  // gcd(m, n) < n / Dcut(n)

  const CommonCentres closed = b2_closed_form(m, n, psi_m, psi_n, dm, dn);
  r.b2_closed_form = closed.measure;

  r.total = intersect(build_E(m, psi, policy), build_E(n, psi, policy)).measure();
  if (psi_m == 0 || psi_n == 0) return r;

  // Common scale L: every endpoint (a +- psi)/m is an integer multiple of 1/L.
  const Integer scale = lcm_of(psi_m.get_den() * to_integer(m), psi_n.get_den() * to_integer(n));
  const Integer unit_m = scale / to_integer(m);
  const Integer unit_n = scale / to_integer(n);
  const Integer rad_m = psi_m.get_num() * (scale / (psi_m.get_den() * to_integer(m)));
  const Integer rad_n = psi_n.get_num() * (scale / (psi_n.get_den() * to_integer(n)));
  const auto res_m = kept_residues(m, dm);
  const auto res_n = kept_residues(n, dn);

  const Integer headroom = scale * 4;
  const Attribution att = fits_int128(headroom)
                              ? attribute<i128>(m, n, res_m, res_n, unit_m, rad_m, unit_n, rad_n)
                              : attribute<Integer>(m, n, res_m, res_n, unit_m, rad_m, unit_n, rad_n);
  r.b1 = make_rational(att.b1, scale);
  r.b2 = make_rational(att.b2, scale);
  r.coinciding_centers = att.coinciding;
  return r;
}

CoverageMoments coverage_moments(std::uint64_t M, std::uint64_t N, const PsiSpec& psi,
                                 const ReductionPolicy& policy) {
  if (M == 0 || M > N) throw std::domain_error("coverage requires 1 <= M <= N");
  std::vector<Level> levels;
  std::vector<Event> events;
  for (std::uint64_t n = M; n <= N; ++n) {
    const Rational value = psi(n);
    if (value == 0) continue;
    Level level{n, value.get_num(), value.get_den()};
    level.small = mpz_sizeinbase(level.q.get_mpz_t(), 2) <= 28 && n < (1ULL << 31);
    if (level.small) {
      level.p_small = to_i128(level.p);
      level.q_small = to_i128(level.q);
    }
    level.psi = value.get_d();
    const auto idx = static_cast<std::uint32_t>(levels.size());
    levels.push_back(std::move(level));
    const double inv = 1.0 / static_cast<double>(n);
    const double r = levels.back().psi;
    auto push = [&](std::int64_t a, std::int8_t sigma, std::int8_t delta) {
      events.push_back({(static_cast<double>(a) + sigma * r) * inv, a, idx, sigma, delta});
    };
    for (auto a : support(n, policy.dcut(n)).members()) {
      const auto sa = static_cast<std::int64_t>(a);
      if (a == n) {
        // Arc around 0 split at the origin.
        push(0, 0, +1);
        push(0, +1, -1);
        push(sa, -1, +1);
        push(sa, 0, -1);
      } else {
        push(sa, -1, +1);
        push(sa, +1, -1);
      }
    }
  }
  CoverageMoments out{Rational(0), Rational(0), Rational(0), 0};
  out.arcs = events.size() / 2;
  if (events.empty()) return out;

  std::sort(events.begin(), events.end(),
            [&levels](const Event& x, const Event& y) { return compare_events(x, y, levels) < 0; });

  // integral f(c) = sum over positions x of x * (f(c_before) - f(c_after)),
  // accumulated per level as (sum w a + psi sum w sigma) / n.
  struct Acc {
    i128 a[3] = {0, 0, 0};
    i128 s[3] = {0, 0, 0};
  };
  std::vector<Acc> acc(levels.size());
  std::int64_t count = 0;
  for (std::size_t i = 0; i < events.size();) {
    std::size_t j = i;
    const std::int64_t before = count;
    while (j < events.size() && (j == i || compare_events(events[i], events[j], levels) == 0)) {
      count += events[j].delta;
      ++j;
    }
    const std::int64_t after = count;
    const i128 w[3] = {static_cast<i128>((before > 0) - (after > 0)), static_cast<i128>(before - after),
                       static_cast<i128>(before) * before - static_cast<i128>(after) * after};
    Acc& slot = acc[events[i].level];
    for (int k = 0; k < 3; ++k) {
      slot.a[k] += w[k] * events[i].a;
      slot.s[k] += w[k] * events[i].sigma;
    }
    i = j;
  }
  if (count != 0) throw std::logic_error("coverage sweep left unbalanced arcs");

  Rational* targets[3] = {&out.union_measure, &out.first_moment, &out.second_moment};
  for (int k = 0; k < 3; ++k) {
    std::vector<Rational> terms;
    for (std::size_t idx = 0; idx < levels.size(); ++idx) {
      if (acc[idx].a[k] == 0 && acc[idx].s[k] == 0) continue;
      const Level& level = levels[idx];
      const Rational psi_n = make_rational(level.p, level.q);
      terms.push_back((Rational(from_i128(acc[idx].a[k])) + Rational(from_i128(acc[idx].s[k])) * psi_n) /
                      to_rational(level.n));
    }
    *targets[k] = exact_sum(std::move(terms));
  }
  return out;
}

Rational union_measure(std::uint64_t M, std::uint64_t N, const PsiSpec& psi, const ReductionPolicy& policy) {
  return coverage_moments(M, N, psi, policy).union_measure;
}

Real relative_tolerance() {
  Real tol(Rational(1));
  mpfr_div_2ui(tol.get(), tol.get(), 80, MPFR_RNDN);
  return tol;
}

namespace {

bool at_most_with_tolerance(const Real& lhs, const Real& rhs) {
  const Real slack = rhs * (Real(Rational(1)) + relative_tolerance());
  return lhs <= slack;
}

}  // namespace

bool QuasiIndependenceReport::within_bound() const { return at_most_with_tolerance(Real(s2), bound); }

bool QuasiIndependenceReport::partial_summation_ok() const {
  return at_most_with_tolerance(log_weighted, partial_summation);
}

bool QuasiIndependenceReport::b2_chain_ok() const {
  return at_most_with_tolerance(Real(sum_b2), Real(Rational(2)) * log_weighted);
}

QuasiIndependenceReport quasi_independence(std::uint64_t N, const PsiSpec& psi, const ReductionPolicy& policy,
                                           const Rational& eps, std::uint64_t pair_audit_cap) {
  if (N == 0) throw std::domain_error("quasi_independence requires N >= 1");
  if (eps <= 0) throw std::domain_error("quasi_independence requires eps > 0");
  QuasiIndependenceReport r;
  r.N = N;
  r.eps = eps;

  std::vector<Rational> psi_values(N + 1);
  std::vector<std::uint64_t> cuts(N + 1, 0);
  std::vector<Rational> measures;
  std::vector<Rational> psi_terms;
  std::vector<Rational> psi_squares;
  const Rational half_eps = eps / 2;
  Real log_weighted(working_precision());
  for (std::uint64_t n = 1; n <= N; ++n) {
    psi_values[n] = psi(n);
    cuts[n] = policy.dcut(n);
    if (psi_values[n] == 0) continue;
    measures.push_back(measure_E(n, psi, policy));
    psi_terms.push_back(psi_values[n]);
    psi_squares.push_back(psi_values[n] * psi_values[n]);
    if (n > 1) log_weighted += Real(psi_values[n]) * log_power(n, half_eps);
  }
  r.s1 = exact_sum(std::move(measures));
  r.sum_psi = exact_sum(std::move(psi_terms));
  const Rational sum_sq = exact_sum(std::move(psi_squares));
  r.b1_bound = Rational(4) * (r.sum_psi * r.sum_psi - sum_sq);
  r.log_weighted = log_weighted;
  r.partial_summation = (N > 1 ? log_power(N, half_eps) : Real(working_precision())) * Real(r.sum_psi);
  r.constant = Rational(8 * 400) / (eps * eps) + 1;
  r.bound = Real(r.constant * r.s1 * r.s1) + Real(Rational(4)) * log_weighted;

  const CoverageMoments moments = coverage_moments(1, N, psi, policy);
  r.s2 = moments.second_moment;
  r.first_moment_ok = moments.first_moment == r.s1;
  r.ratio = r.s1 == 0 ? Real(working_precision()) : Real(r.s2) / Real(r.s1 * r.s1);

  // Common centres need gcd(m, n) >= n / Dcut(n), so m is a multiple of
  // n/d for a divisor d <= Dcut(n).
  std::vector<Rational> b2_terms;
  for (std::uint64_t n = 2; n <= N; ++n) {
    if (psi_values[n] == 0) continue;
    std::set<std::uint64_t> partners;
    for (auto d : divisors_up_to(n, cuts[n])) {
      if (d < 2) continue;
      const std::uint64_t g = n / d;
      for (std::uint64_t j = 1; j < d; ++j) partners.insert(j * g);
    }
    for (auto m : partners) {
      if (psi_values[m] == 0) continue;
      CommonCentres c = b2_closed_form(m, n, psi_values[m], psi_values[n], cuts[m], cuts[n]);
      if (c.count > 0) b2_terms.push_back(std::move(c.measure));
    }
  }
  r.sum_b2 = exact_sum(std::move(b2_terms));
  r.sum_b1 = (r.s2 - r.s1) / 2 - r.sum_b2;

  if (N <= pair_audit_cap) {
    r.pair_audit_run = true;
    std::vector<Rational> totals;
    std::vector<Rational> b2s;
    for (std::uint64_t n = 2; n <= N; ++n) {
      if (psi_values[n] == 0) continue;
      for (std::uint64_t m = 1; m < n; ++m) {
        if (psi_values[m] == 0) continue;
        OverlapReport pair = intersect_pair(m, n, psi, policy);
        r.pair_audit_ok = r.pair_audit_ok && pair.consistent();
        totals.push_back(std::move(pair.total));
        b2s.push_back(std::move(pair.b2));
      }
    }
    const Rational pair_total = exact_sum(std::move(totals));
    r.pair_audit_ok = r.pair_audit_ok && pair_total == (r.s2 - r.s1) / 2 && exact_sum(std::move(b2s)) == r.sum_b2;
  }
  return r;
}

BorelCantelliReport borel_cantelli_bound(std::uint64_t N, const PsiSpec& psi, const ReductionPolicy& policy) {
  if (N == 0) throw std::domain_error("borel_cantelli_bound requires N >= 1");
  BorelCantelliReport r;
  r.N = N;
  std::vector<Rational> measures;
  std::vector<CircleIntervalSet> sets;
  for (std::uint64_t n = 1; n <= N; ++n) {
    measures.push_back(measure_E(n, psi, policy));
    if (measures.back() != 0) sets.push_back(build_E(n, psi, policy));
  }
  r.s1 = exact_sum(std::move(measures));
  if (r.s1 == 0) throw std::domain_error("Borel-Cantelli ratio undefined: all measures are zero");
  const CoverageMoments moments = coverage_moments(1, N, psi, policy);
  r.s2 = moments.second_moment;
  r.ratio = r.s1 * r.s1 / r.s2;
  r.union_measure = unite_all(std::move(sets)).measure();
  r.union_routes_agree = r.union_measure == moments.union_measure && moments.first_moment == r.s1;
  return r;
}

}  // namespace dioph
