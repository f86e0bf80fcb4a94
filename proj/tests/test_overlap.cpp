#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "dioph/approxsets.hpp"
#include "dioph/circleset.hpp"
#include "dioph/overlap.hpp"
#include "oracle.hpp"

using namespace dioph;

namespace {

Rational q(long p, long r) { return make_rational(p, static_cast<std::uint64_t>(r)); }

const std::vector<ReductionPolicy>& policies() {
  static const std::vector<ReductionPolicy> all = {ReductionPolicy::full(), ReductionPolicy::coprime(),
                                                   ReductionPolicy::log_power(q(1, 4)), ReductionPolicy::fixed_cut(2)};
  return all;
}

}  // namespace

TEST(Overlap, HandFixtures) {
  const auto a = intersect_pair(2, 3, PsiSpec::parse("const:1/10"), ReductionPolicy::full());
  EXPECT_EQ(a.total, q(1, 15));
  EXPECT_EQ(a.b1, 0);
  EXPECT_EQ(a.b2, q(1, 15));
  EXPECT_EQ(a.coinciding_centers, 1u);
  EXPECT_EQ(to_csv_row(a), "2,3,1,1/15,0,1/15,2/25,1,false");

  const auto b = intersect_pair(2, 5, PsiSpec::parse("const:1/4"), ReductionPolicy::full());
  EXPECT_EQ(b.total, q(1, 4));
  EXPECT_EQ(b.b1, q(3, 20));
  EXPECT_EQ(b.b2, q(1, 10));

  const auto z = intersect_pair(4, 6, PsiSpec::parse("const:0"), ReductionPolicy::full());
  EXPECT_EQ(z.total, 0);
  EXPECT_EQ(z.b1, 0);
  EXPECT_EQ(z.b2, 0);
  EXPECT_THROW(intersect_pair(5, 3, PsiSpec::parse("const:0"), ReductionPolicy::full()), std::domain_error);
  EXPECT_EQ(overlap_csv_header(), "m,n,gcd,total,b1,b2,b1_bound,coinciding_centers,b2_forced_zero");
}

TEST(Overlap, UnionAndIntersectionExamples) {
  const auto psi = PsiSpec::parse("const:1/100");
  const auto e2 = build_E(2, psi, ReductionPolicy::full());
  const auto e3 = build_E(3, psi, ReductionPolicy::full());
  EXPECT_EQ(unite(e2, e3).measure(), q(1, 30));
  EXPECT_EQ(union_measure(2, 3, psi, ReductionPolicy::full()), q(1, 30));
  const auto psi10 = PsiSpec::parse("const:1/10");
  EXPECT_EQ(intersect(build_E(2, psi10, ReductionPolicy::full()), build_E(3, psi10, ReductionPolicy::full())).measure(),
            q(1, 15));
}

TEST(Overlap, PairsAgainstOracle) {
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<std::uint64_t> pick(1, 120);
  const std::vector<std::string> psis = {"const:1/2", "const:1/9", "logpow:c=1,beta=-1", "power:c=1,alpha=-1/2"};
  for (int i = 0; i < 400; ++i) {
    std::uint64_t m = pick(gen), n = pick(gen);
    if (m == n) continue;
    if (m > n) std::swap(m, n);
    const auto psi = PsiSpec::parse(psis[i % psis.size()]);
    const auto& policy = policies()[(i / 4) % policies().size()];
    const auto r = intersect_pair(m, n, psi, policy);
    const auto split = oracle::pair_split(m, psi(m), policy.dcut(m), n, psi(n), policy.dcut(n));
    EXPECT_EQ(r.total, split.total) << m << " " << n;
    EXPECT_EQ(r.b2, split.coinciding) << m << " " << n;
    EXPECT_EQ(r.b1, split.other) << m << " " << n;
    EXPECT_TRUE(r.consistent()) << m << " " << n;
  }
}

TEST(Overlap, Invariants) {
  std::mt19937_64 gen(23);
  std::uniform_int_distribution<std::uint64_t> pick(1, 600);
  for (int i = 0; i < 500; ++i) {
    std::uint64_t m = pick(gen), n = pick(gen);
    if (m == n) continue;
    if (m > n) std::swap(m, n);
    const auto psi = PsiSpec::parse(i % 2 ? "const:1/2" : "logpow:c=1/2,beta=-1/2");
    const auto& policy = policies()[i % policies().size()];
    const auto r = intersect_pair(m, n, psi, policy);
    EXPECT_EQ(r.b1 + r.b2, r.total);
    EXPECT_LE(r.b1, 8 * psi(m) * psi(n));
    EXPECT_EQ(r.b2, r.b2_closed_form);
    if (std::gcd(m, n) * policy.dcut(n) < n) {
      EXPECT_TRUE(r.b2_forced_zero);
      EXPECT_EQ(r.b2, 0);
    }
  }
}

TEST(Overlap, CoprimeSymmetry) {
  const auto psi = PsiSpec::parse("const:1/3");
  for (std::uint64_t n = 2; n <= 60; ++n) {
    for (std::uint64_t m = 1; m < n; ++m) {
      const auto r = intersect_pair(m, n, psi, ReductionPolicy::coprime());
      const auto swapped = intersect(build_E(n, psi, ReductionPolicy::coprime()), build_E(m, psi, ReductionPolicy::coprime()));
      EXPECT_EQ(r.total, swapped.measure());
    }
  }
}

TEST(Coverage, MomentsAgainstOracle) {
  for (const auto& policy : policies()) {
    for (const char* text : {"const:1/2", "const:1/11", "primes:1/4"}) {
      const auto psi = PsiSpec::parse(text);
      const std::uint64_t N = 24;
      std::vector<oracle::Interval> all;
      Rational s1(0), s2(0);
      for (std::uint64_t n = 1; n <= N; ++n) {
        const auto arcs = oracle::raw_arcs(n, psi(n), policy.dcut(n));
        all.insert(all.end(), arcs.begin(), arcs.end());
        s1 += oracle::circle_union_measure(arcs);
        for (std::uint64_t m = 1; m <= N; ++m) {
          if (m == n) continue;
          s2 += oracle::pair_split(m, psi(m), policy.dcut(m), n, psi(n), policy.dcut(n)).total;
        }
      }
      s2 += s1;
      const auto c = coverage_moments(1, N, psi, policy);
      EXPECT_EQ(c.first_moment, s1) << text;
      EXPECT_EQ(c.second_moment, s2) << text;
      EXPECT_EQ(c.union_measure, oracle::circle_union_measure(all)) << text;
    }
  }
}

TEST(Coverage, UnionMonotone) {
  const auto psi = PsiSpec::parse("const:1/20");
  for (const auto& policy : policies()) {
    Rational previous(0);
    for (std::uint64_t N = 3; N <= 80; ++N) {
      const Rational u = union_measure(3, N, psi, policy);
      EXPECT_GE(u, previous);
      EXPECT_GE(u, measure_E(N, psi, policy));
      previous = u;
    }
    EXPECT_EQ(union_measure(7, 7, psi, policy), measure_E(7, psi, policy));
  }
}

TEST(QuasiIndependence, SmallCases) {
  const auto psi = PsiSpec::parse("const:1/2");
  const auto one = quasi_independence(1, psi, ReductionPolicy::full(), q(1, 2));
  // a single set: S2 is its own measure, the diagonal term
  EXPECT_EQ(one.s2, one.s1);
  EXPECT_EQ(one.s1, 1);
  const auto zero = quasi_independence(2, PsiSpec::parse("const:0"), ReductionPolicy::full(), q(1, 2));
  EXPECT_EQ(zero.s1, 0);
  EXPECT_EQ(zero.s2, 0);
  EXPECT_THROW(quasi_independence(0, psi, ReductionPolicy::full(), q(1, 2)), std::domain_error);
}

TEST(QuasiIndependence, AggregatesMatchPairs) {
  const auto psi = PsiSpec::parse("const:1/5");
  const auto policy = ReductionPolicy::log_power(q(1, 4));
  const std::uint64_t N = 40;
  const auto r = quasi_independence(N, psi, policy, q(1, 2), N);
  Rational b1(0), b2(0);
  for (std::uint64_t n = 2; n <= N; ++n)
    for (std::uint64_t m = 1; m < n; ++m) {
      const auto p = intersect_pair(m, n, psi, policy);
      b1 += p.b1;
      b2 += p.b2;
    }
  EXPECT_EQ(r.sum_b1, b1);
  EXPECT_EQ(r.sum_b2, b2);
  EXPECT_EQ(r.s2, r.s1 + 2 * (b1 + b2));
  EXPECT_TRUE(r.first_moment_ok);
  EXPECT_TRUE(r.pair_audit_run);
  EXPECT_TRUE(r.pair_audit_ok);
  EXPECT_TRUE(r.b1_aggregate_ok());
  EXPECT_EQ(r.constant, Rational(8 * 400 * 4 + 1));
}

TEST(QuasiIndependence, BoundAt200) {
  const auto r = quasi_independence(200, PsiSpec::parse("const:1/2"), ReductionPolicy::log_power(q(1, 4)), Rational(1));
  EXPECT_TRUE(r.within_bound());
  EXPECT_GT(r.ratio, Rational(0));
}

TEST(BorelCantelli, Ordering) {
  const auto one = borel_cantelli_bound(1, PsiSpec::parse("const:1/8"), ReductionPolicy::full());
  EXPECT_EQ(one.ratio, q(1, 4));
  EXPECT_EQ(one.union_measure, q(1, 4));
  EXPECT_THROW(borel_cantelli_bound(5, PsiSpec::parse("const:0"), ReductionPolicy::full()), std::domain_error);

  // E_2 and E_3 at psi = 1/100 overlap only near 0
  const auto two = borel_cantelli_bound(3, PsiSpec::parse("indicator:c=1/100,support=2;3"), ReductionPolicy::full());
  const Rational l = q(1, 50);
  EXPECT_EQ(two.ratio, (2 * l) * (2 * l) / (2 * l + 2 * q(1, 150)));
  for (const auto& policy : policies()) {
    for (std::uint64_t N : {5u, 40u, 150u}) {
      const auto r = borel_cantelli_bound(N, PsiSpec::parse("const:1/6"), policy);
      EXPECT_TRUE(r.ratio_below_union());
      EXPECT_TRUE(r.union_below_bound());
      EXPECT_TRUE(r.union_routes_agree);
    }
  }
  const auto r500 = borel_cantelli_bound(500, PsiSpec::parse("const:1/2"), ReductionPolicy::log_power(q(1, 4)));
  EXPECT_GT(r500.ratio, 0);
  EXPECT_LE(r500.ratio, 1);
  EXPECT_LE(r500.ratio, r500.union_measure);
}
