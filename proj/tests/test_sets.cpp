#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "dioph/approxsets.hpp"
#include "dioph/circleset.hpp"
#include "dioph/numtheory.hpp"
#include "oracle.hpp"

using namespace dioph;

namespace {

Rational q(long p, long r) { return make_rational(p, static_cast<std::uint64_t>(r)); }

CircleIntervalSet arcs(std::vector<Arc> raw) { return CircleIntervalSet::normalize(std::move(raw)); }

CircleIntervalSet random_set(std::mt19937_64& gen) {
  std::uniform_int_distribution<long> pos(-40, 80), len(1, 30), count(0, 5);
  std::vector<Arc> raw;
  for (long i = count(gen); i > 0; --i) {
    const long lo = pos(gen);
    raw.push_back({q(lo, 40), q(lo + len(gen), 40)});
  }
  return arcs(raw);
}

}  // namespace

TEST(CircleSet, Normalize) {
  EXPECT_EQ(arcs({{q(95, 100), q(105, 100)}}).arcs(),
            (std::vector<Arc>{{Rational(0), q(1, 20)}, {q(19, 20), Rational(1)}}));
  EXPECT_EQ(arcs({{q(1, 10), q(3, 10)}, {q(2, 10), q(4, 10)}}).arcs(), (std::vector<Arc>{{q(1, 10), q(2, 5)}}));
  EXPECT_EQ(arcs({{q(1, 10), q(2, 10)}, {q(2, 10), q(3, 10)}}).arcs(), (std::vector<Arc>{{q(1, 10), q(3, 10)}}));
  EXPECT_EQ(arcs({{q(-1, 2), q(3, 4)}}), CircleIntervalSet::full());
  EXPECT_EQ(arcs({{q(95, 100), q(105, 100)}}).measure(), q(1, 10));
  EXPECT_THROW(arcs({{q(1, 2), q(1, 2)}}), std::domain_error);
  EXPECT_EQ(CircleIntervalSet().measure(), 0);
  EXPECT_EQ(CircleIntervalSet::full().measure(), 1);
}

TEST(CircleSet, UnionIntersection) {
  const auto a = arcs({{Rational(0), q(2, 10)}});
  const auto b = arcs({{q(1, 10), q(3, 10)}});
  EXPECT_EQ(unite(a, CircleIntervalSet()), a);
  EXPECT_EQ(unite(a, b), arcs({{Rational(0), q(3, 10)}}));
  EXPECT_TRUE(intersect(a, CircleIntervalSet()).empty());
  EXPECT_EQ(intersect(a, a), a);
  EXPECT_EQ(intersect(a, b), arcs({{q(1, 10), q(2, 10)}}));
}

TEST(CircleSet, Properties) {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 400; ++i) {
    const auto a = random_set(gen), b = random_set(gen);
    const auto u = unite(a, b), x = intersect(a, b);
    EXPECT_EQ(u.measure() + x.measure(), a.measure() + b.measure());
    EXPECT_EQ(unite(a, a), a);
    EXPECT_EQ(intersect(b, b), b);
    EXPECT_EQ(u, unite(b, a));
    EXPECT_EQ(x, intersect(b, a));
    EXPECT_TRUE(u.contains(a));
    EXPECT_TRUE(a.contains(x));
    EXPECT_LE(u.measure(), 1);
    EXPECT_EQ(unite_all({a, b, x}), u);
  }
}

TEST(CircleSet, MergeAgainstOracle) {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<long> pos(-30, 60), len(1, 20);
  for (int i = 0; i < 300; ++i) {
    std::vector<Arc> raw;
    std::vector<oracle::Interval> plain;
    for (int k = 0; k < 6; ++k) {
      const long lo = pos(gen), hi = lo + len(gen);
      raw.push_back({q(lo, 30), q(hi, 30)});
      plain.push_back({q(lo, 30), q(hi, 30)});
    }
    EXPECT_EQ(arcs(raw).measure(), oracle::circle_union_measure(plain));
  }
}

TEST(Psi, Evaluation) {
  EXPECT_EQ(PsiSpec::parse("const:1/10")(7), q(1, 10));
  EXPECT_EQ(PsiSpec::parse("const:3")(12), q(1, 2));
  EXPECT_THROW(PsiSpec(ConstPsi{Rational(3)}, false)(2), std::domain_error);
  const auto primes = PsiSpec::parse("primes:1/2");
  EXPECT_EQ(primes(6), 0);
  EXPECT_EQ(primes(7), q(1, 2));
  EXPECT_EQ(PsiSpec::parse("power:c=1,alpha=-1")(8), q(1, 8));
  EXPECT_EQ(PsiSpec::parse("logpow:c=1,beta=-1")(1), q(1, 2));
  const auto lp = PsiSpec::parse("logpow:c=1,beta=-1")(100);
  EXPECT_NEAR(lp.get_d(), 1 / 4.605170185988091, 1e-15);
  EXPECT_EQ(mpz_popcount(lp.get_den_mpz_t()), 1u);  // dyadic denominator
  const auto ind = PsiSpec::parse("indicator:c=1/3,support=10;20");
  EXPECT_EQ(ind(10), q(1, 3));
  EXPECT_EQ(ind(11), 0);
  EXPECT_THROW(PsiSpec::parse("const:0.1"), std::invalid_argument);
  EXPECT_THROW(PsiSpec::parse("bogus:1"), std::invalid_argument);
}

TEST(Psi, TextRoundTrip) {
  for (const char* text : {"const:1/10", "logpow:c=1,beta=-1", "power:c=1,alpha=1", "primes:1/2",
                           "indicator:c=1/2,support=3;10;20"}) {
    const auto spec = PsiSpec::parse(text);
    EXPECT_EQ(spec.to_string(), text);
    EXPECT_EQ(PsiSpec::parse(spec.to_string()).to_string(), spec.to_string());
  }
  const std::string path = testing::TempDir() + "psi_table.csv";
  {
    std::ofstream f(path);
    f << "n,psi\n# comment\n2,1/4\n5,1/3\n";
  }
  const auto table = PsiSpec::parse("table:@" + path);
  EXPECT_EQ(table(2), q(1, 4));
  EXPECT_EQ(table(5), q(1, 3));
  EXPECT_EQ(table(3), 0);
  EXPECT_EQ(table(1000), 0);
}

TEST(Policy, Cutoffs) {
  EXPECT_EQ(ReductionPolicy::log_power(q(1, 2)).dcut(10000), 3u);
  EXPECT_EQ(ReductionPolicy::log_power(q(1, 2)).dcut(100), 2u);
  EXPECT_EQ(ReductionPolicy::log_power(q(1, 2)).dcut(1), 1u);
  EXPECT_EQ(ReductionPolicy::coprime().dcut(360), 1u);
  EXPECT_EQ(ReductionPolicy::full().dcut(360), 360u);
  EXPECT_EQ(ReductionPolicy::fixed_cut(0).dcut(360), 1u);
  EXPECT_EQ(ReductionPolicy::fixed_cut(7).dcut(360), 7u);
  for (const char* text : {"full", "coprime", "log:1/4", "cut:5"})
    EXPECT_EQ(ReductionPolicy::parse(text).to_string(), text);
  EXPECT_THROW(ReductionPolicy::parse("log:0"), std::invalid_argument);
  EXPECT_THROW(ReductionPolicy::parse("half"), std::invalid_argument);
}

TEST(Support, Cardinality) {
  const auto s = support(6, 2);
  EXPECT_EQ(s.cardinality, 4u);
  EXPECT_EQ(s.members(), (std::vector<std::uint64_t>{1, 2, 4, 5}));
  EXPECT_EQ(support(12, 3).cardinality, 8u);
  EXPECT_THROW(support(0, 1), std::domain_error);
  for (std::uint64_t n = 1; n <= 600; ++n) {
    EXPECT_EQ(support(n, 1).cardinality, euler_phi(n));
    for (std::uint64_t cut : {std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{4}, n / 2 + 1, n})
      EXPECT_EQ(support(n, cut).cardinality, oracle::support_size(n, cut)) << n << " " << cut;
  }
}

TEST(ApproxSet, Measures) {
  const auto psi = PsiSpec::parse("const:1/10");
  const auto e3 = build_E(3, psi, ReductionPolicy::full());
  EXPECT_EQ(e3.measure(), q(1, 5));
  EXPECT_EQ(e3, arcs({{q(1, 3) - q(1, 30), q(1, 3) + q(1, 30)},
                      {q(2, 3) - q(1, 30), q(2, 3) + q(1, 30)},
                      {Rational(1) - q(1, 30), Rational(1) + q(1, 30)}}));
  EXPECT_TRUE(build_E(9, PsiSpec::parse("const:0"), ReductionPolicy::full()).empty());
  EXPECT_EQ(measure_E(6, psi, ReductionPolicy::fixed_cut(2)), q(2, 15));
  EXPECT_EQ(build_E(6, psi, ReductionPolicy::fixed_cut(2)).measure(), q(2, 15));
}

TEST(ApproxSet, AgainstOracle) {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<std::uint64_t> pick_n(1, 400);
  const std::vector<std::string> psis = {"const:1/2", "const:1/7", "logpow:c=1,beta=-1", "primes:1/3"};
  const std::vector<ReductionPolicy> policies = {ReductionPolicy::full(), ReductionPolicy::coprime(),
                                                 ReductionPolicy::log_power(q(1, 2)), ReductionPolicy::fixed_cut(3)};
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = pick_n(gen);
    const auto psi = PsiSpec::parse(psis[i % psis.size()]);
    const auto& policy = policies[(i / psis.size()) % policies.size()];
    const std::uint64_t cut = policy.dcut(n);
    const Rational expected = oracle::circle_union_measure(oracle::raw_arcs(n, psi(n), cut));
    EXPECT_EQ(build_E(n, psi, policy).measure(), expected) << n;
    EXPECT_EQ(measure_E(n, psi, policy), expected) << n;
    EXPECT_LE(measure_E(n, psi, policy), 2 * psi(n));
  }
  // coprime and full policies hit the two closed forms
  for (std::uint64_t n = 1; n <= 200; ++n) {
    const auto psi = PsiSpec::parse("const:1/4");
    EXPECT_EQ(measure_E(n, psi, ReductionPolicy::coprime()), 2 * psi(n) * q(static_cast<long>(euler_phi(n)), static_cast<long>(n)));
    EXPECT_EQ(measure_E(n, psi, ReductionPolicy::full()), 2 * psi(n));
  }
}

TEST(ApproxSet, Diagnostics) {
  const auto zero = psi_diagnostics(PsiSpec::parse("const:0"), 50, q(1, 2));
  EXPECT_EQ(zero.sum_psi, 0);
  EXPECT_EQ(zero.sum_psi_phi, 0);
  EXPECT_TRUE(zero.sum_psi_log_weighted.is_zero());
  EXPECT_EQ(psi_diagnostics(PsiSpec::parse("const:1/2"), 4, q(1, 2)).sum_psi, q(3, 2));
  Rational phi_weighted(0);
  for (long n = 2; n <= 10; ++n) phi_weighted += q(1, 2) * q(static_cast<long>(oracle::phi(n)), n);
  EXPECT_EQ(psi_diagnostics(PsiSpec::parse("const:1/2"), 10, q(1, 2)).sum_psi_phi, phi_weighted);
  EXPECT_THROW(psi_diagnostics(PsiSpec::parse("const:1/2"), 1, q(1, 2)), std::domain_error);
}
