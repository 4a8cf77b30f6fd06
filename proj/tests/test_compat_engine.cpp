#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace fpure;
using fpure::testing::ideal;
using fpure::testing::poly;

namespace {

Rational frac(long n, long d) { return Rational(BigInt(n), BigInt(d)); }

void expect_closed(const CompatibleLattice& L) {
  for (const auto& a : L.elements)
    for (const auto& b : L.elements) {
      EXPECT_TRUE(L.contains(ideal_sum(a.ideal, b.ideal))) << a.key << " + " << b.key;
      EXPECT_TRUE(L.contains(ideal_intersect(a.ideal, b.ideal))) << a.key << " ∩ " << b.key;
    }
}

void expect_strictly_ascending(const FixedPointTrace& t) {
  ASSERT_TRUE(t.stabilized);
  for (std::size_t i = 1; i < t.iterates.size(); ++i) {
    EXPECT_TRUE(t.iterates[i].contains(t.iterates[i - 1]));
    EXPECT_FALSE(t.iterates[i] == t.iterates[i - 1]);
  }
}

CompatibleLattice node_lattice() {
  FrobeniusContext ctx(fpure::testing::node());
  const RingPtr& S = ctx.ring();
  return enumerate_lattice(ctx, {ideal(S, "x"), ideal(S, "y")}, {});
}

}  // namespace

TEST(Hull, UnitSeed) {
  FrobeniusContext ctx(fpure::testing::node());
  EXPECT_TRUE(compatible_hull(ctx, Ideal::unit(ctx.ring()), 2).ideal.is_unit());
}

TEST(Hull, VariableInRegularRingIsUnit) {
  // root_1(x * x) = (x) but root_1(1 * x) = (1): the regular ring has no
  // proper nonzero compatible ideals, so hull((x)) = (1).
  auto S = make_ring(2, {"x"});
  FrobeniusContext ctx{RingPresentation(S)};
  auto h = compatible_hull(ctx, ideal(S, "x"), 2);
  EXPECT_TRUE(h.ideal.is_unit());
  expect_strictly_ascending(h.trace);
  EXPECT_EQ(frobenius_root(ideal(S, "x^2"), 1), ideal(S, "x"));
}

TEST(Hull, NodeVariableIsAlreadyCompatible) {
  FrobeniusContext ctx(fpure::testing::node());
  auto h = compatible_hull(ctx, ideal(ctx.ring(), "x"), 3);
  EXPECT_EQ(h.ideal, ideal(ctx.ring(), "x"));
  EXPECT_EQ(h.trace.iterates.size(), 1u);
}

TEST(Hull, IdempotentAndExtensive) {
  std::vector<std::pair<RingPresentation, std::vector<std::string>>> suite{
      {fpure::testing::node(), {"x", "y", "x + y", "x^2", "x*y"}},
      {fpure::testing::cubic(2), {"a", "a, b", "c", "a*b"}},
      {fpure::testing::regular(3), {"x", "x*y"}},
  };
  for (const auto& [R, seeds] : suite) {
    FrobeniusContext ctx(R);
    for (const auto& s : seeds) {
      Ideal seed = ideal(R.ring, s);
      auto h = compatible_hull(ctx, seed, 2);
      EXPECT_TRUE(h.ideal.contains(seed)) << s;
      EXPECT_TRUE(h.ideal.contains(R.defining_ideal)) << s;
      EXPECT_EQ(compatible_hull(ctx, h.ideal, 2).ideal, h.ideal) << s;
      EXPECT_TRUE(is_uniformly_compatible(ctx, h.ideal, 2).compatible()) << s;
      expect_strictly_ascending(h.trace);
    }
  }
}

TEST(Hull, CubicTestElementLandsInSingularLocus) {
  FrobeniusContext ctx(fpure::testing::cubic(2));
  const RingPtr& S = ctx.ring();
  auto elems = jacobian_test_elements(ctx.presentation());
  ASSERT_FALSE(elems.empty());
  auto h = compatible_hull(ctx, Ideal(S, {elems.front()}), 2);
  EXPECT_TRUE(ideal(S, "a, b").contains(h.ideal));
}

TEST(TestIdeal, RegularRingIsUnit) {
  FrobeniusContext ctx(fpure::testing::regular(2));
  auto t = test_ideal(ctx, Polynomial::one(ctx.ring()), 2);
  EXPECT_TRUE(t.ideal.is_unit());
}

TEST(TestIdeal, RegularWithMaximalIdealSquared) {
  auto S = fpure::testing::ring2(2);
  Ideal m = ideal(S, "x, y");
  FrobeniusContext ctx(RingPresentation(S), PairSpec({{m, frac(2, 1)}}));
  // root_1 of (x,y)^2 alone is (1) since xy = 1^2 * xy; the seed is scaled by
  // pair elements before the hull, which lands on (x, y).
  EXPECT_TRUE(frobenius_root(ideal_power(m, 2), 1).is_unit());
  auto t = test_ideal(ctx, Polynomial::one(S), 3);
  EXPECT_EQ(t.ideal, m);
  EXPECT_FALSE(t.certified);
}

TEST(TestIdeal, Node) {
  FrobeniusContext ctx(fpure::testing::node());
  const RingPtr& S = ctx.ring();
  auto t = test_ideal(ctx, poly(S, "x + y"), 3);
  EXPECT_EQ(t.ideal, ideal(S, "x, y"));
  EXPECT_TRUE(t.certified);
}

TEST(TestIdeal, CubicDefaultElement) {
  FrobeniusContext ctx(fpure::testing::cubic(2));
  auto t = test_ideal(ctx, 2);
  EXPECT_EQ(t.ideal, ideal(ctx.ring(), "a, b"));
  EXPECT_EQ(t.test_element.to_string(), "a^2 + a*b + a*c + b*c");
}

TEST(TestIdeal, ElementInRadicalIsDomainError) {
  FrobeniusContext ctx(fpure::testing::node());
  EXPECT_THROW(test_ideal(ctx, poly(ctx.ring(), "x^2*y"), 2), DomainError);
  EXPECT_THROW(test_ideal(ctx, Polynomial::zero(ctx.ring()), 2), DomainError);
}

TEST(TestIdeal, MinimalAmongLatticeElementsContainingIt) {
  for (auto R : {fpure::testing::node(), fpure::testing::cubic(2)}) {
    FrobeniusContext ctx(R);
    auto t = test_ideal(ctx, 2);
    auto L = enumerate_lattice(ctx, {}, {.e_max = 2, .test_ideal = t.ideal});
    for (const auto& el : L.elements)
      if (el.ideal.contains(t.test_element)) EXPECT_TRUE(el.ideal.contains(t.ideal)) << el.key;
  }
}

TEST(SplittingPrime, Node) {
  FrobeniusContext ctx(fpure::testing::node());
  const RingPtr& S = ctx.ring();
  auto r = splitting_prime(ctx, ideal(S, "x, y"), 4);
  EXPECT_EQ(r.prime, ideal(S, "x, y"));
  EXPECT_TRUE(r.trace.stabilized);
  EXPECT_LE(r.trace.stabilized_at + 1, 4u);
  EXPECT_EQ(r.certification, Certification::certified);
  EXPECT_TRUE(r.verified_compatible);
  EXPECT_TRUE(r.verified_no_splitting);
}

TEST(SplittingPrime, Cubic) {
  FrobeniusContext ctx(fpure::testing::cubic(2));
  const RingPtr& S = ctx.ring();
  auto r = splitting_prime(ctx, ideal(S, "a, b, c"), 3);
  EXPECT_EQ(r.prime, ideal(S, "a, b, c"));
  EXPECT_TRUE(r.verified_compatible);
}

TEST(SplittingPrime, RegularRingIsZero) {
  FrobeniusContext ctx(fpure::testing::regular(2));
  auto r = splitting_prime(ctx, ctx.presentation().irrelevant_ideal(), 3);
  EXPECT_TRUE(r.prime.is_zero());
  EXPECT_NE(r.certification, Certification::certified);
  EXPECT_FALSE(r.notes.empty());
}

TEST(SplittingPrime, NotFPureIsDegenerate) {
  auto S = fpure::testing::ring2(2);
  FrobeniusContext ctx(RingPresentation(S, ideal(S, "x^2 + y^3")));
  auto r = splitting_prime(ctx, ideal(S, "x, y"), 2);
  EXPECT_EQ(r.certification, Certification::degenerate);
  EXPECT_EQ(r.prime, ideal(S, "x, y"));
}

TEST(SplittingPrime, MaximalAmongProperElements) {
  FrobeniusContext ctx(fpure::testing::node());
  const RingPtr& S = ctx.ring();
  Ideal m = ideal(S, "x, y");
  auto P = splitting_prime(ctx, m, 4).prime;
  auto L = node_lattice();
  for (const auto& el : L.elements)
    if (m.contains(el.ideal)) EXPECT_TRUE(P.contains(el.ideal)) << el.key;
}

TEST(SplittingPrime, AddingALinearFormBreaksCompatibility) {
  FrobeniusContext ctx(fpure::testing::node());
  const RingPtr& S = ctx.ring();
  for (const char* extra : {"x + 1", "y + 1", "x + y + 1"}) {
    Ideal bigger = ideal_sum(ideal(S, "x, y"), ideal(S, extra));
    EXPECT_TRUE(bigger.is_unit()) << extra;
  }
  // Proper ideals strictly between: none containing (x, y) other than itself,
  // so check the ones contained in it that are not compatible.
  EXPECT_FALSE(is_uniformly_compatible(ctx, ideal(S, "x + y, x*y"), 2).compatible());
}

TEST(Lattice, RegularHasTwoElements) {
  FrobeniusContext ctx(fpure::testing::regular(2));
  auto L = enumerate_lattice(ctx, {}, {});
  ASSERT_EQ(L.elements.size(), 2u);
  EXPECT_TRUE(L.contains(Ideal::zero(ctx.ring())));
  EXPECT_TRUE(L.contains(Ideal::unit(ctx.ring())));
  EXPECT_TRUE(L.complete);
}

TEST(Lattice, NodeHasFiveElements) {
  auto L = node_lattice();
  const RingPtr& S = L.elements.front().ideal.ring();
  ASSERT_EQ(L.elements.size(), 5u);
  for (const char* J : {"x*y", "x", "y", "x, y", "1"}) EXPECT_TRUE(L.contains(ideal(S, J))) << J;
  EXPECT_EQ(L.hasse.size(), 5u);
  EXPECT_TRUE(L.complete);
  expect_closed(L);
  for (const auto& el : L.elements) {
    EXPECT_TRUE(el.radical_probe_passed) << el.key;
    ASSERT_TRUE(el.verdict.has_value());
    EXPECT_TRUE(el.verdict->compatible());
  }
}

TEST(Lattice, CubicHasFourElements) {
  FrobeniusContext ctx(fpure::testing::cubic(2));
  const RingPtr& S = ctx.ring();
  auto L = enumerate_lattice(ctx, {ideal(S, "a, b"), ideal(S, "a, b, c")}, {.e_max = 2});
  ASSERT_EQ(L.elements.size(), 4u);
  EXPECT_TRUE(L.contains(ctx.defining_ideal()));
  EXPECT_TRUE(L.contains(ideal(S, "a, b")));
  EXPECT_TRUE(L.contains(ideal(S, "a, b, c")));
  EXPECT_EQ(L.hasse.size(), 3u);
  expect_closed(L);
}

TEST(Lattice, IncompatibleSeedsAreReported) {
  FrobeniusContext ctx(fpure::testing::node());
  const RingPtr& S = ctx.ring();
  auto L = enumerate_lattice(ctx, {ideal(S, "x + y, x*y")}, {});
  ASSERT_EQ(L.rejected_seeds.size(), 1u);
  EXPECT_FALSE(L.rejected_seeds.front().verdict.compatible());
}

TEST(Lattice, BudgetExhaustionIsIncomplete) {
  FrobeniusContext ctx(fpure::testing::node());
  const RingPtr& S = ctx.ring();
  LatticeOptions opts;
  opts.budget.max_elements = 3;
  auto L = enumerate_lattice(ctx, {ideal(S, "x"), ideal(S, "y")}, opts);
  EXPECT_FALSE(L.complete);
  EXPECT_LE(L.elements.size(), 3u);
}

TEST(Lattice, SplittingPrimeAnnotation) {
  FrobeniusContext ctx(fpure::testing::node());
  const RingPtr& S = ctx.ring();
  auto L = enumerate_lattice(ctx, {}, {.splitting_prime = ideal(S, "x, y")});
  auto i = L.index_of(ideal(S, "x, y"));
  ASSERT_TRUE(i.has_value());
  EXPECT_TRUE(L.elements[*i].is_splitting_prime);
}

TEST(UnionCheck, NodeAndCubic) {
  {
    FrobeniusContext ctx(fpure::testing::node());
    auto L = node_lattice();
    auto r = check_union_theorem(ctx, L, ideal(ctx.ring(), "x, y"));
    EXPECT_FALSE(r.skipped);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_FALSE(r.entries.empty());
  }
  {
    FrobeniusContext ctx(fpure::testing::cubic(2));
    const RingPtr& S = ctx.ring();
    auto L = enumerate_lattice(ctx, {ideal(S, "a, b"), ideal(S, "a, b, c")}, {.e_max = 2});
    auto r = check_union_theorem(ctx, L, ideal(S, "a, b, c"));
    EXPECT_EQ(r.violations, 0u);
  }
}

TEST(UnionCheck, SkippedWhenNotFPure) {
  auto S = fpure::testing::ring2(2);
  FrobeniusContext ctx(RingPresentation(S, ideal(S, "x^2 + y^3")));
  CompatibleLattice L;
  L.e_max = 1;
  EXPECT_TRUE(check_union_theorem(ctx, L, ideal(S, "x, y")).skipped);
}

TEST(Subadjunction, MaximalPrimesAreStronglyFRegular) {
  {
    FrobeniusContext ctx(fpure::testing::node());
    auto r = check_subadjunction(ctx, node_lattice());
    EXPECT_EQ(r.violations, 0u);
    ASSERT_EQ(r.entries.size(), 1u);
    EXPECT_TRUE(r.entries.front().strongly_f_regular);
  }
  {
    FrobeniusContext ctx(fpure::testing::cubic(2));
    const RingPtr& S = ctx.ring();
    auto L = enumerate_lattice(ctx, {ideal(S, "a, b"), ideal(S, "a, b, c")}, {.e_max = 2});
    auto r = check_subadjunction(ctx, L);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_FALSE(r.entries.empty());
  }
}

TEST(Primality, Cases) {
  auto S = fpure::testing::ring2(2);
  EXPECT_EQ(primality(Ideal::zero(S)), Primality::prime);
  EXPECT_EQ(primality(Ideal::unit(S)), Primality::not_prime);
  EXPECT_EQ(primality(ideal(S, "x, y")), Primality::prime);
  EXPECT_EQ(primality(ideal(S, "x + y + 1")), Primality::prime);
  EXPECT_EQ(primality(ideal(S, "x*y")), Primality::not_prime);
  EXPECT_EQ(primality(ideal(S, "x^2")), Primality::not_prime);
  EXPECT_EQ(primality(ideal(S, "x^2 + x + 1")), Primality::prime);
  EXPECT_EQ(primality(ideal(S, "x^2 + 1")), Primality::not_prime);  // (x+1)^2 in char 2
  auto T = fpure::testing::ring_abc(2);
  EXPECT_EQ(primality(ideal(T, "a^3 + a*b*c + b^2")), Primality::prime);
}

TEST(RadicalProbe, DetectsNonRadical) {
  auto S = fpure::testing::ring2(3);
  auto bad = radical_probe(ideal(S, "x^2"), 20);
  EXPECT_FALSE(bad.passed);
  ASSERT_TRUE(bad.counterexample.has_value());
  auto good = radical_probe(ideal(S, "x*y"), 100);
  EXPECT_TRUE(good.passed);
  EXPECT_EQ(good.probes, 100u);
}

TEST(Jacobian, TestElementsAvoidMinimalPrimes) {
  auto R = fpure::testing::node();
  auto elems = jacobian_test_elements(R);
  ASSERT_FALSE(elems.empty());
  for (const auto& c : elems) EXPECT_TRUE(avoids_minimal_primes(c, R.defining_ideal)) << c.to_string();
  EXPECT_EQ(monomial_minimal_primes(ideal(R.ring, "x*y")),
            (std::vector<std::vector<std::size_t>>{{0}, {1}}));
  auto P = fpure::testing::cubic(2);
  auto pe = jacobian_test_elements(P);
  ASSERT_FALSE(pe.empty());
  EXPECT_EQ(pe.front().to_string(), "a^2 + a*b + a*c + b*c");
}

TEST(Jacobian, Helpers) {
  auto S = fpure::testing::ring2(3);
  EXPECT_EQ(partial_derivative(poly(S, "x^3 + x^2*y + y"), 0), poly(S, "2*x*y"));
  std::vector<std::vector<Polynomial>> M{{poly(S, "x"), poly(S, "y")}, {poly(S, "1"), poly(S, "x")}};
  EXPECT_EQ(determinant(M, S), poly(S, "x^2 - y"));
  std::size_t n = 0;
  for_each_subset(4, 2, [&](const std::vector<std::size_t>&) { ++n; });
  EXPECT_EQ(n, 6u);
}
