// Functor properties, derived values, long exact sequences, syzygy shift and condition (P).
#include <gtest/gtest.h>

#include "chainres/chainres.hpp"
#include "oracles.hpp"

using namespace chainres;
using oracle::int_mat;

namespace {

ModCategory z4() { return ModCategory(CoefficientDomain::parse("zm:4")); }
ModCategory zz() { return ModCategory(CoefficientDomain::parse("z")); }
Lie2Fp f3() { return Lie2Fp(PrimeField(3)); }

Fingerprint inv(std::vector<i64> v) { return Fingerprint{"invariant-factors", std::move(v)}; }

ShortExactSequence<ModCategory> tor_sequence(const ModCategory& M) {
  return {M.make(M.object({2}), M.object({4}), int_mat({{2}})), M.make(M.object({4}), M.object({2}), int_mat({{1}})), std::nullopt};
}

std::vector<i64> values_of(const Fingerprint& f) { return f.values; }

}  // namespace

TEST(Properties, IdentityFunctorHasEverything) {
  auto M = z4();
  auto rep = functor_property_report(identity_functor(M), 30, 1);
  for (const auto& p : property::all()) EXPECT_TRUE(rep.verified(p)) << p << ": " << rep.verdicts[p].witness;
  auto L = f3();
  auto lrep = functor_property_report(identity_functor(L), 10, 1);
  for (const auto& p : property::all()) EXPECT_TRUE(lrep.verified(p)) << p << ": " << lrep.verdicts[p].witness;
}

TEST(Properties, TensorIsAdditive) {
  auto M = z4();
  auto rep = functor_property_report(tensor_functor(M, 2), 40, 3);
  for (const char* p : {property::functorial, property::zero_preserving, property::preserves_coproducts, property::protoadditive,
                        property::subtractive, property::sequentially_right_exact})
    EXPECT_TRUE(rep.verified(p)) << p << ": " << rep.verdicts[p].witness;
  EXPECT_GT(rep.verdicts[property::functorial].cases, 0u);
}

TEST(Properties, AbelianizationIsNotProtoadditive) {
  auto L = f3();
  auto rep = functor_property_report(abelianization_functor(L), 10, 1);
  EXPECT_EQ(rep.verdicts[property::protoadditive].status, PropertyStatus::counterexample);
  EXPECT_FALSE(rep.verdicts[property::protoadditive].witness.empty());
  EXPECT_TRUE(rep.verified(property::functorial));
  EXPECT_TRUE(rep.verified(property::preserves_coproducts));
}

TEST(Properties, AbelianInclusionMissesCoproducts) {
  auto M = ModCategory(CoefficientDomain::parse("fp:3"));
  auto L = f3();
  auto rep = functor_property_report(abelian_inclusion_functor(M, L), 20, 2);
  EXPECT_EQ(rep.verdicts[property::preserves_coproducts].status, PropertyStatus::counterexample);
  // V_a + V_b in class 2 has a + b + ab dims; V_a ⊕ V_b has a + b.
  auto v2 = M.object({3, 3});
  auto sum = L.coproduct(L.abelian(2), L.abelian(2)).object;
  EXPECT_EQ(L.size(sum), oracle::class2_coproduct_dim(2, 2));
  EXPECT_EQ(L.size(abelian_inclusion_functor(M, L)(M.coproduct(v2, v2).object)), 4u);
}

TEST(Derive, ProjectiveObjectHasNoHigherValues) {
  auto M = z4();
  auto F = tensor_functor(M, 2);
  auto x = M.object({4, 4});
  auto r = derive(F, x, 4, 5);
  EXPECT_EQ(r.values[0], M.fingerprint(F(x)));
  for (std::size_t n = 1; n < 4; ++n) EXPECT_TRUE(M.is_zero(r.value(n))) << n;
}

TEST(Derive, TorMatchesPeriodicOracle) {
  auto M = z4();
  auto F = tensor_functor(M, 2);
  auto props = functor_property_report(F, 20, 1);
  for (std::uint64_t seed : {0u, 1u, 9u}) {
    auto r = derive(F, M.object({2}), 5, seed, &props);
    EXPECT_FALSE(r.exploratory);
    auto expected = oracle::periodic_tor(5);
    for (std::size_t n = 0; n < 5; ++n) EXPECT_EQ(values_of(r.values[n]), expected[n]) << "seed " << seed << " n " << n;
  }
}

TEST(Derive, UnverifiedFunctorIsExploratory) {
  auto M = z4();
  EXPECT_TRUE(derive(tensor_functor(M, 2), M.object({2}), 2, 0).exploratory);
  EXPECT_THROW(derive(tensor_functor(M, 2), M.object({2}), 0, 0), DegreeOutOfRange);
}

TEST(Derive, OverIntegersVanishesFromDegreeTwo) {
  auto Z = zz();
  auto F = tensor_functor(Z, 6);
  auto r = derive(F, Z.object({4, 0}), 4, 2);
  EXPECT_EQ(values_of(r.values[0]), (std::vector<i64>{2, 6}));  // Z/4⊗Z/6 ⊕ Z/6
  EXPECT_EQ(values_of(r.values[1]), (std::vector<i64>{2}));     // Tor(Z/4, Z/6)
  EXPECT_TRUE(r.values[2].values.empty());
  EXPECT_TRUE(r.values[3].values.empty());
}

TEST(Derive, Lie2IdentityOnAbelian) {
  auto L = f3();
  auto r = derive(identity_functor(L), L.abelian(2), 3, 4);
  EXPECT_EQ(r.values[0], L.fingerprint(L.abelian(2)));
  EXPECT_TRUE(L.is_zero(r.value(1)));
  EXPECT_TRUE(L.is_zero(r.value(2)));
}

TEST(Derive, InducedMapOfIdentityIsIdentity) {
  auto M = z4();
  auto F = tensor_functor(M, 2);
  auto x = M.object({2});
  auto a = derive(F, x, 3, 1), b = derive(F, x, 3, 8);
  for (std::size_t n = 0; n < 3; ++n) {
    auto m = derived_on_morphism(F, M.identity(x), a, b, n);
    EXPECT_TRUE(M.is_mono(m) && M.is_regular_epi(m)) << n;
  }
}

TEST(Independence, CertifiedForTensor) {
  auto M = z4();
  auto rep = resolution_independence(tensor_functor(M, 2), M.object({2, 4}), 3, {1, 2, 3});
  EXPECT_EQ(rep.verdict, "certified");
  EXPECT_THROW(resolution_independence(tensor_functor(M, 2), M.object({2}), 3, {1}), ShapeMismatch);
}

TEST(Independence, Lie2FingerprintsOnly) {
  auto L = f3();
  auto rep = resolution_independence(identity_functor(L), L.abelian(2), 2, {1, 2});
  EXPECT_EQ(rep.verdict, "fingerprint-equal (uncertified)");
  EXPECT_EQ(rep.values[0], rep.values[1]);
}

TEST(Les, TorSequenceMatchesHandComputation) {
  auto M = z4();
  auto F = tensor_functor(M, 2);
  auto props = functor_property_report(F, 20, 1);
  auto rep = long_exact_sequence(F, tor_sequence(M), 4, props, 0);
  EXPECT_TRUE(rep.composites_zero);
  EXPECT_TRUE(rep.all_exact);
  EXPECT_TRUE(rep.tail_surjective);
  EXPECT_TRUE(rep.zero_term_matches_functor);
  auto expected = oracle::tor_les_nodes(4);
  std::size_t k = 0;
  for (const auto& nd : rep.nodes) {
    if (nd.degree > 4) continue;
    ASSERT_LT(k, expected.size());
    EXPECT_EQ(nd.fingerprint.values, expected[k]) << nd.label;
    ++k;
  }
  EXPECT_EQ(k, expected.size());
  // δ_n: Tor_n(Z/2) → Tor_{n-1}(Z/2) is an iso for n ≥ 1 since the middle terms vanish above 0
  for (const auto& d : rep.connecting) EXPECT_TRUE(M.is_mono(d) && M.is_regular_epi(d));
}

TEST(Les, SplitSequenceHasZeroConnectingMaps) {
  auto M = z4();
  auto F = tensor_functor(M, 2);
  auto props = functor_property_report(F, 20, 1);
  auto x = M.object({2}), y = M.object({2, 4});
  auto p = M.product(x, y);
  ShortExactSequence<ModCategory> ses{M.kernel(p.pi2).inclusion, p.pi2, M.pair(p, M.zero(y, x), M.identity(y))};
  auto rep = long_exact_sequence(F, ses, 3, props, 2);
  EXPECT_TRUE(rep.all_exact && rep.composites_zero);
  for (const auto& d : rep.connecting) EXPECT_TRUE(M.is_zero(d));
}

TEST(Les, RefusesUnverifiedFunctor) {
  auto M = z4();
  FunctorPropertyReport empty;
  EXPECT_THROW(long_exact_sequence(tensor_functor(M, 2), tor_sequence(M), 2, empty, 0), HypothesisUnverified);
}

TEST(Syzygy, ShiftHoldsOverZ4) {
  auto M = z4();
  auto F = tensor_functor(M, 2);
  for (auto x : {M.object({2}), M.object({2, 4}), M.object({2, 2})}) {
    auto checks = syzygy_shift_check(F, x, 4, 3);
    ASSERT_EQ(checks.size(), 2u);
    for (const auto& c : checks) EXPECT_TRUE(c.equal) << c.degree;
  }
  EXPECT_TRUE(syzygy_shift_check(F, M.object({2}), 2).empty());
}

TEST(ConditionP, ModHoldsOnSamples) {
  auto rep = condition_p_probe(z4(), 60, 11, 1'000'000);
  EXPECT_EQ(rep.verdict, "holds-on-samples");
  EXPECT_EQ(rep.projective, 60u);
  EXPECT_FALSE(rep.counterexample.has_value());
}

TEST(ConditionP, Lie2CounterexampleReplays) {
  auto L = f3();
  auto rep = condition_p_probe(L, 30, 7, 1'000'000);
  ASSERT_EQ(rep.verdict, "counterexample");
  ASSERT_TRUE(rep.counterexample.has_value());
  EXPECT_TRUE(replay_counterexample(L, *rep.counterexample, 1'000'000));
  EXPECT_EQ(rep.counterexample->certificate.verdict, SearchVerdict::none);
}

TEST(ConditionP, NoBudgetIsInconclusive) {
  EXPECT_EQ(condition_p_probe(f3(), 5, 1, 0).verdict, "inconclusive");
}

TEST(Compare, GammaAgreesWithChain) {
  auto M = z4();
  auto F = tensor_functor(M, 2);
  auto r = build_resolution(M, M.object({2}), 5);
  auto g = dk_gamma(M, r.complex, 5, r.augmentation);
  auto rows = simplicial_vs_chain_compare(F, g, r, 3);
  ASSERT_EQ(rows.size(), 4u);
  auto tor = oracle::periodic_tor(4);
  for (const auto& row : rows) {
    EXPECT_TRUE(row.agree) << row.degree;
    EXPECT_EQ(row.chain.values, tor[row.degree]);
  }
}

TEST(Compare, ComonadicAgreesAtDegreeZero) {
  auto M = z4();
  auto F = tensor_functor(M, 2);
  auto x = M.object({2});
  auto s = comonadic(M, x, 1);
  auto rows = simplicial_vs_chain_compare(F, s, build_resolution(M, x, 2), 0);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].agree);
  EXPECT_EQ(rows[0].chain, inv({2}));
  EXPECT_THROW(simplicial_vs_chain_compare(F, s, build_resolution(M, x, 2), 1), InsufficientTruncation);
}

TEST(IsoVerdict, Grades) {
  auto M = z4();
  EXPECT_EQ(iso_verdict(M, M.object({2, 4}), M.object({4, 2}), 100000), "iso-certified");
  EXPECT_EQ(iso_verdict(M, M.object({2}), M.object({4}), 100000), "mismatch");
}
