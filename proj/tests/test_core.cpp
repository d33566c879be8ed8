// Category core, backends and the approximate-difference calculus.
#include <gtest/gtest.h>

#include "chainres/chainres.hpp"
#include "oracles.hpp"

using namespace chainres;
using oracle::int_mat;
using oracle::fp_mat;

namespace {

ModCategory z4() { return ModCategory(CoefficientDomain::parse("zm:4")); }
ModCategory zz() { return ModCategory(CoefficientDomain::integers()); }
Lie2Fp f3() { return Lie2Fp(PrimeField(3)); }

// Heisenberg basis x, y, z with [x, y] = z.
Lie2Fp::Object heisenberg(const Lie2Fp& L) { return L.from_triples(3, {{0, 1, 2, 1}}); }

}  // namespace

// ---------------------------------------------------------------- kernels

TEST(Kernel, CoordinateProjectionKeepsSecondLine) {
  auto L = f3();
  auto v2 = L.abelian(2), a1 = L.abelian(1);
  auto k = L.kernel(L.make(v2, a1, fp_mat({{1, 0}})));
  ASSERT_EQ(k.object.size(), 1u);
  EXPECT_EQ(k.inclusion.matrix(0, 0), 0);
  EXPECT_NE(k.inclusion.matrix(1, 0), 0);
}

TEST(Kernel, OfIdentityIsZero) {
  auto M = z4();
  auto x = M.object({4, 2});
  EXPECT_TRUE(M.is_zero(M.kernel(M.identity(x)).object));
  auto L = f3();
  EXPECT_TRUE(L.is_zero(L.kernel(L.identity(heisenberg(L))).object));
}

TEST(Kernel, CodiagonalOnA1PlusA1) {
  auto L = f3();
  auto a1 = L.abelian(1);
  auto s = L.coproduct(a1, a1);
  ASSERT_EQ(s.object.size(), 3u);
  auto nabla = L.couniv(s, L.identity(a1), L.identity(a1));
  auto k = L.kernel(nabla);
  EXPECT_EQ(k.object.size(), 2u);
  // e1 − e2 and the bracket both lie in the kernel: ∇ has matrix (1 1 0) in that basis.
  auto e1_minus_e2 = L.make(a1, s.object, linalg::sub(L.field(), s.iota1.matrix, s.iota2.matrix));
  EXPECT_TRUE(L.is_zero(L.compose(nabla, e1_minus_e2)));
  EXPECT_TRUE(L.factor_through_mono(e1_minus_e2, k.inclusion).has_value());
  EXPECT_EQ(L.commutator_dim(s.object), 1u);
  EXPECT_TRUE(L.factor_through_mono(L.commutator(s.object).inclusion, k.inclusion).has_value());
}

// -------------------------------------------------------------- cokernels

TEST(Cokernel, OfZeroIsIdentity) {
  auto M = z4();
  auto x = M.object({2}), y = M.object({4, 2});
  auto q = M.cokernel(M.zero(x, y));
  EXPECT_EQ(q.cod, y);
  EXPECT_TRUE(M.equal(q, M.identity(y)));
}

TEST(Cokernel, TimesTwoOnZ4) {
  auto M = z4();
  auto z = M.object({4});
  auto q = M.cokernel(M.make(z, z, int_mat({{2}})));
  EXPECT_EQ(q.cod.orders, std::vector<i64>{2});
  EXPECT_TRUE(M.is_regular_epi(q));
}

TEST(Cokernel, HeisenbergModCentreIsV2) {
  auto L = f3();
  auto h = heisenberg(L);
  auto q = L.cokernel(L.commutator(h).inclusion);
  EXPECT_EQ(q.cod.size(), 2u);
  EXPECT_TRUE(L.is_abelian(q.cod));
}

// ------------------------------------------------------------------ images

TEST(Image, MonoAndEpiFactorTrivially) {
  auto M = z4();
  auto z2 = M.object({2}), z4o = M.object({4});
  auto mono = M.make(z2, z4o, int_mat({{2}}));
  auto im = M.image(mono);
  EXPECT_TRUE(M.is_mono(im.epi) && M.is_regular_epi(im.epi));
  auto epi = M.make(z4o, z2, int_mat({{1}}));
  auto im2 = M.image(epi);
  EXPECT_TRUE(M.is_mono(im2.mono.inclusion) && M.is_regular_epi(im2.mono.inclusion));
}

TEST(Image, GeneratorOntoBracketIsCentralIdeal) {
  auto L = f3();
  auto f1 = L.free_object(1), f2 = L.free_object(2);
  auto f = L.from_generators(f1, f2, {oracle::fp_vec({0, 0, 1})});
  auto im = L.image(f);
  EXPECT_EQ(im.mono.object.size(), 1u);
  EXPECT_EQ(im.mono.normality, Normality::normal);
}

// ------------------------------------------------------ coproducts/products

TEST(Coproduct, ZeroSummand) {
  auto M = z4();
  auto y = M.object({4, 2});
  auto s = M.coproduct(M.zero_object(), y);
  EXPECT_EQ(M.fingerprint(s.object), M.fingerprint(y));
  auto g = M.identity(y);
  EXPECT_TRUE(M.equal(M.compose(M.couniv(s, M.zero(M.zero_object(), y), g), s.iota2), g));
}

TEST(Coproduct, ModIsBiproduct) {
  auto M = z4();
  auto s = M.coproduct(M.object({2}), M.object({2}));
  EXPECT_EQ(s.object.orders, (std::vector<i64>{2, 2}));
}

TEST(Coproduct, Lie2AbelianSumDimension) {
  auto L = f3();
  for (std::size_t a = 1; a <= 3; ++a)
    for (std::size_t b = 1; b <= 3; ++b) {
      auto s = L.coproduct(L.abelian(a), L.abelian(b));
      EXPECT_EQ(s.object.size(), oracle::class2_coproduct_dim(a, b)) << a << "+" << b;
    }
  EXPECT_EQ(L.coproduct(L.abelian(2), L.abelian(2)).object.size(), 8u);
}

TEST(Product, Basics) {
  auto M = z4();
  auto x = M.object({4, 2});
  EXPECT_EQ(M.product(x, M.zero_object()).object.size(), x.size());
  auto L = f3();
  auto p = L.product(L.abelian(1), L.abelian(1));
  EXPECT_EQ(p.object.size(), 2u);
  EXPECT_TRUE(L.is_abelian(p.object));
  auto h = heisenberg(L);
  Rng rng(3);
  auto f = L.sample_morphism(rng, L.abelian(2), h);
  auto hp = L.product(h, h);
  EXPECT_TRUE(L.equal(L.compose(hp.pi1, L.pair(hp, f, f)), f));
}

TEST(Pullback, AlongIdentity) {
  auto M = z4();
  auto f = M.make(M.object({4}), M.object({2}), int_mat({{1}}));
  auto pb = pullback(M, f, M.identity(f.cod));
  EXPECT_EQ(M.fingerprint(pb.object), M.fingerprint(f.dom));
}

TEST(Pullback, TwoReductionsHaveOrderEight) {
  auto M = z4();
  auto f = M.make(M.object({4}), M.object({2}), int_mat({{1}}));
  auto pb = pullback(M, f, f);
  EXPECT_EQ(oracle::module_order(pb.object.orders), oracle::count_pairs_equal_mod(4, 2));
  EXPECT_EQ(oracle::module_order(pb.object.orders), 8);
}

TEST(Pullback, SplitEpisKeepSections) {
  auto M = z4();
  auto x = M.object({4}), y = M.object({2});
  auto p = M.product(x, y);
  auto s = M.pair(p, M.identity(x), M.zero(x, y));
  auto pb = pullback(M, p.pi1, p.pi1);
  auto induced = pullback_pair(M, pb, s, s);
  EXPECT_TRUE(M.equal(M.compose(M.compose(p.pi1, pb.first), induced), M.identity(x)));
}

// ---------------------------------------------------------- classification

TEST(Classify, Identity) {
  auto L = f3();
  auto c = classify(L, L.identity(heisenberg(L)), 1000);
  EXPECT_TRUE(c.mono && c.regular_epi && c.proper);
  EXPECT_EQ(c.split_epi, SearchVerdict::found);
}

TEST(Classify, SigmaIsRegularEpi) {
  auto L = f3();
  Workspace<Lie2Fp> ws(L);
  for (auto x : {L.abelian(1), L.abelian(2), heisenberg(L)}) EXPECT_TRUE(classify(L, ws.sigma(x), 1000).regular_epi);
}

TEST(Classify, HeisenbergOntoV2DoesNotSplit) {
  auto L = f3();
  auto q = L.cokernel(L.commutator(heisenberg(L)).inclusion);
  auto c = classify(L, q, 1'000'000);
  EXPECT_TRUE(c.regular_epi);
  EXPECT_EQ(c.split_epi, SearchVerdict::none);
}

// ------------------------------------------------------------------- lifts

TEST(Lift, ThroughIdentity) {
  auto M = z4();
  auto p = M.object({4, 4});
  Rng rng(5);
  auto f = M.sample_morphism(rng, p, M.object({4, 2}));
  auto g = lift_through(M, f, M.identity(f.cod), ModCategory::FreenessWitness::free(2), 100);
  EXPECT_TRUE(M.equal(g, f));
}

TEST(Lift, OneGeneratorHitsPreimage) {
  auto M = z4();
  auto p = M.object({4});
  auto e = M.make(M.object({4, 4}), M.object({4}), int_mat({{1, 2}}));
  auto f = M.make(p, M.object({4}), int_mat({{3}}));
  auto g = lift_through(M, f, e, ModCategory::FreenessWitness::free(1), 100);
  EXPECT_TRUE(M.equal(M.compose(e, g), f));
}

TEST(Lift, DifferenceObjectOfA1IsNotProjective) {
  auto L = f3();
  Workspace<Lie2Fp> ws(L);
  auto d = ws.D(L.abelian(1));
  EXPECT_EQ(d.size(), 2u);
  auto w = projective_witness(L, d, 1'000'000);
  ASSERT_EQ(w.kind, Lie2Fp::FreenessWitness::Kind::none);
  auto cover = L.projective_cover(d);
  EXPECT_THROW(lift_through(L, L.identity(d), cover.epi, w, 1'000'000), LiftNotFound);
}

// ---------------------------------------------------------- free objects/covers

TEST(FreeObject, Sizes) {
  auto M = z4();
  auto L = f3();
  EXPECT_TRUE(L.is_zero(L.free_object(0)));
  EXPECT_TRUE(M.is_zero(M.free_object(0)));
  EXPECT_EQ(L.free_object(2).size(), 3u);
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(L.free_object(n).size(), oracle::free_class2_dim(n));
  EXPECT_EQ(M.free_object(3).orders, (std::vector<i64>{4, 4, 4}));
}

TEST(Cover, FreeIsIso) {
  auto L = f3();
  auto c = L.projective_cover(L.free_object(2));
  EXPECT_TRUE(L.is_mono(c.epi) && L.is_regular_epi(c.epi));
}

TEST(Cover, V2AndZ2) {
  auto L = f3();
  auto c = L.projective_cover(L.abelian(2));
  EXPECT_EQ(c.object.size(), 3u);
  EXPECT_TRUE(L.is_zero(L.compose(c.epi, L.commutator(c.object).inclusion)));
  auto M = z4();
  auto m = M.projective_cover(M.object({2}));
  EXPECT_EQ(m.object.orders, std::vector<i64>{4});
  EXPECT_EQ(M.fingerprint(M.kernel(m.epi).object).values, std::vector<i64>{2});
}

TEST(Section, IsoGivesInverse) {
  auto M = z4();
  auto x = M.object({4});
  auto e = M.make(x, x, int_mat({{3}}));
  auto s = M.find_section(e, 100);
  ASSERT_EQ(s.verdict, SearchVerdict::found);
  EXPECT_TRUE(M.equal(M.compose(e, *s.map), M.identity(x)));
  EXPECT_TRUE(M.equal(M.compose(*s.map, e), M.identity(x)));
}

TEST(Section, Z4OntoZ2HasNone) {
  EXPECT_EQ(oracle::z4_to_z2_sections(), 0);
  auto M = z4();
  auto e = M.make(M.object({4}), M.object({2}), int_mat({{1}}));
  EXPECT_EQ(M.find_section(e, 100).verdict, SearchVerdict::none);
}

TEST(Section, FreeOntoV2HasNone) {
  auto L = f3();
  auto c = L.projective_cover(L.abelian(2));
  auto s = L.find_section(c.epi, 1'000'000);
  EXPECT_EQ(s.verdict, SearchVerdict::none);
  EXPECT_EQ(s.explored, s.space);
}

// ----------------------------------------------------------------- backends

TEST(Backend, HeisenbergValidates) {
  auto L = f3();
  EXPECT_EQ(L.validate_triples(3, {{0, 1, 2, 1}}), "ok");
  EXPECT_EQ(L.validate(heisenberg(L)), "ok");
}

TEST(Backend, ClassTwoViolationReported) {
  auto L = f3();
  // [x, y] = z and [x, z] = y gives [x, [x, y]] = y ≠ 0.
  EXPECT_EQ(L.validate_triples(3, {{0, 1, 2, 1}, {0, 2, 1, 1}}), "class-2 law violated");
  EXPECT_THROW(L.from_triples(3, {{0, 1, 2, 1}, {0, 2, 1, 1}}), InvalidPresentation);
}

TEST(Backend, RelationsAreNormalized) {
  auto Z = zz();
  // Z² / ⟨(2, 4)⟩ ≅ Z/2 ⊕ Z.
  auto x = Z.from_relations(2, int_mat({{2}, {4}})).first;
  EXPECT_EQ(Z.validate(x), "ok");
  auto inv = oracle::invariant_factors_2x1(2, 4);
  auto fp = Z.fingerprint(x).values;
  std::sort(fp.begin(), fp.end());
  std::sort(inv.begin(), inv.end());
  EXPECT_EQ(fp, inv);
}

TEST(Backend, SamplingIsDeterministic) {
  auto M = z4();
  Rng a(0), b(0);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(M.sample_object(a, 2), M.sample_object(b, 2));
  Rng c(9);
  EXPECT_TRUE(M.is_zero(M.sample_object(c, 0)));
  auto L = f3();
  Rng d(11);
  for (int i = 0; i < 30; ++i) EXPECT_EQ(L.validate(L.sample_object(d, 4)), "ok");
  EXPECT_TRUE(L.is_zero(L.sample_object(d, 0)));
}

TEST(Backend, Abelianization) {
  auto L = f3();
  auto v = L.abelian(3);
  auto q = L.abelianization(v);
  EXPECT_TRUE(L.equal(q, L.identity(v)) || (L.is_mono(q) && L.is_regular_epi(q)));
  EXPECT_EQ(L.ab_dim(heisenberg(L)), 2u);
  EXPECT_EQ(L.commutator_dim(heisenberg(L)), 1u);
  auto f3o = L.free_object(3);
  EXPECT_EQ(L.ab_dim(f3o), 3u);
  EXPECT_EQ(L.commutator_dim(f3o), 3u);
}

TEST(Backend, Fingerprints) {
  auto M = z4();
  auto fp = M.fingerprint(M.object({4, 2})).values;
  std::sort(fp.begin(), fp.end(), std::greater<>());
  EXPECT_EQ(fp, (std::vector<i64>{4, 2}));
  EXPECT_TRUE(M.fingerprint(M.zero_object()).values.empty());
  auto L = f3();
  auto h = L.fingerprint(heisenberg(L)).values;
  ASSERT_GE(h.size(), 3u);
  EXPECT_EQ(std::vector<i64>(h.begin(), h.begin() + 3), (std::vector<i64>{3, 1, 1}));
  EXPECT_TRUE(L.fingerprint(L.zero_object()).values.empty());
}

// ------------------------------------------------------------ D and ς

TEST(Difference, OfZero) {
  auto L = f3();
  Workspace<Lie2Fp> ws(L);
  EXPECT_TRUE(L.is_zero(ws.D(L.zero_object())));
}

TEST(Difference, ModCollapsesToX) {
  auto M = z4();
  Workspace<ModCategory> ws(M);
  auto x = M.object({4, 2});
  EXPECT_EQ(ws.D(x), x);
  EXPECT_TRUE(M.equal(ws.sigma(x), M.identity(x)));
  EXPECT_TRUE(M.equal(ws.twist(x), M.negate(M.identity(x))));
}

TEST(Difference, V2Dimensions) {
  auto L = f3();
  Workspace<Lie2Fp> ws(L);
  auto v2 = L.abelian(2);
  EXPECT_EQ(L.coproduct(v2, v2).object.size(), 8u);
  EXPECT_EQ(ws.D(v2).size(), oracle::class2_coproduct_dim(2, 2) - 2);
  EXPECT_EQ(ws.D(v2).size(), 6u);
}

TEST(Difference, Laws) {
  auto L = f3();
  Workspace<Lie2Fp> ws(L);
  auto v2 = L.abelian(2), a1 = L.abelian(1);
  auto f = L.make(v2, a1, fp_mat({{1, 0}}));
  auto g = L.make(v2, a1, fp_mat({{0, 1}}));
  EXPECT_TRUE(L.is_zero(ws.diff(f, f)));
  EXPECT_FALSE(L.is_zero(ws.diff(f, g)));
  EXPECT_TRUE(L.equal(ws.diff(f, L.zero(v2, a1)), L.compose(f, ws.sigma(v2))));
  EXPECT_TRUE(L.equal(L.compose(ws.diff(f, g), ws.twist(v2)), ws.diff(g, f)));
}

TEST(Difference, FunctorOnMorphisms) {
  auto L = f3();
  Workspace<Lie2Fp> ws(L);
  auto h = heisenberg(L);
  EXPECT_TRUE(L.equal(ws.D(L.identity(h)), L.identity(ws.D(h))));
  EXPECT_TRUE(L.is_zero(ws.D(L.zero(h, L.abelian(2)))));
  auto q = L.cokernel(L.commutator(h).inclusion);
  auto dq = ws.D(q);
  EXPECT_EQ(linalg::rank(L.field(), dq.matrix), dq.cod.size());
}

TEST(Difference, SigmaPowers) {
  auto L = f3();
  Workspace<Lie2Fp> ws(L);
  auto a1 = L.abelian(1);
  EXPECT_TRUE(L.equal(ws.sigma_pow(a1, 0), L.identity(a1)));
  EXPECT_TRUE(L.equal(ws.sigma_pow(a1, 1), ws.sigma(a1)));
  EXPECT_TRUE(L.is_regular_epi(ws.sigma(a1)));
  EXPECT_TRUE(L.equal(ws.sigma_pow(a1, 2), ws.sigma_pow_composite(a1, 2)));
}

TEST(Difference, TwistIsInvolution) {
  auto L = f3();
  Workspace<Lie2Fp> ws(L);
  auto v2 = L.abelian(2);
  auto tw = ws.twist(v2);
  EXPECT_TRUE(L.equal(L.compose(tw, tw), L.identity(ws.D(v2))));
}

TEST(Difference, LawSuitesPassInBothBackends) {
  Workspace<ModCategory> wm(z4());
  EXPECT_TRUE(subtraction_law_suite(wm, 100, 1).all_pass());
  Workspace<ModCategory> wz(zz());
  EXPECT_TRUE(subtraction_law_suite(wz, 100, 2).all_pass());
  Workspace<Lie2Fp> wl(f3());
  auto rep = subtraction_law_suite(wl, 100, 3);
  for (const auto& [name, t] : rep.laws) EXPECT_EQ(t.failed, 0u) << name << " " << t.first_failure;
}

TEST(Difference, SigmaWitnessSearchRecordsOutcome) {
  auto L = f3();
  Workspace<Lie2Fp> ws(L);
  auto rep = search_sigma_witness(ws, {L.abelian(1), L.abelian(2)});
  // A1 already separates the two maps, so the search stops at the first candidate
  EXPECT_TRUE(rep.found);
  EXPECT_EQ(rep.examined, 1u);
  EXPECT_FALSE(rep.description.empty());
  Workspace<ModCategory> wm(z4());
  auto mrep = search_sigma_witness(wm, {wm.cat.object({2}), wm.cat.object({4, 2})});
  EXPECT_FALSE(mrep.found);
  EXPECT_EQ(mrep.examined, 2u);
}
