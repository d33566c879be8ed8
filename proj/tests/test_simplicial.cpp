// Truncated simplicial objects: identities, Moore complex, décalage, generators and conversion.
#include <gtest/gtest.h>

#include "chainres/chainres.hpp"
#include "oracles.hpp"

using namespace chainres;
using oracle::int_mat;

namespace {

ModCategory z4() { return ModCategory(CoefficientDomain::parse("zm:4")); }
Lie2Fp f3() { return Lie2Fp(PrimeField(3)); }

template <class Cat>
CechNerve<Cat> cover_nerve(const Cat& cat, const ObjectOf<Cat>& x, std::size_t depth) {
  auto cover = cat.projective_cover(x);
  return cech_nerve(cat, cover.epi, depth, cat.find_section(cover.epi, 1'000'000).map);
}

/// Čech nerve of a split epi p: A → B given with its section.
template <class Cat>
CechNerve<Cat> split_nerve(const Cat& cat, const MorphismOf<Cat>& p, const MorphismOf<Cat>& s, std::size_t depth) {
  return cech_nerve(cat, p, depth, s);
}

}  // namespace

TEST(Simplicial, ConstantValidatesAndNormalizesToDegreeZero) {
  auto L = f3();
  auto x = L.free_object(2);
  auto s = constant_simplicial(L, x, 3);
  EXPECT_EQ(validate_simplicial(L, s), "ok");
  auto m = moore(L, s);
  EXPECT_EQ(m.complex.objects[0].size(), 3u);
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_TRUE(L.is_zero(m.complex.objects[n]));
  auto rep = validate_simplicial_resolution(L, s, 1000);
  EXPECT_TRUE(rep.exact && rep.h0_matches);
}

TEST(Simplicial, CorruptedDegeneracyFlagged) {
  auto M = z4();
  auto n = cover_nerve(M, M.object({2}), 2);
  auto s = n.object;
  ASSERT_EQ(validate_simplicial(M, s), "ok");
  s.degeneracies[0][0] = M.zero(s.levels[0], s.levels[1]);
  EXPECT_NE(validate_simplicial(M, s), "ok");
}

TEST(Cech, Lie2FreeOntoV2) {
  auto L = f3();
  auto nerve = cover_nerve(L, L.abelian(2), 3);
  EXPECT_EQ(validate_simplicial(L, nerve.object), "ok");
  auto m = moore(L, nerve.object);
  EXPECT_EQ(m.complex.objects[0].size(), oracle::free_class2_dim(2));
  EXPECT_EQ(m.complex.objects[1].size(), 1u);  // span(z)
  EXPECT_TRUE(L.is_zero(m.complex.objects[2]));
  auto h0 = homology(L, m.complex, 0).object();
  EXPECT_EQ(h0.size(), 2u);
  EXPECT_TRUE(L.is_abelian(h0));
  EXPECT_TRUE(L.is_zero(homology(L, m.complex, 1).object()));
}

TEST(Cech, ModKernelPairOfReduction) {
  auto M = z4();
  auto e = M.make(M.object({4}), M.object({2}), int_mat({{1}}));
  auto nerve = cech_nerve(M, e, 3);
  EXPECT_EQ(validate_simplicial(M, nerve.object), "ok");
  // Level n = {(a_0..a_n) : all congruent mod 2}: 4·2^n elements.
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(oracle::module_order(nerve.object.levels[n].orders), 4 << n) << n;
  auto m = moore(M, nerve.object);
  EXPECT_EQ(M.fingerprint(m.complex.objects[1]).values, std::vector<i64>{2});
  auto rep = validate_simplicial_resolution(M, nerve.object, 1000);
  EXPECT_TRUE(rep.exact && rep.h0_matches);
  EXPECT_FALSE(rep.promoted.has_value());
}

TEST(Decalage, ConstantHasZeroLambda) {
  auto M = z4();
  auto d = decalage(M, constant_simplicial(M, M.object({4, 2}), 3));
  for (const auto& x : d.lambda.levels) EXPECT_TRUE(M.is_zero(x));
}

TEST(Decalage, NormalizationMatchesIteratedBase) {
  auto L = f3();
  auto nerve = cover_nerve(L, L.abelian(2), 3);
  auto d = decalage(L, nerve.object);
  auto m = moore(L, nerve.object);
  EXPECT_EQ(L.fingerprint(m.complex.objects[1]), L.fingerprint(d.lambda.levels[0]));
  for (bool b : decalage_identity(L, nerve.object, 3)) EXPECT_TRUE(b);
  auto M = z4();
  for (bool b : decalage_identity(M, cover_nerve(M, M.object({2}), 3).object, 3)) EXPECT_TRUE(b);
}

TEST(Conversion, DegenerateHomotopyOnIdentity) {
  auto M = z4();
  Workspace<ModCategory> ws(M);
  auto s = cover_nerve(M, M.object({2}), 3).object;
  SimplicialMap<ModCategory> id;
  for (const auto& x : s.levels) id.push_back(M.identity(x));
  SimplicialHomotopy<ModCategory> h(s.top());
  for (std::size_t n = 0; n < s.top(); ++n)
    for (std::size_t j = 0; j <= n; ++j) h[n].push_back(s.degeneracies[n][j]);
  ASSERT_EQ(validate_simplicial_homotopy(M, s, s, id, id, h), "ok");
  auto H = simplicial_to_chain_homotopy(ws, s, s, id, id, h, 2);
  EXPECT_TRUE(all_pass(verify_homotopy(ws, H)));
}

TEST(Conversion, ContractionOfSplitNerveInMod) {
  auto M = z4();
  Workspace<ModCategory> ws(M);
  auto a = M.object({4, 2}), b = M.object({4});
  auto p = M.make(a, b, int_mat({{1, 0}}));
  auto s = M.make(b, a, int_mat({{1}, {0}}));
  auto nerve = split_nerve(M, p, s, 3);
  ASSERT_TRUE(nerve.contraction.has_value());
  ASSERT_EQ(validate_simplicial_homotopy(M, nerve.object, nerve.object, nerve.constant, nerve.identity, *nerve.contraction), "ok");
  auto H = simplicial_to_chain_homotopy(ws, nerve.object, nerve.object, nerve.constant, nerve.identity, *nerve.contraction, 2);
  EXPECT_TRUE(all_pass(verify_homotopy(ws, H)));
  for (const auto& ag : homology_agreement(ws, H)) EXPECT_TRUE(ag.maps_equal);
}

TEST(Conversion, ContractionOfSplitNerveInLie2) {
  auto L = f3();
  Workspace<Lie2Fp> ws(L);
  auto f2 = L.free_object(2), a1 = L.abelian(1);
  auto p = L.from_generators(f2, a1, {oracle::fp_vec({1}), oracle::fp_vec({0})});
  auto s = *L.extend(a1, f2, {oracle::fp_vec({1, 0, 0})});
  auto nerve = split_nerve(L, p, s, 3);
  ASSERT_TRUE(nerve.contraction.has_value());
  EXPECT_EQ(validate_simplicial(L, nerve.object), "ok");
  auto H = simplicial_to_chain_homotopy(ws, nerve.object, nerve.object, nerve.constant, nerve.identity, *nerve.contraction, 2);
  auto checks = verify_homotopy(ws, H);
  EXPECT_EQ(checks.size(), 3u);
  EXPECT_TRUE(all_pass(checks));
  for (const auto& ag : homology_agreement(ws, H)) EXPECT_TRUE(ag.maps_equal && ag.key_identity);
}

TEST(Conversion, ShortTruncationRejected) {
  auto M = z4();
  Workspace<ModCategory> ws(M);
  auto nerve = cover_nerve(M, M.object({2}), 2);
  EXPECT_THROW(simplicial_to_chain_homotopy(ws, nerve.object, nerve.object, nerve.constant, nerve.identity, *nerve.contraction, 3),
               InsufficientTruncation);
}

TEST(Generators, GammaOfPeriodicComplex) {
  auto M = z4();
  auto r = build_resolution(M, M.object({2}), 3);
  auto g = dk_gamma(M, r.complex, 3, r.augmentation);
  EXPECT_EQ(validate_simplicial(M, g), "ok");
  // |Γ_n| = Σ_k C(n, k) |C_k|-many summands; each C_k = Z/4.
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(g.levels[n].size(), std::size_t{1} << n) << n;
  auto m = moore(M, g);
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(M.fingerprint(m.complex.objects[n]), M.fingerprint(r.complex.objects[n])) << n;
  EXPECT_TRUE(validate_simplicial_resolution(M, g, 1000).promoted.has_value());
}

TEST(Generators, ComonadicDepthOne) {
  auto M = z4();
  auto x = M.object({2});
  auto s = comonadic(M, x, 1);
  EXPECT_EQ(validate_simplicial(M, s), "ok");
  const auto elems = oracle::module_order(x.orders);                // |X| = 2
  const auto level1 = oracle::module_order(std::vector<i64>(static_cast<std::size_t>(elems), 4));  // |G X| = 4^2
  EXPECT_EQ(s.levels[0].size(), static_cast<std::size_t>(elems));
  EXPECT_EQ(s.levels[1].size(), static_cast<std::size_t>(level1));
  EXPECT_TRUE(M.is_free_presentation(s.levels[0]) && M.is_free_presentation(s.levels[1]));
  auto rep = validate_simplicial_resolution(M, s, 1000);
  EXPECT_TRUE(rep.exact && rep.h0_matches);
  EXPECT_TRUE(rep.promoted.has_value());
}

TEST(Generators, ComonadicBeyondDepthOneRefused) {
  auto M = z4();
  EXPECT_ANY_THROW(comonadic(M, M.object({2}), 2));
}

TEST(Generators, ConstantResolutionOfNonzeroObject) {
  auto M = z4();
  auto s = constant_simplicial(M, M.object({2}), 2);
  auto rep = validate_simplicial_resolution(M, s, 1000);
  EXPECT_TRUE(rep.exact && rep.h0_matches);
}

TEST(SimplicialMaps, MooreMapOfIdentity) {
  auto L = f3();
  auto nerve = cover_nerve(L, L.abelian(2), 2);
  auto m = moore(L, nerve.object);
  EXPECT_EQ(validate_simplicial_map(L, nerve.object, nerve.object, nerve.identity), "ok");
  auto f = moore_map(L, m, m, nerve.identity);
  for (std::size_t n = 0; n < f.components.size(); ++n) EXPECT_TRUE(L.equal(f.components[n], L.identity(m.complex.objects[n])));
}
