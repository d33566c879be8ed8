#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "chainres/backends/lie2.hpp"
#include "chainres/backends/mod.hpp"
#include "chainres/chains/complex.hpp"
#include "chainres/core/category.hpp"
#include "chainres/support/random.hpp"

namespace chainres {

/// Property names probed on samples.
namespace property {
inline constexpr const char* functorial = "functorial";
inline constexpr const char* zero_preserving = "zero-preserving";
inline constexpr const char* preserves_coproducts = "preserves-coproducts";
inline constexpr const char* protoadditive = "protoadditive";
inline constexpr const char* subtractive = "subtractive";
inline constexpr const char* sequentially_right_exact = "sequentially-right-exact";
inline constexpr const char* preserves_proper = "preserves-proper";
inline constexpr const char* preserves_protosplit_monos = "preserves-protosplit-monos";

inline const std::vector<std::string>& all() {
  static const std::vector<std::string> names{functorial, zero_preserving, preserves_coproducts, protoadditive,
                                              subtractive, sequentially_right_exact, preserves_proper,
                                              preserves_protosplit_monos};
  return names;
}
}  // namespace property

template <class Src, class Dst>
struct FunctorSpec {
  std::string name;
  Src source;
  Dst target;
  std::function<ObjectOf<Dst>(const ObjectOf<Src>&)> on_object;
  std::function<MorphismOf<Dst>(const MorphismOf<Src>&)> on_morphism;
  std::vector<std::string> declared;  // claims; consumers only trust verified flags

  ObjectOf<Dst> operator()(const ObjectOf<Src>& x) const { return on_object(x); }
  MorphismOf<Dst> operator()(const MorphismOf<Src>& f) const { return on_morphism(f); }
};

template <class Src, class Dst>
ChainComplex<Dst> apply_functor(const FunctorSpec<Src, Dst>& F, const ChainComplex<Src>& c) {
  std::vector<ObjectOf<Dst>> objs;
  std::vector<MorphismOf<Dst>> diffs;
  for (const auto& x : c.objects) objs.push_back(F(x));
  for (std::size_t n = 1; n < c.d.size(); ++n) diffs.push_back(F(c.d[n]));
  return make_complex(F.target, std::move(objs), std::move(diffs));
}

template <class Src, class Dst>
ChainMap<Dst> apply_functor(const FunctorSpec<Src, Dst>& F, const ChainMap<Src>& f) {
  ChainMap<Dst> out{apply_functor(F, f.source), apply_functor(F, f.target), {}};
  for (const auto& m : f.components) out.components.push_back(F(m));
  return out;
}

// ------------------------------------------------------------------ builtin functors

template <class Cat>
FunctorSpec<Cat, Cat> identity_functor(const Cat& cat) {
  FunctorSpec<Cat, Cat> F{"identity", cat, cat, [](const ObjectOf<Cat>& x) { return x; },
                          [](const MorphismOf<Cat>& f) { return f; }, property::all()};
  return F;
}

/// - ⊗ Z/k on Mod: orders d ↦ gcd(d, k), matrices reduced.
inline FunctorSpec<ModCategory, ModCategory> tensor_functor(const ModCategory& cat, i64 k) {
  if (k <= 0) throw InvalidPresentation("tensor factor must be positive");
  auto obj = [cat, k](const ModCategory::Object& x) {
    std::vector<i64> o;
    for (auto d : x.orders) o.push_back(gcd(d, k));
    return cat.object(o);
  };
  // generators whose order becomes 1 disappear
  auto kept = [k](const ModCategory::Object& x) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < x.orders.size(); ++i)
      if (gcd(x.orders[i], k) != 1) idx.push_back(i);
    return idx;
  };
  auto mor = [cat, obj, kept](const ModCategory::Morphism& f) {
    auto rows = kept(f.cod), cols = kept(f.dom);
    intlinalg::IntMat m(rows.size(), cols.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = f.matrix(rows[i], cols[j]);
    return cat.make(obj(f.dom), obj(f.cod), m);
  };
  FunctorSpec<ModCategory, ModCategory> F{"tensor:z" + std::to_string(k), cat, cat, obj, mor, {}};
  F.declared = {property::functorial, property::zero_preserving, property::preserves_coproducts, property::protoadditive,
                property::subtractive, property::sequentially_right_exact, property::preserves_proper,
                property::preserves_protosplit_monos};
  return F;
}

/// Abelianization Lie2/F_p → Mod over Z/p.
inline FunctorSpec<Lie2Fp, ModCategory> abelianization_functor(const Lie2Fp& lie) {
  const i64 p = lie.field().p;
  ModCategory mod(CoefficientDomain::parse("zm:" + std::to_string(p)));
  FunctorSpec<Lie2Fp, ModCategory> F{"abelianization", lie, mod, {}, {}, {}};
  F.on_object = [lie, mod, p](const Lie2Fp::Object& x) { return mod.object(std::vector<i64>(lie.ab_dim(x), p)); };
  F.on_morphism = [lie, mod, p](const Lie2Fp::Morphism& f) {
    auto qx = lie.abelianization(f.dom);
    auto qy = lie.abelianization(f.cod);
    auto induced = lie.factor_through_epi(lie.compose(qy, f), qx);
    if (!induced) throw EngineError("abelianization: induced map does not exist");
    intlinalg::IntMat m(induced->matrix.rows(), induced->matrix.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = induced->matrix(i, j);
    return mod.make(mod.object(std::vector<i64>(qx.cod.size(), p)), mod.object(std::vector<i64>(qy.cod.size(), p)), m);
  };
  F.declared = {property::functorial, property::zero_preserving, property::preserves_coproducts,
                property::sequentially_right_exact};
  return F;
}

/// Elementary abelian p-modules as abelian Lie algebras over F_p.
inline FunctorSpec<ModCategory, Lie2Fp> abelian_inclusion_functor(const ModCategory& mod, const Lie2Fp& lie) {
  const i64 p = lie.field().p;
  FunctorSpec<ModCategory, Lie2Fp> F{"abelian-inclusion", mod, lie, {}, {}, {}};
  auto obj = [lie, p](const ModCategory::Object& x) {
    for (auto o : x.orders)
      if (o != p) throw InvalidPresentation("abelian inclusion needs every order equal to " + std::to_string(p));
    return lie.abelian(x.size());
  };
  F.on_object = obj;
  F.on_morphism = [lie, obj](const ModCategory::Morphism& f) {
    auto m = linalg::zeros(lie.field(), f.matrix.rows(), f.matrix.cols());
    for (std::size_t i = 0; i < f.matrix.rows(); ++i)
      for (std::size_t j = 0; j < f.matrix.cols(); ++j) m(i, j) = lie.field().from_int(f.matrix(i, j));
    return lie.make(obj(f.dom), obj(f.cod), m);
  };
  F.declared = {property::functorial, property::zero_preserving, property::protoadditive, property::preserves_coproducts};
  return F;
}

// ------------------------------------------------------------------- property probes

enum class PropertyStatus { verified_on_samples, counterexample, untestable };

inline const char* to_string(PropertyStatus s) {
  switch (s) {
    case PropertyStatus::verified_on_samples: return "verified-on-samples";
    case PropertyStatus::counterexample: return "counterexample";
    case PropertyStatus::untestable: return "untestable";
  }
  return "?";
}

struct PropertyVerdict {
  PropertyStatus status = PropertyStatus::untestable;
  std::string witness;
  std::size_t cases = 0;
};

struct FunctorPropertyReport {
  std::string functor;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::map<std::string, PropertyVerdict> verdicts;

  bool verified(const std::string& p) const {
    auto it = verdicts.find(p);
    return it != verdicts.end() && it->second.status == PropertyStatus::verified_on_samples;
  }
};

namespace detail {

/// Source objects the abelian-inclusion functor accepts.
template <class Src>
ObjectOf<Src> admissible_sample(const Src& cat, Rng& rng, std::size_t max_size, i64 forced_order) {
  if constexpr (std::is_same_v<Src, ModCategory>) {
    if (forced_order > 0) return cat.object(std::vector<i64>(static_cast<std::size_t>(rng.uniform(0, static_cast<i64>(max_size))), forced_order));
  }
  return cat.sample_object(rng, max_size);
}

}  // namespace detail

/// Sample-based verdicts; a counterexample is a concrete failing instance, recorded as text.
template <class Src, class Dst>
FunctorPropertyReport functor_property_report(const FunctorSpec<Src, Dst>& F, std::size_t samples, std::uint64_t seed,
                                              std::size_t max_size = 3) {
  const Src& S = F.source;
  const Dst& T = F.target;
  FunctorPropertyReport rep;
  rep.functor = F.name;
  rep.seed = seed;
  rep.samples = samples;
  for (const auto& p : property::all()) rep.verdicts[p] = PropertyVerdict{PropertyStatus::verified_on_samples, "", 0};
  auto fail = [&](const std::string& p, const std::string& w) {
    auto& v = rep.verdicts[p];
    if (v.status != PropertyStatus::counterexample) {
      v.status = PropertyStatus::counterexample;
      v.witness = w;
    }
  };
  auto tick = [&](const std::string& p) { ++rep.verdicts[p].cases; };
  i64 forced = 0;
  if constexpr (std::is_same_v<Src, ModCategory> && std::is_same_v<Dst, Lie2Fp>) forced = T.field().p;

  Rng rng = Rng::derive(seed, 0xF00);
  // zero preservation
  tick(property::zero_preserving);
  if (!T.is_zero(F(S.zero_object()))) fail(property::zero_preserving, "F(0) is not the zero object");

  // the explicit witness for protoadditivity in Lie2: span(y, z) → H → A1
  std::vector<ShortExactSequence<Src>> split_cases;
  if constexpr (!Src::additive) {
    auto a1 = S.abelian(1);
    auto sum = S.coproduct(a1, a1);
    auto proj = S.couniv(sum, S.zero(a1, a1), S.identity(a1));
    split_cases.push_back({S.kernel(proj).inclusion, proj, sum.iota2});
  }

  for (std::size_t t = 0; t < samples; ++t) {
    std::string tag = " (sample " + std::to_string(t) + ")";
    auto x = detail::admissible_sample(S, rng, max_size, forced);
    auto y = detail::admissible_sample(S, rng, max_size, forced);
    auto z = detail::admissible_sample(S, rng, max_size, forced);
    auto f = S.sample_morphism(rng, x, y);
    auto g = S.sample_morphism(rng, y, z);

    // functoriality
    tick(property::functorial);
    if (!T.equal(F(S.identity(x)), T.identity(F(x)))) fail(property::functorial, "F(1_X) ≠ 1_{F X}" + tag);
    if (!T.equal(F(S.compose(g, f)), T.compose(F(g), F(f)))) fail(property::functorial, "F(g∘f) ≠ F(g)∘F(f)" + tag);

    // coproducts: comparison F X + F Y → F(X+Y) invertible
    {
      tick(property::preserves_coproducts);
      auto s = S.coproduct(x, y);
      auto fs = T.coproduct(F(x), F(y));
      auto cmp = T.couniv(fs, F(s.iota1), F(s.iota2));
      if (!T.is_mono(cmp) || !T.is_regular_epi(cmp))
        fail(property::preserves_coproducts, "F(X)+F(Y) has size " + std::to_string(T.size(fs.object)) + " but F(X+Y) has size " +
                                                 std::to_string(T.size(F(s.object))) + tag);
    }

    // subtractive: F(δ_X) is the kernel of F(∇_X)
    {
      tick(property::subtractive);
      auto s = S.coproduct(x, x);
      auto id = S.identity(x);
      auto nabla = S.couniv(s, id, id);
      MorphismOf<Src> delta;
      if constexpr (Src::additive) delta = S.add(s.iota1, S.negate(s.iota2));
      else delta = S.kernel(nabla).inclusion;
      auto fd = F(delta);
      auto kn = T.kernel(F(nabla));
      if (!T.is_mono(fd) || !same_subobject(T, fd, kn.inclusion))
        fail(property::subtractive, "F does not preserve the split sequence D(X) → X+X → X" + tag);
    }

    // split short exact sequences: product projection and coproduct projection
    {
      auto p = S.product(x, y);
      split_cases.push_back({S.kernel(p.pi2).inclusion, p.pi2, S.pair(p, S.zero(y, x), S.identity(y))});
      auto s = S.coproduct(x, y);
      auto q = S.couniv(s, S.zero(x, y), S.identity(y));
      split_cases.push_back({S.kernel(q).inclusion, q, s.iota2});
    }

    // right exactness on a cover sequence and on a random quotient
    {
      std::vector<ShortExactSequence<Src>> quotients;
      auto cover = S.projective_cover(y);
      quotients.push_back({S.kernel(cover.epi).inclusion, cover.epi, std::nullopt});
      auto im = S.image(f).mono;
      if (im.normality == Normality::normal) {
        auto q = S.cokernel(im.inclusion);
        quotients.push_back({S.kernel(q).inclusion, q, std::nullopt});
      }
      for (const auto& ses : quotients) {
        tick(property::sequentially_right_exact);
        auto fk = F(ses.k);
        auto ff = F(ses.f);
        if (!T.is_regular_epi(ff)) fail(property::sequentially_right_exact, "F(f) is not a regular epi" + tag);
        else if (!same_subobject(T, T.image(fk).mono.inclusion, T.kernel(ff).inclusion))
          fail(property::sequentially_right_exact, "image of F(k) differs from the kernel of F(f)" + tag);
      }
    }

    // properness
    {
      auto im = S.image(f).mono;
      if (im.normality == Normality::normal) {
        tick(property::preserves_proper);
        if (T.image(F(f)).mono.normality != Normality::normal) fail(property::preserves_proper, "F(f) is not proper" + tag);
      }
    }
  }

  for (std::size_t c = 0; c < split_cases.size(); ++c) {
    const auto& ses = split_cases[c];
    std::string tag = " (split case " + std::to_string(c) + ")";
    tick(property::protoadditive);
    tick(property::preserves_protosplit_monos);
    auto fk = F(ses.k);
    auto ff = F(ses.f);
    bool mono = T.is_mono(fk);
    if (!mono || !T.is_normal_mono(fk)) fail(property::preserves_protosplit_monos, "F(k) is not a normal mono" + tag);
    if (!mono || !same_subobject(T, fk, T.kernel(ff).inclusion))
      fail(property::protoadditive, "F(k) is not the kernel of F(f): sizes " + std::to_string(T.size(F(ses.k.dom))) + " vs " +
                                        std::to_string(T.size(T.kernel(ff).object)) + tag);
  }
  for (auto& [name, v] : rep.verdicts)
    if (v.cases == 0 && v.status == PropertyStatus::verified_on_samples) v.status = PropertyStatus::untestable;
  return rep;
}

}  // namespace chainres
