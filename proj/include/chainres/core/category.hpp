#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainres/core/errors.hpp"
#include "chainres/core/types.hpp"
#include "chainres/support/random.hpp"

namespace chainres {

template <class Cat>
using ObjectOf = typename Cat::Object;
template <class Cat>
using MorphismOf = typename Cat::Morphism;

template <class Cat>
struct ShortExactSequence {
  MorphismOf<Cat> k;                        // kernel inclusion
  MorphismOf<Cat> f;                        // regular epi
  std::optional<MorphismOf<Cat>> section;   // f∘section = 1 when present
};

template <class Cat>
std::string validate_ses(const Cat& cat, const ShortExactSequence<Cat>& s) {
  if (!(s.k.cod == s.f.dom)) return "k and f are not composable";
  if (!cat.is_zero(cat.compose(s.f, s.k))) return "f∘k is not zero";
  if (!cat.is_mono(s.k)) return "k is not mono";
  if (!cat.is_regular_epi(s.f)) return "f is not a regular epi";
  auto kf = cat.kernel(s.f);
  if (!cat.factor_through_mono(s.k, kf.inclusion) || !cat.factor_through_mono(kf.inclusion, s.k)) return "k is not the kernel of f";
  if (s.section && !cat.equal(cat.compose(s.f, *s.section), cat.identity(s.f.cod))) return "section does not split f";
  return "ok";
}

/// Do two monos into the same object present the same subobject?
template <class Cat>
bool same_subobject(const Cat& cat, const MorphismOf<Cat>& a, const MorphismOf<Cat>& b) {
  if (!(a.cod == b.cod)) return false;
  return cat.factor_through_mono(a, b).has_value() && cat.factor_through_mono(b, a).has_value();
}

template <class Cat>
struct Pullback {
  ObjectOf<Cat> object;
  MorphismOf<Cat> first;   // to dom(f)
  MorphismOf<Cat> second;  // to dom(g); f∘first = g∘second
};

template <class Cat>
Pullback<Cat> pullback(const Cat& cat, const MorphismOf<Cat>& f, const MorphismOf<Cat>& g) {
  if (!(f.cod == g.cod)) throw ShapeMismatch("pullback: codomain mismatch");
  auto prod = cat.product(f.dom, g.dom);
  auto eq = cat.equalizer(cat.compose(f, prod.pi1), cat.compose(g, prod.pi2));
  return {eq.object, cat.compose(prod.pi1, eq.inclusion), cat.compose(prod.pi2, eq.inclusion)};
}

/// Universal map into a pullback from a commuting pair.
template <class Cat>
MorphismOf<Cat> pullback_pair(const Cat& cat, const Pullback<Cat>& pb, const MorphismOf<Cat>& a, const MorphismOf<Cat>& b) {
  auto prod = cat.product(pb.first.cod, pb.second.cod);
  auto incl = cat.pair(prod, pb.first, pb.second);
  auto x = cat.factor_through_mono(cat.pair(prod, a, b), incl);
  if (!x) throw ShapeMismatch("pullback_pair: the pair does not commute over the base");
  return *x;
}

/// Iterated product X_0 × ... × X_{k-1} with projections.
template <class Cat>
struct NaryProduct {
  ObjectOf<Cat> object;
  std::vector<MorphismOf<Cat>> projections;
};

template <class Cat>
NaryProduct<Cat> nary_product(const Cat& cat, const std::vector<ObjectOf<Cat>>& factors) {
  NaryProduct<Cat> out;
  if (factors.empty()) {
    out.object = cat.zero_object();
    return out;
  }
  out.object = factors.back();
  out.projections.push_back(cat.identity(out.object));
  for (std::size_t i = factors.size() - 1; i-- > 0;) {
    auto p = cat.product(factors[i], out.object);
    std::vector<MorphismOf<Cat>> proj{p.pi1};
    for (const auto& old : out.projections) proj.push_back(cat.compose(old, p.pi2));
    out.object = p.object;
    out.projections = std::move(proj);
  }
  return out;
}

template <class Cat>
MorphismOf<Cat> nary_pair(const Cat& cat, const std::vector<ObjectOf<Cat>>& factors, const std::vector<MorphismOf<Cat>>& maps) {
  if (maps.size() != factors.size() || maps.empty()) throw ShapeMismatch("nary_pair: arity mismatch");
  MorphismOf<Cat> acc = maps.back();
  ObjectOf<Cat> obj = factors.back();
  for (std::size_t i = factors.size() - 1; i-- > 0;) {
    auto p = cat.product(factors[i], obj);
    acc = cat.pair(p, maps[i], acc);
    obj = p.object;
  }
  return acc;
}

template <class Cat>
struct Classification {
  bool mono = false, regular_epi = false, proper = false, normal_mono = false;
  SearchVerdict split_epi = SearchVerdict::none;
  std::optional<MorphismOf<Cat>> section;
};

template <class Cat>
Classification<Cat> classify(const Cat& cat, const MorphismOf<Cat>& f, i64 budget) {
  Classification<Cat> c;
  c.mono = cat.is_mono(f);
  c.regular_epi = cat.is_regular_epi(f);
  c.normal_mono = c.mono && cat.is_normal_mono(f);
  c.proper = cat.image(f).mono.normality == Normality::normal;
  if (c.regular_epi) {
    auto s = cat.find_section(f, budget);
    c.split_epi = s.verdict;
    c.section = s.map;
  }
  return c;
}

/// Certificate that x is projective: free, a retract of its canonical cover, or neither.
template <class Cat>
typename Cat::FreenessWitness projective_witness(const Cat& cat, const ObjectOf<Cat>& x, i64 budget) {
  using W = typename Cat::FreenessWitness;
  if (cat.is_free_presentation(x)) return W::free(cat.free_rank(x));
  auto cover = cat.projective_cover(x);
  auto s = cat.find_section(cover.epi, budget);
  W w;
  if (s.verdict == SearchVerdict::found) {
    w.kind = W::Kind::retract;
    w.generators = cover.generators;
    w.free_object = cover.object;
    w.retraction = cover.epi;
    w.section = s.map;
  } else {
    w.kind = W::Kind::none;
    w.search = s.verdict;
  }
  return w;
}

template <class Cat>
std::string validate_witness(const Cat& cat, const ObjectOf<Cat>& x, const typename Cat::FreenessWitness& w) {
  using W = typename Cat::FreenessWitness;
  switch (w.kind) {
    case W::Kind::free: return cat.is_free_presentation(x) && cat.free_rank(x) == w.generators ? "ok" : "object is not free";
    case W::Kind::retract:
      if (!w.retraction || !w.section) return "retract witness incomplete";
      return cat.equal(cat.compose(*w.retraction, *w.section), cat.identity(x)) ? "ok" : "retraction∘section is not the identity";
    case W::Kind::none: return "no projectivity witness";
  }
  return "?";
}

/// Lift f through e using the projectivity witness of dom(f). With a tie-break generator,
/// preimages of free generators are shifted by random kernel elements of e.
template <class Cat>
MorphismOf<Cat> lift_through(const Cat& cat, const MorphismOf<Cat>& f, const MorphismOf<Cat>& e,
                             const typename Cat::FreenessWitness& w, i64 budget, Rng* tie = nullptr) {
  using W = typename Cat::FreenessWitness;
  if (!(f.cod == e.cod)) throw ShapeMismatch("lift: codomain mismatch");
  switch (w.kind) {
    case W::Kind::free: {
      auto kern = tie ? cat.kernel_elements(e) : decltype(cat.kernel_elements(e)){};
      std::vector<std::decay_t<decltype(cat.generator_image(f, 0))>> images;
      for (std::size_t i = 0; i < w.generators; ++i) {
        auto y = cat.preimage(e, cat.generator_image(f, i));
        if (!y) throw LiftNotFound("generator image has no preimage");
        images.push_back(tie ? cat.perturb(*y, kern, *tie) : *y);
      }
      auto g = cat.from_generators(f.dom, e.dom, images);
      if (!cat.equal(cat.compose(e, g), f)) throw LiftNotFound("free lift failed to commute");
      return g;
    }
    case W::Kind::retract: {
      auto inner = lift_through(cat, cat.compose(f, *w.retraction), e, W::free(w.generators), budget, tie);
      auto g = cat.compose(inner, *w.section);
      if (!cat.equal(cat.compose(e, g), f)) throw LiftNotFound("retract lift failed to commute");
      return g;
    }
    case W::Kind::none: {
      auto s = cat.search_lift(f, e, budget);
      if (s.verdict != SearchVerdict::found) throw LiftNotFound(std::string("no lift (search verdict: ") + to_string(s.verdict) + ")");
      return *s.map;
    }
  }
  throw LiftNotFound("unknown witness kind");
}

}  // namespace chainres
