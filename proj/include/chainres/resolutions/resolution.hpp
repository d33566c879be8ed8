#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainres/chains/complex.hpp"
#include "chainres/core/category.hpp"

namespace chainres {

/// Projective resolution truncated at degree N. cycles[n] = ker d_n (with d_0 the augmentation)
/// and dbar[n]: C_{n+1} → cycles[n] is the corestricted differential, for n < N.
template <class Cat>
struct ProjectiveResolution {
  ChainComplex<Cat> complex;
  ObjectOf<Cat> resolved;
  MorphismOf<Cat> augmentation;
  std::vector<typename Cat::FreenessWitness> witnesses;
  std::vector<typename Cat::Subobject> cycles;
  std::vector<MorphismOf<Cat>> dbar;
  std::uint64_t seed = 0;

  std::size_t top() const { return complex.top(); }
};

namespace detail {
inline std::uint64_t level_seed(std::uint64_t seed, std::size_t level) {
  return seed == 0 ? 0 : Rng::derive(seed, 0x100 + level).next() | 1;
}
}  // namespace detail

/// Cover X, then repeatedly cover the kernel of the last differential.
template <class Cat>
ProjectiveResolution<Cat> build_resolution(const Cat& cat, const ObjectOf<Cat>& x, std::size_t maxdeg,
                                           std::uint64_t seed = 0, const Limits& limits = {}) {
  ProjectiveResolution<Cat> r;
  r.resolved = x;
  r.seed = seed;
  auto cover = cat.projective_cover(x, detail::level_seed(seed, 0));
  if (cat.size(cover.object) > limits.dim_cap) throw DimensionBlowup("resolution level 0 exceeds the size cap");
  r.augmentation = cover.epi;
  std::vector<ObjectOf<Cat>> objects{cover.object};
  std::vector<MorphismOf<Cat>> higher;
  r.witnesses.push_back(Cat::FreenessWitness::free(cover.generators));
  MorphismOf<Cat> last = cover.epi;
  for (std::size_t n = 0; n < maxdeg; ++n) {
    auto k = cat.kernel(last);
    auto c = cat.projective_cover(k.object, detail::level_seed(seed, n + 1));
    if (cat.size(c.object) > limits.dim_cap) throw DimensionBlowup("resolution level " + std::to_string(n + 1) + " exceeds the size cap");
    r.cycles.push_back(k);
    r.dbar.push_back(c.epi);
    objects.push_back(c.object);
    last = cat.compose(k.inclusion, c.epi);
    higher.push_back(last);
    r.witnesses.push_back(Cat::FreenessWitness::free(c.generators));
  }
  r.complex = make_complex(cat, std::move(objects), std::move(higher));
  return r;
}

struct ResolutionReport {
  bool ok = true;
  std::string message = "ok";
  std::size_t scope = 0;       // statements hold for degrees below this
  long failed_degree = -1;
};

template <class Cat>
ResolutionReport validate_resolution(const Cat& cat, const ProjectiveResolution<Cat>& r) {
  ResolutionReport rep;
  rep.scope = r.top();
  auto fail = [&](std::string m, long deg) {
    rep.ok = false;
    rep.message = std::move(m);
    rep.failed_degree = deg;
    return rep;
  };
  std::string v = validate_complex(cat, r.complex);
  if (v != "ok") return fail(v, -1);
  if (!(r.augmentation.dom == r.complex.objects[0]) || !(r.augmentation.cod == r.resolved)) return fail("augmentation shape", 0);
  if (!cat.is_regular_epi(r.augmentation)) return fail("augmentation is not a regular epi", 0);
  for (std::size_t n = 0; n < r.witnesses.size(); ++n) {
    std::string w = validate_witness(cat, r.complex.objects[n], r.witnesses[n]);
    if (w != "ok") return fail("level " + std::to_string(n) + ": " + w, static_cast<long>(n));
  }
  if (r.top() >= 1) {
    auto d1 = r.complex.d[1];
    if (!cat.is_zero(cat.compose(r.augmentation, d1))) return fail("augmentation∘d_1 is nonzero", 0);
    auto im = cat.image(d1).mono.inclusion;
    if (!same_subobject(cat, im, cat.kernel(r.augmentation).inclusion)) return fail("not exact at degree 0", 0);
  }
  for (std::size_t n = 1; n + 1 <= r.top(); ++n) {
    auto h = homology(cat, r.complex, n);
    if (!cat.is_regular_epi(h.dbar)) return fail("not exact at degree " + std::to_string(n), static_cast<long>(n));
  }
  return rep;
}

/// Chain map over x: C(X) → E(Y), lifted degreewise through the target's corestricted
/// differentials. A nonzero tie seed perturbs preimages by kernel elements.
template <class Cat>
ChainMap<Cat> lift_morphism(const Cat& cat, const MorphismOf<Cat>& x, const ProjectiveResolution<Cat>& c,
                            const ProjectiveResolution<Cat>& e, i64 budget = 1'000'000, std::uint64_t tie_seed = 0) {
  if (!(x.dom == c.resolved) || !(x.cod == e.resolved)) throw ShapeMismatch("lift_morphism: x does not match the resolutions");
  Rng rng = Rng::derive(tie_seed, 0x11F7);
  Rng* tie = tie_seed ? &rng : nullptr;
  ChainMap<Cat> f{c.complex, e.complex, {}};
  f.components.push_back(lift_through(cat, cat.compose(x, c.augmentation), e.augmentation, c.witnesses[0], budget, tie));
  const std::size_t top = std::min(c.top(), e.top());
  for (std::size_t n = 1; n <= top; ++n) {
    auto target = cat.compose(f.components[n - 1], c.complex.d[n]);
    auto into_cycles = cat.factor_through_mono(target, e.cycles[n - 1].inclusion);
    if (!into_cycles) throw LiftNotFound("lifted map does not land in the cycles at degree " + std::to_string(n));
    f.components.push_back(lift_through(cat, *into_cycles, e.dbar[n - 1], c.witnesses[n], budget, tie));
  }
  return f;
}

template <class Cat>
struct Syzygy {
  ObjectOf<Cat> object;
  ShortExactSequence<Cat> ses;
};

template <class Cat>
Syzygy<Cat> syzygy(const Cat& cat, const ObjectOf<Cat>& x) {
  auto cover = cat.projective_cover(x);
  auto k = cat.kernel(cover.epi);
  return {k.object, {k.inclusion, cover.epi, std::nullopt}};
}

}  // namespace chainres
