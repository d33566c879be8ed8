#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainres/calculus/difference.hpp"
#include "chainres/core/category.hpp"

namespace chainres {

/// C_0 .. C_N with d[n]: C_n → C_{n-1}; d[0] is the zero map to the zero object.
template <class Cat>
struct ChainComplex {
  std::vector<ObjectOf<Cat>> objects;
  std::vector<MorphismOf<Cat>> d;

  std::size_t top() const { return objects.empty() ? 0 : objects.size() - 1; }
  std::size_t length() const { return objects.size(); }
};

template <class Cat>
struct ChainMap {
  ChainComplex<Cat> source, target;
  std::vector<MorphismOf<Cat>> components;
};

/// Complex from objects and d_1..d_N (d_0 is filled in).
template <class Cat>
ChainComplex<Cat> make_complex(const Cat& cat, std::vector<ObjectOf<Cat>> objects, std::vector<MorphismOf<Cat>> higher) {
  if (objects.empty()) throw ShapeMismatch("complex needs at least one object");
  if (higher.size() + 1 != objects.size()) throw ShapeMismatch("complex needs one differential per positive degree");
  ChainComplex<Cat> c;
  c.objects = std::move(objects);
  c.d.push_back(cat.zero(c.objects[0], cat.zero_object()));
  for (auto& m : higher) c.d.push_back(std::move(m));
  return c;
}

template <class Cat>
std::string validate_complex(const Cat& cat, const ChainComplex<Cat>& c) {
  if (c.d.size() != c.objects.size()) return "differential count mismatch";
  for (std::size_t n = 1; n < c.d.size(); ++n) {
    if (!(c.d[n].dom == c.objects[n]) || !(c.d[n].cod == c.objects[n - 1]))
      return "differential " + std::to_string(n) + " has the wrong shape";
    if (cat.validate(c.d[n]) != "ok") return "differential " + std::to_string(n) + " is not a morphism";
  }
  for (std::size_t n = 2; n < c.d.size(); ++n)
    if (!cat.is_zero(cat.compose(c.d[n - 1], c.d[n]))) return "d∘d is nonzero at degree " + std::to_string(n);
  return "ok";
}

template <class Cat>
std::string validate_chain_map(const Cat& cat, const ChainMap<Cat>& f) {
  std::size_t len = std::min({f.components.size(), f.source.length(), f.target.length()});
  for (std::size_t n = 0; n < len; ++n) {
    if (!(f.components[n].dom == f.source.objects[n]) || !(f.components[n].cod == f.target.objects[n]))
      return "component " + std::to_string(n) + " has the wrong shape";
    if (n == 0) continue;
    if (!cat.equal(cat.compose(f.target.d[n], f.components[n]), cat.compose(f.components[n - 1], f.source.d[n])))
      return "square fails to commute at degree " + std::to_string(n);
  }
  return "ok";
}

template <class Cat>
ChainMap<Cat> identity_map(const Cat& cat, const ChainComplex<Cat>& c) {
  ChainMap<Cat> f{c, c, {}};
  for (const auto& x : c.objects) f.components.push_back(cat.identity(x));
  return f;
}

template <class Cat>
ChainMap<Cat> compose_maps(const Cat& cat, const ChainMap<Cat>& g, const ChainMap<Cat>& f) {
  ChainMap<Cat> h{f.source, g.target, {}};
  std::size_t len = std::min(g.components.size(), f.components.size());
  for (std::size_t n = 0; n < len; ++n) h.components.push_back(cat.compose(g.components[n], f.components[n]));
  return h;
}

template <class Cat>
ChainMap<Cat> zero_map(const Cat& cat, const ChainComplex<Cat>& s, const ChainComplex<Cat>& t) {
  ChainMap<Cat> f{s, t, {}};
  for (std::size_t n = 0; n < std::min(s.length(), t.length()); ++n) f.components.push_back(cat.zero(s.objects[n], t.objects[n]));
  return f;
}

/// Z_n = ker d_n, the lifted differential dbar: C_{n+1} → Z_n and H_n = coker(dbar).
template <class Cat>
struct HomologyCertificate {
  std::size_t degree = 0;
  typename Cat::Subobject cycles;
  MorphismOf<Cat> dbar;
  MorphismOf<Cat> projection;  // Z_n → H_n
  ObjectOf<Cat> object() const { return projection.cod; }
};

template <class Cat>
HomologyCertificate<Cat> homology(const Cat& cat, const ChainComplex<Cat>& c, std::size_t n) {
  if (n + 1 > c.top())
    throw DegreeOutOfRange("homology in degree " + std::to_string(n) + " needs d_" + std::to_string(n + 1) +
                           " but the complex stops at " + std::to_string(c.top()));
  HomologyCertificate<Cat> h;
  h.degree = n;
  h.cycles = cat.kernel(c.d[n]);
  auto dbar = cat.factor_through_mono(c.d[n + 1], h.cycles.inclusion);
  if (!dbar) throw EngineError("d_{n+1} does not land in the cycles; is d∘d = 0?");
  h.dbar = *dbar;
  h.projection = cat.cokernel(h.dbar);
  return h;
}

struct DegreeFlags {
  std::size_t degree = 0;
  bool proper = false;
  bool exact = false;
};

/// Proper at n: the image of d_{n+1} is normal. Exact at n: dbar_{n+1} is a regular epi.
template <class Cat>
std::vector<DegreeFlags> properness_and_exactness(const Cat& cat, const ChainComplex<Cat>& c) {
  std::vector<DegreeFlags> out;
  for (std::size_t n = 0; n + 1 <= c.top(); ++n) {
    DegreeFlags f;
    f.degree = n;
    f.proper = cat.image(c.d[n + 1]).mono.normality == Normality::normal;
    f.exact = cat.is_regular_epi(homology(cat, c, n).dbar);
    out.push_back(f);
  }
  return out;
}

/// Z_n(f): the restriction of f_n to cycles.
template <class Cat>
MorphismOf<Cat> cycles_map(const Cat& cat, const ChainMap<Cat>& f, const HomologyCertificate<Cat>& hs,
                           const HomologyCertificate<Cat>& ht) {
  std::size_t n = hs.degree;
  auto z = cat.factor_through_mono(cat.compose(f.components[n], hs.cycles.inclusion), ht.cycles.inclusion);
  if (!z) throw EngineError("chain map does not preserve cycles at degree " + std::to_string(n));
  return *z;
}

template <class Cat>
MorphismOf<Cat> induced_homology_map(const Cat& cat, const ChainMap<Cat>& f, const HomologyCertificate<Cat>& hs,
                                     const HomologyCertificate<Cat>& ht) {
  auto z = cycles_map(cat, f, hs, ht);
  auto h = cat.factor_through_epi(cat.compose(ht.projection, z), hs.projection);
  if (!h) throw EngineError("chain map does not preserve boundaries at degree " + std::to_string(hs.degree));
  return *h;
}

template <class Cat>
MorphismOf<Cat> induced_homology_map(const Cat& cat, const ChainMap<Cat>& f, std::size_t n) {
  return induced_homology_map(cat, f, homology(cat, f.source, n), homology(cat, f.target, n));
}

/// k_n: D(Z_n) → ker(D(d_n)), the canonical comparison with D(ker d_n) = ker(D d_n)∘k_n.
template <class Cat>
struct KernelComparison {
  MorphismOf<Cat> k;
  typename Cat::Subobject cycles_of_d;   // ker(D(d_n)) in D(C_n)
  MorphismOf<Cat> d_of_cycles;           // D(ker d_n): D(Z_n) → D(C_n)
  bool invertible = false;
};

template <class Cat>
KernelComparison<Cat> kernel_comparison(const Workspace<Cat>& ws, const ChainComplex<Cat>& c, std::size_t n) {
  if (n > c.top()) throw DegreeOutOfRange("kernel comparison beyond the truncation");
  const Cat& cat = ws.cat;
  KernelComparison<Cat> out;
  auto z = cat.kernel(c.d[n]);
  out.d_of_cycles = ws.D(z.inclusion);
  out.cycles_of_d = cat.kernel(ws.D(c.d[n]));
  auto k = cat.factor_through_mono(out.d_of_cycles, out.cycles_of_d.inclusion);
  if (!k) throw EngineError("D(ker d_n) does not factor through ker D(d_n)");
  out.k = *k;
  out.invertible = cat.is_mono(out.k) && cat.is_regular_epi(out.k);
  return out;
}

}  // namespace chainres
