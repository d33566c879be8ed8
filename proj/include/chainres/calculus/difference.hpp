#pragma once

#include <map>
#include <memory>
#include <string>

#include "chainres/core/category.hpp"

namespace chainres {

/// D(X) with its structure maps: δ: D(X) → X+X is the kernel of ∇ = (1 1): X+X → X,
/// and ς = (1 0)∘δ.
template <class Cat>
struct DifferenceBundle {
  ObjectOf<Cat> base;
  ObjectOf<Cat> object;
  typename Cat::Sum sum;
  MorphismOf<Cat> delta, nabla, sigma;
};

/// A category together with limits and memoized difference bundles.
template <class Cat>
class Workspace {
 public:
  using Object = ObjectOf<Cat>;
  using Morphism = MorphismOf<Cat>;
  using Bundle = DifferenceBundle<Cat>;

  Workspace(Cat c, Limits l = {}) : cat(std::move(c)), limits(l) {}

  Cat cat;
  Limits limits;

  std::size_t predicted_difference_size(const Object& x) const {
    if constexpr (Cat::additive) return cat.size(x);
    else return cat.size(x) + cat.ab_dim(x) * cat.ab_dim(x);
  }

  const Bundle& bundle(const Object& x) const {
    std::string k = cat.key(x);
    auto it = cache_->find(k);
    if (it != cache_->end()) return *it->second;
    std::size_t predicted = predicted_difference_size(x);
    if (predicted > limits.dim_cap)
      throw DimensionBlowup("difference object of size " + std::to_string(predicted) + " exceeds cap " + std::to_string(limits.dim_cap));
    auto b = std::make_shared<Bundle>();
    b->base = x;
    b->sum = cat.coproduct(x, x);
    auto id = cat.identity(x);
    b->nabla = cat.couniv(b->sum, id, id);
    if constexpr (Cat::additive) {
      // D(X) = X via (1, -1)
      b->object = x;
      b->delta = cat.add(b->sum.iota1, cat.negate(b->sum.iota2));
    } else {
      auto ker = cat.kernel(b->nabla);
      b->object = ker.object;
      b->delta = ker.inclusion;
    }
    b->sigma = cat.compose(cat.couniv(b->sum, id, cat.zero(x, x)), b->delta);
    auto [pos, inserted] = cache_->emplace(k, std::move(b));
    return *pos->second;
  }

  Object D(const Object& x) const { return bundle(x).object; }
  Object D(const Object& x, std::size_t n) const {
    Object y = x;
    for (std::size_t i = 0; i < n; ++i) y = D(y);
    return y;
  }

  /// D(h): the map induced on kernels by h+h.
  Morphism D(const Morphism& h) const {
    const Bundle& bx = bundle(h.dom);
    const Bundle& by = bundle(h.cod);
    auto hh = cat.couniv(bx.sum, cat.compose(by.sum.iota1, h), cat.compose(by.sum.iota2, h));
    auto out = cat.factor_through_mono(cat.compose(hh, bx.delta), by.delta);
    if (!out) throw EngineError("D(h) does not factor through the difference object");
    return *out;
  }
  Morphism D(const Morphism& h, std::size_t n) const {
    Morphism g = h;
    for (std::size_t i = 0; i < n; ++i) g = D(g);
    return g;
  }

  Morphism sigma(const Object& x) const { return bundle(x).sigma; }

  /// ς^n_X = ς_X ∘ ς^{n-1}_{D(X)}.
  Morphism sigma_pow(const Object& x, std::size_t n) const {
    if (n == 0) return cat.identity(x);
    return cat.compose(sigma(x), sigma_pow(D(x), n - 1));
  }
  /// The other composite ς_X ∘ D(ς_X) ∘ ... ∘ D^{n-1}(ς_X).
  Morphism sigma_pow_composite(const Object& x, std::size_t n) const {
    Morphism acc = cat.identity(x);
    Morphism s = sigma(x);
    for (std::size_t i = 0; i < n; ++i) {
      acc = cat.compose(acc, s);
      if (i + 1 < n) s = D(s);
    }
    return acc;
  }

  /// Restriction of (ι2 ι1) to D(X).
  Morphism twist(const Object& x) const {
    const Bundle& b = bundle(x);
    auto swap = cat.couniv(b.sum, b.sum.iota2, b.sum.iota1);
    auto out = cat.factor_through_mono(cat.compose(swap, b.delta), b.delta);
    if (!out) throw EngineError("swap does not restrict to the difference object");
    return *out;
  }

  /// f - g = (f g)∘δ.
  Morphism diff(const Morphism& f, const Morphism& g) const {
    if (!(f.dom == g.dom) || !(f.cod == g.cod)) throw ShapeMismatch("approximate difference of non-parallel maps");
    const Bundle& b = bundle(f.dom);
    return cat.compose(cat.couniv(b.sum, f, g), b.delta);
  }

 private:
  std::shared_ptr<std::map<std::string, std::shared_ptr<Bundle>>> cache_ = std::make_shared<std::map<std::string, std::shared_ptr<Bundle>>>();
};

}  // namespace chainres
