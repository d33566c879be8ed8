#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "chainres/backends/mod.hpp"
#include "chainres/simplicial/simplicial.hpp"

namespace chainres {

namespace detail {

/// Surjections [n] ↠ [k] as non-decreasing value sequences, grouped by k then lexicographic.
inline std::vector<std::vector<int>> surjections_from(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> s{0};
    for (int t = 1; t <= n; ++t) s.push_back(s.back() + ((mask >> (t - 1)) & 1u));
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.back() != b.back()) return a.back() < b.back();
    return a < b;
  });
  return out;
}

struct GammaLevel {
  std::vector<std::vector<int>> summands;
  std::vector<std::size_t> offsets;
  ModCategory::Object object;
};

}  // namespace detail

/// Γ(C): the inverse normalization of a complex in Mod. Γ_n = ⊕_{[n]↠[k]} C_k.
/// Test oracle only: N(Γ(C)) ≅ C degreewise.
inline SimplicialObject<ModCategory> dk_gamma(const ModCategory& cat, const ChainComplex<ModCategory>& c, std::size_t depth,
                                              const std::optional<ModCategory::Morphism>& augmentation = std::nullopt) {
  using intlinalg::IntMat;
  if (depth > c.top()) throw InsufficientTruncation("Γ depth exceeds the complex");
  std::vector<detail::GammaLevel> lv;
  for (std::size_t n = 0; n <= depth; ++n) {
    detail::GammaLevel g;
    g.summands = detail::surjections_from(static_cast<int>(n));
    std::vector<i64> orders;
    for (const auto& s : g.summands) {
      g.offsets.push_back(orders.size());
      for (auto o : c.objects[static_cast<std::size_t>(s.back())].orders) orders.push_back(o);
    }
    g.object = cat.object(orders);
    lv.push_back(std::move(g));
  }
  // θ: [m] → [n] given by its values; returns Γ_n → Γ_m
  auto induced = [&](std::size_t n, std::size_t m, const std::vector<int>& theta) {
    const auto& src = lv[n];
    const auto& dst = lv[m];
    IntMat mat(dst.object.size(), src.object.size(), 0);
    for (std::size_t si = 0; si < src.summands.size(); ++si) {
      const auto& sigma = src.summands[si];
      const int k = sigma.back();
      std::vector<int> comp;
      for (int t : theta) comp.push_back(sigma[static_cast<std::size_t>(t)]);
      std::vector<int> img(comp);
      img.erase(std::unique(img.begin(), img.end()), img.end());
      const int top = img.back();
      const bool full = static_cast<int>(img.size()) == k + 1;
      const bool misses_last = !full && top == k - 1 && static_cast<int>(img.size()) == k;
      if (!full && !misses_last) continue;
      // comp is already a surjection onto [0..top] since it is monotone with consecutive image
      auto it = std::find(dst.summands.begin(), dst.summands.end(), comp);
      if (it == dst.summands.end()) throw EngineError("Γ: missing summand");
      const std::size_t di = static_cast<std::size_t>(it - dst.summands.begin());
      const auto& ck = c.objects[static_cast<std::size_t>(k)];
      if (full) {
        for (std::size_t r = 0; r < ck.size(); ++r) mat(dst.offsets[di] + r, src.offsets[si] + r) = 1;
      } else {
        const auto& dk = c.d[static_cast<std::size_t>(k)];
        for (std::size_t r = 0; r < dk.matrix.rows(); ++r)
          for (std::size_t q = 0; q < dk.matrix.cols(); ++q) mat(dst.offsets[di] + r, src.offsets[si] + q) = dk.matrix(r, q);
      }
    }
    return cat.make(src.object, dst.object, mat);
  };
  SimplicialObject<ModCategory> s;
  for (std::size_t n = 0; n <= depth; ++n) {
    s.levels.push_back(lv[n].object);
    std::vector<ModCategory::Morphism> fs, ds;
    if (n >= 1)
      for (std::size_t i = 0; i <= n; ++i) {
        std::vector<int> theta;
        for (std::size_t t = 0; t < n; ++t) theta.push_back(static_cast<int>(t < i ? t : t + 1));
        fs.push_back(induced(n, n - 1, theta));
      }
    if (n < depth)
      for (std::size_t i = 0; i <= n; ++i) {
        std::vector<int> theta;
        for (std::size_t t = 0; t <= n + 1; ++t) theta.push_back(static_cast<int>(t <= i ? t : t - 1));
        ds.push_back(induced(n, n + 1, theta));
      }
    s.faces.push_back(fs);
    s.degeneracies.push_back(ds);
  }
  if (augmentation) {
    s.base = augmentation->cod;
    s.augmentation = *augmentation;
  }
  return s;
}

namespace detail {

/// All elements of a finite module in mixed-radix order.
inline std::vector<intlinalg::IntVec> enumerate_elements(const ModCategory::Object& x, std::size_t cap) {
  std::size_t count = 1;
  for (auto o : x.orders) {
    if (o == 0) throw DimensionBlowup("underlying set of a module with a free Z summand is infinite");
    if (count > cap / static_cast<std::size_t>(o)) throw DimensionBlowup("underlying set exceeds the size cap");
    count *= static_cast<std::size_t>(o);
    if (count > cap) throw DimensionBlowup("underlying set exceeds the size cap");
  }
  std::vector<intlinalg::IntVec> out;
  intlinalg::IntVec v(x.size(), 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    out.push_back(v);
    for (std::size_t i = v.size(); i-- > 0;) {
      if (++v[i] < x.orders[i]) break;
      v[i] = 0;
    }
  }
  return out;
}

inline std::size_t element_index(const ModCategory::Object& x, const intlinalg::IntVec& v) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < v.size(); ++i) idx = idx * static_cast<std::size_t>(x.orders[i]) + static_cast<std::size_t>(reduce(v[i], x.orders[i]));
  return idx;
}

}  // namespace detail

/// G X = free module on the underlying set of X, G²X, with ε_{GX}, G(ε_X) and the comultiplication.
/// Only depth ≤ 1 is supported.
inline SimplicialObject<ModCategory> comonadic(const ModCategory& cat, const ModCategory::Object& x, std::size_t depth,
                                               const Limits& limits = {}) {
  using intlinalg::IntMat;
  if (depth > 1) throw DimensionBlowup("comonadic levels beyond depth 1 are out of scope");
  auto xs = detail::enumerate_elements(x, limits.dim_cap);
  auto g1 = cat.free_object(xs.size());
  IntMat eps(x.size(), xs.size(), 0);
  for (std::size_t j = 0; j < xs.size(); ++j)
    for (std::size_t i = 0; i < x.size(); ++i) eps(i, j) = xs[j][i];
  auto eps_x = cat.make(g1, x, eps);
  SimplicialObject<ModCategory> s;
  s.levels.push_back(g1);
  s.faces.push_back({});
  s.base = x;
  s.augmentation = eps_x;
  if (depth == 0) {
    s.degeneracies.push_back({});
    return s;
  }
  auto gs = detail::enumerate_elements(g1, limits.dim_cap);
  auto g2 = cat.free_object(gs.size());
  IntMat d0(g1.size(), gs.size(), 0), d1(g1.size(), gs.size(), 0), s0(gs.size(), g1.size(), 0);
  for (std::size_t j = 0; j < gs.size(); ++j) {
    for (std::size_t i = 0; i < g1.size(); ++i) d0(i, j) = gs[j][i];
    auto image = intlinalg::apply(eps_x.matrix, gs[j]);
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = reduce(image[i], x.orders[i]);
    d1(detail::element_index(x, image), j) = 1;
  }
  for (std::size_t j = 0; j < g1.size(); ++j) {
    intlinalg::IntVec unit(g1.size(), 0);
    unit[j] = 1;
    s0(detail::element_index(g1, unit), j) = 1;
  }
  s.levels.push_back(g2);
  s.faces.push_back({cat.make(g2, g1, d0), cat.make(g2, g1, d1)});
  s.degeneracies.push_back({cat.make(g1, g2, s0)});
  s.degeneracies.push_back({});
  return s;
}

}  // namespace chainres
