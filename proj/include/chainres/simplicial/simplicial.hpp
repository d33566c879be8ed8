#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "chainres/calculus/difference.hpp"
#include "chainres/chains/complex.hpp"
#include "chainres/homotopy/homotopy.hpp"
#include "chainres/resolutions/resolution.hpp"

namespace chainres {

/// Levels A_0..A_N; faces[n][i]: A_n → A_{n-1} (n ≥ 1), degeneracies[n][i]: A_n → A_{n+1} (n < N).
template <class Cat>
struct SimplicialObject {
  std::vector<ObjectOf<Cat>> levels;
  std::vector<std::vector<MorphismOf<Cat>>> faces;
  std::vector<std::vector<MorphismOf<Cat>>> degeneracies;
  std::optional<ObjectOf<Cat>> base;
  std::optional<MorphismOf<Cat>> augmentation;  // A_0 → base

  std::size_t top() const { return levels.empty() ? 0 : levels.size() - 1; }
  bool augmented() const { return augmentation.has_value(); }
};

/// Levelwise maps.
template <class Cat>
using SimplicialMap = std::vector<MorphismOf<Cat>>;

/// 𝕙[n][j]: A_n → B_{n+1}, 0 ≤ j ≤ n.
template <class Cat>
using SimplicialHomotopy = std::vector<std::vector<MorphismOf<Cat>>>;

template <class Cat>
std::string validate_simplicial(const Cat& cat, const SimplicialObject<Cat>& s) {
  const std::size_t N = s.top();
  auto eq = [&](const MorphismOf<Cat>& a, const MorphismOf<Cat>& b) { return cat.equal(a, b); };
  auto id = [&](std::size_t n) { return cat.identity(s.levels[n]); };
  for (std::size_t n = 2; n <= N; ++n)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (!eq(cat.compose(s.faces[n - 1][i], s.faces[n][j]), cat.compose(s.faces[n - 1][j - 1], s.faces[n][i])))
          return "face identity d" + std::to_string(i) + "d" + std::to_string(j) + " fails at level " + std::to_string(n);
  for (std::size_t n = 0; n + 2 <= N; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i <= j; ++i)
        if (!eq(cat.compose(s.degeneracies[n + 1][i], s.degeneracies[n][j]),
                cat.compose(s.degeneracies[n + 1][j + 1], s.degeneracies[n][i])))
          return "degeneracy identity s" + std::to_string(i) + "s" + std::to_string(j) + " fails at level " + std::to_string(n);
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i <= n + 1; ++i) {
        auto lhs = cat.compose(s.faces[n + 1][i], s.degeneracies[n][j]);
        MorphismOf<Cat> rhs;
        if (i == j || i == j + 1) rhs = id(n);
        else if (i < j) rhs = cat.compose(s.degeneracies[n - 1][j - 1], s.faces[n][i]);
        else rhs = cat.compose(s.degeneracies[n - 1][j], s.faces[n][i - 1]);
        if (!eq(lhs, rhs))
          return "mixed identity d" + std::to_string(i) + "s" + std::to_string(j) + " fails at level " + std::to_string(n);
      }
  if (s.augmentation && N >= 1)
    if (!eq(cat.compose(*s.augmentation, s.faces[1][0]), cat.compose(*s.augmentation, s.faces[1][1])))
      return "augmentation does not equalize the level-1 faces";
  return "ok";
}

template <class Cat>
std::string validate_simplicial_map(const Cat& cat, const SimplicialObject<Cat>& a, const SimplicialObject<Cat>& b,
                                    const SimplicialMap<Cat>& f) {
  for (std::size_t n = 1; n < f.size(); ++n)
    for (std::size_t i = 0; i <= n; ++i)
      if (!cat.equal(cat.compose(b.faces[n][i], f[n]), cat.compose(f[n - 1], a.faces[n][i])))
        return "map does not commute with face " + std::to_string(i) + " at level " + std::to_string(n);
  for (std::size_t n = 0; n + 1 < f.size(); ++n)
    for (std::size_t i = 0; i <= n; ++i)
      if (!cat.equal(cat.compose(b.degeneracies[n][i], f[n]), cat.compose(f[n + 1], a.degeneracies[n][i])))
        return "map does not commute with degeneracy " + std::to_string(i) + " at level " + std::to_string(n);
  return "ok";
}

/// Boundary conditions ∂_0𝕙_0 = f, ∂_{n+1}𝕙_n = g and the face/degeneracy exchange laws.
template <class Cat>
std::string validate_simplicial_homotopy(const Cat& cat, const SimplicialObject<Cat>& a, const SimplicialObject<Cat>& b,
                                         const SimplicialMap<Cat>& f, const SimplicialMap<Cat>& g,
                                         const SimplicialHomotopy<Cat>& h) {
  auto eq = [&](const MorphismOf<Cat>& x, const MorphismOf<Cat>& y) { return cat.equal(x, y); };
  auto at = [](std::size_t n, std::size_t j) { return " (level " + std::to_string(n) + ", index " + std::to_string(j) + ")"; };
  for (std::size_t n = 0; n < h.size(); ++n) {
    if (n + 1 > b.top()) return "homotopy exceeds the target truncation";
    if (!eq(cat.compose(b.faces[n + 1][0], h[n][0]), f[n])) return "first boundary condition fails" + at(n, 0);
    if (!eq(cat.compose(b.faces[n + 1][n + 1], h[n][n]), g[n])) return "last boundary condition fails" + at(n, n);
    for (std::size_t j = 0; j <= n; ++j) {
      for (std::size_t i = 0; i <= n + 1; ++i) {
        auto lhs = cat.compose(b.faces[n + 1][i], h[n][j]);
        if (i < j) {
          if (!eq(lhs, cat.compose(h[n - 1][j - 1], a.faces[n][i]))) return "face exchange (i < j) fails" + at(n, j);
        } else if (i == j + 1 && j + 1 <= n) {
          if (!eq(lhs, cat.compose(b.faces[n + 1][j + 1], h[n][j + 1]))) return "adjacent face condition fails" + at(n, j);
        } else if (i > j + 1) {
          if (!eq(lhs, cat.compose(h[n - 1][j], a.faces[n][i - 1]))) return "face exchange (i > j+1) fails" + at(n, j);
        }
      }
      if (n + 1 < h.size() && n + 1 < b.top())
        for (std::size_t i = 0; i <= n + 1; ++i) {
          auto lhs = cat.compose(b.degeneracies[n + 1][i], h[n][j]);
          auto rhs = i <= j ? cat.compose(h[n + 1][j + 1], a.degeneracies[n][i]) : cat.compose(h[n + 1][j], a.degeneracies[n][i - 1]);
          if (!eq(lhs, rhs)) return "degeneracy exchange fails" + at(n, j);
        }
    }
  }
  return "ok";
}

// ------------------------------------------------------------------ Moore complex

template <class Cat>
struct MooreComplex {
  ChainComplex<Cat> complex;
  std::vector<MorphismOf<Cat>> kappa;  // N_n → A_n
};

/// N_n = joint kernel of ∂_0..∂_{n-1}; the differential is the restricted last face.
template <class Cat>
MooreComplex<Cat> moore(const Cat& cat, const SimplicialObject<Cat>& s) {
  MooreComplex<Cat> m;
  std::vector<ObjectOf<Cat>> objs{s.levels[0]};
  std::vector<MorphismOf<Cat>> diffs;
  m.kappa.push_back(cat.identity(s.levels[0]));
  for (std::size_t n = 1; n <= s.top(); ++n) {
    std::vector<ObjectOf<Cat>> factors(n, s.levels[n - 1]);
    std::vector<MorphismOf<Cat>> maps(s.faces[n].begin(), s.faces[n].begin() + static_cast<std::ptrdiff_t>(n));
    auto k = cat.kernel(nary_pair(cat, factors, maps));
    auto d = cat.factor_through_mono(cat.compose(s.faces[n][n], k.inclusion), m.kappa[n - 1]);
    if (!d) throw EngineError("last face does not preserve the normalized part at level " + std::to_string(n));
    objs.push_back(k.object);
    m.kappa.push_back(k.inclusion);
    diffs.push_back(*d);
  }
  m.complex = make_complex(cat, std::move(objs), std::move(diffs));
  return m;
}

template <class Cat>
ChainMap<Cat> moore_map(const Cat& cat, const MooreComplex<Cat>& ma, const MooreComplex<Cat>& mb, const SimplicialMap<Cat>& f) {
  ChainMap<Cat> out{ma.complex, mb.complex, {}};
  const std::size_t len = std::min({f.size(), ma.kappa.size(), mb.kappa.size()});
  for (std::size_t n = 0; n < len; ++n) {
    auto r = cat.factor_through_mono(cat.compose(f[n], ma.kappa[n]), mb.kappa[n]);
    if (!r) throw EngineError("simplicial map does not preserve normalized parts");
    out.components.push_back(*r);
  }
  return out;
}

// ----------------------------------------------------------------------- décalage

/// Shifted object (S⁻_n = S_{n+1}, the 0th face and degeneracy dropped) and Λ = ker(∂_0: S⁻ → S).
template <class Cat>
struct Decalage {
  SimplicialObject<Cat> shifted;
  SimplicialObject<Cat> lambda;
  std::vector<MorphismOf<Cat>> inclusions;  // Λ_n → S_{n+1}
  MorphismOf<Cat> base_inclusion;           // Λ_{-1} → S_0
  bool levelwise_split = true;
};

template <class Cat>
Decalage<Cat> decalage(const Cat& cat, const SimplicialObject<Cat>& s) {
  if (!s.augmented()) throw InsufficientTruncation("décalage needs an augmented simplicial object");
  if (s.top() < 1) throw InsufficientTruncation("décalage needs at least two levels");
  const std::size_t N = s.top();
  Decalage<Cat> out;
  auto& sh = out.shifted;
  auto& lam = out.lambda;
  for (std::size_t n = 0; n + 1 <= N; ++n) {
    sh.levels.push_back(s.levels[n + 1]);
    std::vector<MorphismOf<Cat>> fs, ds;
    if (n >= 1)
      for (std::size_t i = 0; i <= n; ++i) fs.push_back(s.faces[n + 1][i + 1]);
    if (n + 1 < N)
      for (std::size_t i = 0; i <= n; ++i) ds.push_back(s.degeneracies[n + 1][i + 1]);
    sh.faces.push_back(fs);
    sh.degeneracies.push_back(ds);
  }
  sh.base = s.levels[0];
  sh.augmentation = s.faces[1][1];

  auto kb = cat.kernel(*s.augmentation);
  out.base_inclusion = kb.inclusion;
  for (std::size_t n = 0; n + 1 <= N; ++n) {
    auto k = cat.kernel(s.faces[n + 1][0]);
    lam.levels.push_back(k.object);
    out.inclusions.push_back(k.inclusion);
    ShortExactSequence<Cat> col{k.inclusion, s.faces[n + 1][0], s.degeneracies[n][0]};
    if (validate_ses(cat, col) != "ok") out.levelwise_split = false;
  }
  auto restrict = [&](const MorphismOf<Cat>& m, const MorphismOf<Cat>& src, const MorphismOf<Cat>& dst) {
    auto r = cat.factor_through_mono(cat.compose(m, src), dst);
    if (!r) throw EngineError("décalage structure map does not restrict to the kernel");
    return *r;
  };
  for (std::size_t n = 0; n < lam.levels.size(); ++n) {
    std::vector<MorphismOf<Cat>> fs, ds;
    if (n >= 1)
      for (std::size_t i = 0; i <= n; ++i) fs.push_back(restrict(sh.faces[n][i], out.inclusions[n], out.inclusions[n - 1]));
    if (n + 1 < lam.levels.size())
      for (std::size_t i = 0; i <= n; ++i) ds.push_back(restrict(sh.degeneracies[n][i], out.inclusions[n], out.inclusions[n + 1]));
    lam.faces.push_back(fs);
    lam.degeneracies.push_back(ds);
  }
  lam.base = kb.object;
  lam.augmentation = restrict(*sh.augmentation, out.inclusions[0], out.base_inclusion);
  return out;
}

/// Inclusion (Λ^n S)_0 → S_n obtained by iterating the décalage.
template <class Cat>
MorphismOf<Cat> iterated_decalage_base(const Cat& cat, const SimplicialObject<Cat>& s, std::size_t n) {
  if (s.top() < n) throw InsufficientTruncation("not enough levels for the iterated décalage");
  SimplicialObject<Cat> t = s;
  std::vector<MorphismOf<Cat>> incl;
  for (const auto& x : s.levels) incl.push_back(cat.identity(x));
  for (std::size_t step = 0; step < n; ++step) {
    auto dec = decalage(cat, t);
    std::vector<MorphismOf<Cat>> next;
    for (std::size_t k = 0; k < dec.inclusions.size(); ++k) next.push_back(cat.compose(incl[k + 1], dec.inclusions[k]));
    incl = std::move(next);
    t = std::move(dec.lambda);
  }
  return incl[0];
}

/// N_n(S) = (Λ^n S)_0 as subobjects of S_n, for n = 0..upto.
template <class Cat>
std::vector<bool> decalage_identity(const Cat& cat, const SimplicialObject<Cat>& s, std::size_t upto) {
  auto m = moore(cat, s);
  std::vector<bool> out;
  for (std::size_t n = 0; n <= upto && n <= s.top(); ++n) out.push_back(same_subobject(cat, m.kappa[n], iterated_decalage_base(cat, s, n)));
  return out;
}

// --------------------------------------------------------------------- generators

template <class Cat>
SimplicialObject<Cat> constant_simplicial(const Cat& cat, const ObjectOf<Cat>& x, std::size_t depth) {
  SimplicialObject<Cat> s;
  for (std::size_t n = 0; n <= depth; ++n) {
    s.levels.push_back(x);
    s.faces.push_back(n == 0 ? std::vector<MorphismOf<Cat>>{} : std::vector<MorphismOf<Cat>>(n + 1, cat.identity(x)));
    s.degeneracies.push_back(n < depth ? std::vector<MorphismOf<Cat>>(n + 1, cat.identity(x)) : std::vector<MorphismOf<Cat>>{});
  }
  s.base = x;
  s.augmentation = cat.identity(x);
  return s;
}

template <class Cat>
struct CechNerve {
  SimplicialObject<Cat> object;
  std::vector<MorphismOf<Cat>> inclusions;  // level n → A^{n+1}
  // present for split epis: 𝕙 with ∂_0𝕙_0 = constant, ∂_{n+1}𝕙_n = identity
  std::optional<SimplicialHomotopy<Cat>> contraction;
  SimplicialMap<Cat> constant, identity;
};

/// Level n = {(a_0..a_n) : e(a_0) = ... = e(a_n)} ⊆ A^{n+1}; ∂_i drops a_i, σ_i repeats a_i.
template <class Cat>
CechNerve<Cat> cech_nerve(const Cat& cat, const MorphismOf<Cat>& e, std::size_t depth,
                          const std::optional<MorphismOf<Cat>>& section = std::nullopt, const Limits& limits = {}) {
  const auto& a = e.dom;
  CechNerve<Cat> out;
  auto& s = out.object;
  std::vector<NaryProduct<Cat>> prods;
  for (std::size_t n = 0; n <= depth; ++n) {
    if (cat.size(a) * (n + 1) > limits.dim_cap) throw DimensionBlowup("Čech nerve level exceeds the size cap");
    std::vector<ObjectOf<Cat>> factors(n + 1, a);
    prods.push_back(nary_product(cat, factors));
    const auto& p = prods.back();
    if (n == 0) {
      s.levels.push_back(a);
      out.inclusions.push_back(cat.identity(a));
      continue;
    }
    std::vector<ObjectOf<Cat>> bs(n, e.cod);
    std::vector<MorphismOf<Cat>> lhs, rhs;
    for (std::size_t i = 1; i <= n; ++i) {
      lhs.push_back(cat.compose(e, p.projections[0]));
      rhs.push_back(cat.compose(e, p.projections[i]));
    }
    auto eqz = cat.equalizer(nary_pair(cat, bs, lhs), nary_pair(cat, bs, rhs));
    s.levels.push_back(eqz.object);
    out.inclusions.push_back(eqz.inclusion);
  }
  // coordinate map: level n → level m picking coordinates idx
  auto coord_map = [&](std::size_t n, const std::vector<std::size_t>& idx) {
    const std::size_t m = idx.size() - 1;
    std::vector<ObjectOf<Cat>> factors(m + 1, a);
    std::vector<MorphismOf<Cat>> comps;
    for (auto j : idx) comps.push_back(cat.compose(prods[n].projections[j], out.inclusions[n]));
    auto r = cat.factor_through_mono(nary_pair(cat, factors, comps), out.inclusions[m]);
    if (!r) throw EngineError("Čech nerve structure map leaves the nerve");
    return *r;
  };
  for (std::size_t n = 0; n <= depth; ++n) {
    std::vector<MorphismOf<Cat>> fs, ds;
    if (n >= 1)
      for (std::size_t i = 0; i <= n; ++i) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j <= n; ++j)
          if (j != i) idx.push_back(j);
        fs.push_back(coord_map(n, idx));
      }
    if (n < depth)
      for (std::size_t i = 0; i <= n; ++i) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j <= n; ++j) {
          idx.push_back(j);
          if (j == i) idx.push_back(j);
        }
        ds.push_back(coord_map(n, idx));
      }
    s.faces.push_back(fs);
    s.degeneracies.push_back(ds);
  }
  s.base = e.cod;
  s.augmentation = e;

  if (section) {
    auto c = cat.compose(*section, e);  // a ↦ s e a
    auto build = [&](std::size_t n, std::size_t m, std::size_t keep) {
      // level n → level m: first `keep` coordinates, then c(a_0) repeated
      std::vector<ObjectOf<Cat>> factors(m + 1, a);
      std::vector<MorphismOf<Cat>> comps;
      auto a0 = cat.compose(prods[n].projections[0], out.inclusions[n]);
      for (std::size_t j = 0; j <= m; ++j)
        comps.push_back(j < keep ? cat.compose(prods[n].projections[j], out.inclusions[n]) : cat.compose(c, a0));
      auto r = cat.factor_through_mono(nary_pair(cat, factors, comps), out.inclusions[m]);
      if (!r) throw EngineError("contraction leaves the nerve");
      return *r;
    };
    SimplicialHomotopy<Cat> h;
    for (std::size_t n = 0; n <= depth; ++n) {
      out.constant.push_back(build(n, n, 0));
      out.identity.push_back(cat.identity(s.levels[n]));
      if (n < depth) {
        std::vector<MorphismOf<Cat>> row;
        for (std::size_t j = 0; j <= n; ++j) row.push_back(build(n, n + 1, j + 1));
        h.push_back(row);
      }
    }
    out.contraction = h;
  }
  return out;
}

// ------------------------------------------------------- simplicial → chain homotopy

/// Converts 𝕙: f ≃ g (simplicial) into an approximate chain homotopy N(f) ≃ N(g) up to maxdeg.
/// The nested differences are evaluated after restricting to N_n, which keeps the D-powers small.
template <class Cat>
ApproxChainHomotopy<Cat> simplicial_to_chain_homotopy(const Workspace<Cat>& ws, const SimplicialObject<Cat>& a,
                                                      const SimplicialObject<Cat>& b, const SimplicialMap<Cat>& f,
                                                      const SimplicialMap<Cat>& g, const SimplicialHomotopy<Cat>& h,
                                                      std::size_t maxdeg) {
  const auto& cat = ws.cat;
  const std::size_t safe = std::min({a.top(), b.top(), h.size()});
  if (safe == 0 || maxdeg + 1 > safe)
    throw InsufficientTruncation("conversion to degree " + std::to_string(maxdeg) + " needs simplicial data up to level " +
                                 std::to_string(maxdeg + 1) + "; the maximal safe degree is " +
                                 std::to_string(safe == 0 ? 0 : safe - 1));
  auto ma = moore(cat, a);
  auto mb = moore(cat, b);
  ApproxChainHomotopy<Cat> H{moore_map(cat, ma, mb, f), moore_map(cat, ma, mb, g), {}};
  for (std::size_t n = 0; n <= maxdeg; ++n) {
    const auto& kappa = ma.kappa[n];
    std::vector<MorphismOf<Cat>> t;
    for (std::size_t j = 0; j <= n; ++j)
      t.push_back(ws.diff(cat.compose(b.degeneracies[n][j], cat.compose(f[n], kappa)), cat.compose(h[n][j], kappa)));
    MorphismOf<Cat> r = t[0];
    if (n >= 1) {
      r = ws.diff(t[1], t[0]);
      auto dn = ws.D(kappa.dom);
      for (std::size_t k = 2; k <= n; ++k) r = ws.diff(cat.compose(t[k], ws.sigma_pow(dn, k - 1)), r);
    }
    auto hn = cat.factor_through_mono(r, mb.kappa[n + 1]);
    if (!hn) throw VanishingCheckFailed("converted component does not land in N_" + std::to_string(n + 1) + "; is the simplicial homotopy valid?");
    H.h.push_back(*hn);
  }
  return H;
}

// --------------------------------------------------------- simplicial resolutions

template <class Cat>
struct SimplicialResolutionReport {
  bool exact = true;
  bool h0_matches = false;
  std::size_t scope = 0;
  std::string message = "ok";
  std::optional<ProjectiveResolution<Cat>> promoted;
};

template <class Cat>
SimplicialResolutionReport<Cat> validate_simplicial_resolution(const Cat& cat, const SimplicialObject<Cat>& s, i64 budget) {
  SimplicialResolutionReport<Cat> rep;
  if (!s.augmented()) {
    rep.exact = false;
    rep.message = "not augmented";
    return rep;
  }
  auto m = moore(cat, s);
  rep.scope = m.complex.top();
  const auto& aug = *s.augmentation;
  rep.h0_matches = cat.is_regular_epi(aug) &&
                   (m.complex.top() == 0 ? cat.is_mono(aug)
                                         : same_subobject(cat, cat.image(m.complex.d[1]).mono.inclusion, cat.kernel(aug).inclusion));
  for (std::size_t n = 1; n + 1 <= m.complex.top(); ++n)
    if (!cat.is_regular_epi(homology(cat, m.complex, n).dbar)) {
      rep.exact = false;
      rep.message = "Moore complex not exact at degree " + std::to_string(n);
    }
  if (!rep.h0_matches) rep.message = "H_0 differs from the augmentation target";
  if (!rep.exact || !rep.h0_matches) return rep;

  ProjectiveResolution<Cat> r;
  r.complex = m.complex;
  r.resolved = *s.base;
  r.augmentation = aug;
  for (std::size_t n = 0; n <= m.complex.top(); ++n) {
    auto w = projective_witness(cat, m.complex.objects[n], budget);
    if (w.kind == Cat::FreenessWitness::Kind::none) {
      rep.message = "normalized level " + std::to_string(n) + " has no projectivity witness; not promoted";
      return rep;
    }
    r.witnesses.push_back(w);
  }
  MorphismOf<Cat> last = aug;
  for (std::size_t n = 0; n < m.complex.top(); ++n) {
    auto k = cat.kernel(last);
    auto db = cat.factor_through_mono(m.complex.d[n + 1], k.inclusion);
    if (!db) throw EngineError("Moore differential does not land in the cycles");
    r.cycles.push_back(k);
    r.dbar.push_back(*db);
    last = m.complex.d[n + 1];
  }
  rep.promoted = r;
  return rep;
}

/// Levelwise image of a simplicial object under a functor given as callbacks.
template <class Src, class Dst, class ObjMap, class MorMap>
SimplicialObject<Dst> map_simplicial(const SimplicialObject<Src>& s, ObjMap on_obj, MorMap on_mor) {
  SimplicialObject<Dst> t;
  for (const auto& x : s.levels) t.levels.push_back(on_obj(x));
  for (const auto& row : s.faces) {
    std::vector<MorphismOf<Dst>> r;
    for (const auto& m : row) r.push_back(on_mor(m));
    t.faces.push_back(r);
  }
  for (const auto& row : s.degeneracies) {
    std::vector<MorphismOf<Dst>> r;
    for (const auto& m : row) r.push_back(on_mor(m));
    t.degeneracies.push_back(r);
  }
  if (s.base) t.base = on_obj(*s.base);
  if (s.augmentation) t.augmentation = on_mor(*s.augmentation);
  return t;
}

}  // namespace chainres
