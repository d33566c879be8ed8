#pragma once

#include <string>
#include <vector>

#include "chainres/calculus/difference.hpp"
#include "chainres/chains/complex.hpp"
#include "chainres/resolutions/resolution.hpp"

namespace chainres {

/// h_n: D^{n+1}(C_n) → E_{n+1} witnessing f ≃ g.
template <class Cat>
struct ApproxChainHomotopy {
  ChainMap<Cat> f, g;
  std::vector<MorphismOf<Cat>> h;
};

struct DegreeCheck {
  std::size_t degree = 0;
  bool pass = false;
  std::string message;
};

/// Right-hand side of the defining equation in degree n.
template <class Cat>
MorphismOf<Cat> homotopy_target(const Workspace<Cat>& ws, const ApproxChainHomotopy<Cat>& H, std::size_t n) {
  const auto& cat = ws.cat;
  auto fg = ws.diff(H.f.components[n], H.g.components[n]);
  if (n == 0) return fg;
  auto lhs = cat.compose(fg, ws.sigma_pow(ws.D(H.f.source.objects[n]), n - 1));
  auto rhs = cat.compose(H.h[n - 1], ws.D(H.f.source.d[n], n));
  return ws.diff(lhs, rhs);
}

template <class Cat>
std::vector<DegreeCheck> verify_homotopy(const Workspace<Cat>& ws, const ApproxChainHomotopy<Cat>& H) {
  std::vector<DegreeCheck> out;
  const auto& cat = ws.cat;
  for (std::size_t n = 0; n < H.h.size(); ++n) {
    DegreeCheck c;
    c.degree = n;
    if (n + 1 > H.f.target.top() || n >= H.f.components.size() || n >= H.g.components.size()) {
      c.message = "degree beyond truncation";
      out.push_back(c);
      continue;
    }
    try {
      auto expected = homotopy_target(ws, H, n);
      auto actual = cat.compose(H.f.target.d[n + 1], H.h[n]);
      c.pass = cat.equal(actual, expected);
      c.message = c.pass ? "ok" : "defining equation fails";
    } catch (const EngineError& ex) {
      c.message = ex.what();
    }
    out.push_back(c);
  }
  return out;
}

inline bool all_pass(const std::vector<DegreeCheck>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

/// Builds h_0..h_maxdeg between two chain maps into a resolution: the running difference is
/// checked to vanish under d^E_n, factored through the cycles and lifted through dbar^E_n.
template <class Cat>
ApproxChainHomotopy<Cat> construct_homotopy(const Workspace<Cat>& ws, const ChainMap<Cat>& f, const ChainMap<Cat>& g,
                                            const ProjectiveResolution<Cat>& target, std::size_t maxdeg) {
  const auto& cat = ws.cat;
  if (target.top() < maxdeg + 1) throw InsufficientTruncation("target resolution must reach degree maxdeg+1");
  if (f.components.size() <= maxdeg || g.components.size() <= maxdeg) throw InsufficientTruncation("chain maps too short");
  ApproxChainHomotopy<Cat> H{f, g, {}};
  for (std::size_t n = 0; n <= maxdeg; ++n) {
    auto running = homotopy_target(ws, H, n);
    auto below = n == 0 ? target.augmentation : target.complex.d[n];
    if (!cat.is_zero(cat.compose(below, running)))
      throw VanishingCheckFailed("running difference does not vanish in degree " + std::to_string(n));
    auto into = cat.factor_through_mono(running, target.cycles[n].inclusion);
    if (!into) throw VanishingCheckFailed("running difference does not factor through the cycles in degree " + std::to_string(n));
    auto src = running.dom;
    auto wit = projective_witness(cat, src, ws.limits.budget);
    try {
      H.h.push_back(lift_through(cat, *into, target.dbar[n], wit, ws.limits.budget));
    } catch (const LiftNotFound& ex) {
      SearchVerdict tag = wit.kind == Cat::FreenessWitness::Kind::none ? wit.search : SearchVerdict::unknown;
      auto direct = cat.search_lift(*into, target.dbar[n], ws.limits.budget);
      if (direct.verdict == SearchVerdict::found) {
        H.h.push_back(*direct.map);
        continue;
      }
      if (direct.verdict == SearchVerdict::unknown) tag = SearchVerdict::unknown;
      throw DProjectivityObstruction("no lift of the running difference through dbar in degree " + std::to_string(n) + ": " + ex.what(), n, tag);
    }
  }
  return H;
}

/// h'_n = h_n∘D^n(tw_{C_n}) witnesses g ≃ f.
template <class Cat>
ApproxChainHomotopy<Cat> reverse_homotopy(const Workspace<Cat>& ws, const ApproxChainHomotopy<Cat>& H) {
  ApproxChainHomotopy<Cat> R{H.g, H.f, {}};
  for (std::size_t n = 0; n < H.h.size(); ++n)
    R.h.push_back(ws.cat.compose(H.h[n], ws.D(ws.twist(H.f.source.objects[n]), n)));
  return R;
}

/// Homotopy f∘α ≃ g∘α with components h_n∘D^{n+1}(α_n).
template <class Cat>
ApproxChainHomotopy<Cat> whisker_pre(const Workspace<Cat>& ws, const ApproxChainHomotopy<Cat>& H, const ChainMap<Cat>& alpha) {
  ApproxChainHomotopy<Cat> W{compose_maps(ws.cat, H.f, alpha), compose_maps(ws.cat, H.g, alpha), {}};
  for (std::size_t n = 0; n < H.h.size() && n < alpha.components.size(); ++n)
    W.h.push_back(ws.cat.compose(H.h[n], ws.D(alpha.components[n], n + 1)));
  return W;
}

/// Homotopy β∘f ≃ β∘g with components β_{n+1}∘h_n.
template <class Cat>
ApproxChainHomotopy<Cat> whisker_post(const Workspace<Cat>& ws, const ApproxChainHomotopy<Cat>& H, const ChainMap<Cat>& beta) {
  ApproxChainHomotopy<Cat> W{compose_maps(ws.cat, beta, H.f), compose_maps(ws.cat, beta, H.g), {}};
  for (std::size_t n = 0; n < H.h.size() && n + 1 < beta.components.size(); ++n)
    W.h.push_back(ws.cat.compose(beta.components[n + 1], H.h[n]));
  return W;
}

template <class Cat>
ApproxChainHomotopy<Cat> zero_homotopy(const Workspace<Cat>& ws, const ChainMap<Cat>& f, std::size_t maxdeg) {
  ApproxChainHomotopy<Cat> H{f, f, {}};
  for (std::size_t n = 0; n <= maxdeg && n + 1 < f.target.length(); ++n)
    H.h.push_back(ws.cat.zero(ws.D(f.source.objects[n], n + 1), f.target.objects[n + 1]));
  return H;
}

struct HomologyAgreement {
  std::size_t degree = 0;
  bool maps_equal = false;
  bool key_identity = false;
};

/// H_n(f) = H_n(g) together with dbar^E_{n+1}∘h_n∘D^{n+1}(ker d_n) = (Z_n f - Z_n g)∘ς^n_{D(Z_n)}.
template <class Cat>
std::vector<HomologyAgreement> homology_agreement(const Workspace<Cat>& ws, const ApproxChainHomotopy<Cat>& H) {
  const auto& cat = ws.cat;
  std::vector<HomologyAgreement> out;
  const std::size_t limit = std::min({H.f.source.top(), H.f.target.top(), H.h.size()});
  for (std::size_t n = 0; n < limit; ++n) {
    HomologyAgreement a;
    a.degree = n;
    auto hs = homology(cat, H.f.source, n);
    auto ht = homology(cat, H.f.target, n);
    a.maps_equal = cat.equal(induced_homology_map(cat, H.f, hs, ht), induced_homology_map(cat, H.g, hs, ht));
    auto zf = cycles_map(cat, H.f, hs, ht);
    auto zg = cycles_map(cat, H.g, hs, ht);
    auto lhs = cat.compose(ht.dbar, cat.compose(H.h[n], ws.D(hs.cycles.inclusion, n + 1)));
    auto rhs = cat.compose(ws.diff(zf, zg), ws.sigma_pow(ws.D(hs.cycles.object), n));
    a.key_identity = cat.equal(lhs, rhs);
    out.push_back(a);
  }
  return out;
}

/// φ: C → E and ψ: E → C over the identity with homotopies 1 ≃ ψφ and 1 ≃ φψ.
template <class Cat>
struct HomotopyEquivalence {
  ChainMap<Cat> phi, psi;
  ApproxChainHomotopy<Cat> on_source, on_target;
};

template <class Cat>
HomotopyEquivalence<Cat> homotopy_equivalence(const Workspace<Cat>& ws, const ProjectiveResolution<Cat>& c,
                                              const ProjectiveResolution<Cat>& e, std::size_t maxdeg,
                                              std::uint64_t tie_seed = 0) {
  const auto& cat = ws.cat;
  auto id = cat.identity(c.resolved);
  HomotopyEquivalence<Cat> eq;
  eq.phi = lift_morphism(cat, id, c, e, ws.limits.budget, tie_seed);
  eq.psi = lift_morphism(cat, id, e, c, ws.limits.budget, tie_seed ? tie_seed + 1 : 0);
  eq.on_source = construct_homotopy(ws, identity_map(cat, c.complex), compose_maps(cat, eq.psi, eq.phi), c, maxdeg);
  eq.on_target = construct_homotopy(ws, identity_map(cat, e.complex), compose_maps(cat, eq.phi, eq.psi), e, maxdeg);
  return eq;
}

}  // namespace chainres
