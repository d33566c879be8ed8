#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainres/derived/functor.hpp"
#include "chainres/homotopy/homotopy.hpp"
#include "chainres/resolutions/horseshoe.hpp"
#include "chainres/resolutions/resolution.hpp"
#include "chainres/simplicial/simplicial.hpp"

namespace chainres {

/// "iso-certified" (fingerprints equal and an explicit iso found), "uncertified-iso" or "mismatch".
template <class Cat>
std::string iso_verdict(const Cat& cat, const ObjectOf<Cat>& x, const ObjectOf<Cat>& y, i64 budget) {
  if (!(cat.fingerprint(x) == cat.fingerprint(y))) return "mismatch";
  if (cat.size(x) <= 6 && cat.size(y) <= 6 && cat.certify_iso(x, y, budget).verdict == SearchVerdict::found) return "iso-certified";
  return "uncertified-iso";
}

// ------------------------------------------------------------------------- derive

template <class Src, class Dst>
struct DerivedResult {
  std::string functor;
  ObjectOf<Src> object;
  std::uint64_t seed = 0;
  bool exploratory = false;                 // F lacked the verified hypotheses
  ProjectiveResolution<Src> resolution;
  ChainComplex<Dst> image;                  // F(C(X))
  std::vector<HomologyCertificate<Dst>> homology;
  std::vector<Fingerprint> values;          // L_0..L_{N-1}
  std::vector<bool> proper;                 // image complex proper at n

  const ObjectOf<Dst>& value(std::size_t n) const { return homology.at(n).projection.cod; }
};

template <class Src, class Dst>
bool derive_hypotheses(const FunctorPropertyReport& rep) {
  bool bundle_a = rep.verified(property::subtractive) && rep.verified(property::preserves_proper);
  bool bundle_b = rep.verified(property::protoadditive) && rep.verified(property::sequentially_right_exact);
  return bundle_a || bundle_b;
}

/// L_n(F)(X) = H_n(F(C(X))) for n < maxdeg from a seeded resolution of length maxdeg.
template <class Src, class Dst>
DerivedResult<Src, Dst> derive(const FunctorSpec<Src, Dst>& F, const ObjectOf<Src>& x, std::size_t maxdeg, std::uint64_t seed,
                               const FunctorPropertyReport* verified = nullptr, const Limits& limits = {}) {
  if (maxdeg == 0) throw DegreeOutOfRange("derive needs max degree at least 1");
  DerivedResult<Src, Dst> r;
  r.functor = F.name;
  r.object = x;
  r.seed = seed;
  r.exploratory = verified == nullptr || !derive_hypotheses<Src, Dst>(*verified);
  r.resolution = build_resolution(F.source, x, maxdeg, seed, limits);
  r.image = apply_functor(F, r.resolution.complex);
  auto flags = properness_and_exactness(F.target, r.image);
  for (std::size_t n = 0; n < maxdeg; ++n) {
    r.homology.push_back(homology(F.target, r.image, n));
    r.values.push_back(F.target.fingerprint(r.homology.back().object()));
    r.proper.push_back(flags[n].proper);
  }
  return r;
}

/// L_n(F)(x): the induced map between derived values, via a lifting of x.
template <class Src, class Dst>
MorphismOf<Dst> derived_on_morphism(const FunctorSpec<Src, Dst>& F, const MorphismOf<Src>& x, const DerivedResult<Src, Dst>& a,
                                    const DerivedResult<Src, Dst>& b, std::size_t n, i64 budget = 1'000'000) {
  auto lift = lift_morphism(F.source, x, a.resolution, b.resolution, budget);
  return induced_homology_map(F.target, apply_functor(F, lift), a.homology.at(n), b.homology.at(n));
}

// ---------------------------------------------------------- resolution independence

struct IndependenceReport {
  std::string verdict;                          // certified | fingerprint-equal (uncertified) | MISMATCH
  std::vector<std::uint64_t> seeds;
  std::vector<std::vector<Fingerprint>> values; // per seed
  std::vector<std::string> notes;
};

/// Compares L_n across seeds; in additive backends with an additive functor the homotopy
/// equivalence between the resolutions is pushed through F and checked on homology.
template <class Src, class Dst>
IndependenceReport resolution_independence(const FunctorSpec<Src, Dst>& F, const ObjectOf<Src>& x, std::size_t maxdeg,
                                           const std::vector<std::uint64_t>& seeds, const Limits& limits = {}) {
  IndependenceReport rep;
  rep.seeds = seeds;
  if (seeds.size() < 2) throw ShapeMismatch("resolution independence needs at least two seeds");
  std::vector<DerivedResult<Src, Dst>> runs;
  for (auto s : seeds) {
    runs.push_back(derive(F, x, maxdeg, s, nullptr, limits));
    rep.values.push_back(runs.back().values);
  }
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].values != runs[0].values) {
      rep.verdict = "MISMATCH";
      rep.notes.push_back("seed " + std::to_string(seeds[i]) + " disagrees with seed " + std::to_string(seeds[0]));
      return rep;
    }
  rep.verdict = "fingerprint-equal (uncertified)";
  if constexpr (Src::additive && Dst::additive) {
    if (maxdeg < 2) {
      rep.notes.push_back("certification needs max degree at least 2");
      return rep;
    }
    bool all = true;
    try {
      Workspace<Src> ws(F.source, limits);
      Workspace<Dst> wt(F.target, limits);
      for (std::size_t i = 1; i < runs.size(); ++i) {
        auto eq = homotopy_equivalence(ws, runs[0].resolution, runs[i].resolution, maxdeg - 1, seeds[i]);
        // D is the identity on objects in additive backends, so F carries homotopies componentwise
        for (const auto* h : {&eq.on_source, &eq.on_target}) {
          ApproxChainHomotopy<Dst> fh{apply_functor(F, h->f), apply_functor(F, h->g), {}};
          for (const auto& c : h->h) fh.h.push_back(F(c));
          if (!all_pass(verify_homotopy(wt, fh))) all = false;
          for (const auto& a : homology_agreement(wt, fh))
            if (!a.maps_equal) all = false;
        }
      }
    } catch (const EngineError& ex) {
      all = false;
      rep.notes.push_back(std::string("homotopy construction failed: ") + ex.what());
    }
    if (all) rep.verdict = "certified";
  } else {
    rep.notes.push_back("non-additive backend: fingerprints only");
  }
  return rep;
}

// ---------------------------------------------------------------- long exact sequence

template <class Dst>
struct LesNode {
  std::string label;        // e.g. "L2(K)"
  std::size_t degree = 0;
  ObjectOf<Dst> object;
  Fingerprint fingerprint;
  bool checked = false;
  bool exact = false;
};

template <class Dst>
struct LongExactReport {
  std::vector<LesNode<Dst>> nodes;          // descending: L_N(K), L_N(X), L_N(Y), L_{N-1}(K), ...
  std::vector<MorphismOf<Dst>> maps;        // maps[i]: nodes[i] → nodes[i+1]
  std::vector<MorphismOf<Dst>> connecting;  // δ_n: L_n(Y) → L_{n-1}(K), indexed by n-1
  bool composites_zero = true;
  bool all_exact = true;
  bool tail_surjective = false;             // L_0(X) → L_0(Y) → 0
  bool zero_term_matches_functor = false;   // L_0 ≅ F on all three objects
};

template <class Src, class Dst>
void require_les_hypotheses(const FunctorPropertyReport& rep) {
  for (const char* p : {property::sequentially_right_exact, property::preserves_protosplit_monos, property::preserves_coproducts})
    if (!rep.verified(p)) throw HypothesisUnverified(std::string("long exact sequence needs a verified '") + p + "' flag");
}

/// Applies F to the Horseshoe of the sequence and builds δ_n by the snake construction:
/// cycle z ↦ d^A(s(z)), corestricted to the left complex and projected to homology.
template <class Src, class Dst>
LongExactReport<Dst> long_exact_sequence(const FunctorSpec<Src, Dst>& F, const ShortExactSequence<Src>& ses, std::size_t maxdeg,
                                         const FunctorPropertyReport& verified, std::uint64_t seed = 0, const Limits& limits = {}) {
  require_les_hypotheses<Src, Dst>(verified);
  const Src& S = F.source;
  const Dst& T = F.target;
  const std::size_t top = maxdeg + 2;  // nodes checked through degree maxdeg
  auto right = build_resolution(S, ses.f.cod, top, seed, limits);
  auto hs = horseshoe(S, ses, right, top, limits.budget);
  auto fa = apply_functor(F, hs.alpha);
  auto fb = apply_functor(F, hs.beta);
  std::vector<MorphismOf<Dst>> fsec;
  for (const auto& s : hs.sections) fsec.push_back(F(s));
  const auto& ck = fa.source;
  const auto& ca = fa.target;
  const auto& ce = fb.target;

  std::vector<HomologyCertificate<Dst>> hk, hx, hy;
  for (std::size_t n = 0; n < top; ++n) {
    hk.push_back(homology(T, ck, n));
    hx.push_back(homology(T, ca, n));
    hy.push_back(homology(T, ce, n));
  }
  LongExactReport<Dst> rep;
  for (std::size_t n = 1; n < top; ++n) {
    auto lifted = T.compose(ca.d[n], T.compose(fsec[n], hy[n].cycles.inclusion));
    auto into_left = T.factor_through_mono(lifted, fa.components[n - 1]);
    if (!into_left) throw EngineError("snake: boundary of the lifted cycle does not come from the kernel");
    auto into_cycles = T.factor_through_mono(*into_left, hk[n - 1].cycles.inclusion);
    if (!into_cycles) throw EngineError("snake: corestricted boundary is not a cycle");
    auto delta = T.factor_through_epi(T.compose(hk[n - 1].projection, *into_cycles), hy[n].projection);
    if (!delta) throw EngineError("snake: connecting map does not descend to homology");
    rep.connecting.push_back(*delta);
  }

  auto node = [&](const std::string& which, std::size_t n, const ObjectOf<Dst>& obj) {
    LesNode<Dst> nd;
    nd.label = "L" + std::to_string(n) + "(" + which + ")";
    nd.degree = n;
    nd.object = obj;
    nd.fingerprint = T.fingerprint(obj);
    return nd;
  };
  for (std::size_t n = top; n-- > 0;) {
    rep.nodes.push_back(node("K", n, hk[n].object()));
    rep.nodes.push_back(node("X", n, hx[n].object()));
    rep.nodes.push_back(node("Y", n, hy[n].object()));
    rep.maps.push_back(induced_homology_map(T, fa, hk[n], hx[n]));
    rep.maps.push_back(induced_homology_map(T, fb, hx[n], hy[n]));
    if (n >= 1) rep.maps.push_back(rep.connecting[n - 1]);
  }
  for (std::size_t i = 0; i + 1 < rep.maps.size(); ++i)
    if (!T.is_zero(T.compose(rep.maps[i + 1], rep.maps[i]))) rep.composites_zero = false;
  // interior nodes: image of the incoming map equals the kernel of the outgoing one
  for (std::size_t i = 1; i < rep.nodes.size(); ++i) {
    auto& nd = rep.nodes[i];
    if (nd.degree > maxdeg) continue;
    const auto& in = rep.maps[i - 1];
    nd.checked = true;
    if (i < rep.maps.size()) {
      nd.exact = same_subobject(T, T.image(in).mono.inclusion, T.kernel(rep.maps[i]).inclusion);
    } else {
      nd.exact = T.is_regular_epi(in);
      rep.tail_surjective = nd.exact;
    }
    if (!nd.exact) rep.all_exact = false;
  }
  rep.zero_term_matches_functor = T.fingerprint(hk[0].object()) == T.fingerprint(F(ses.k.dom)) &&
                                  T.fingerprint(hx[0].object()) == T.fingerprint(F(ses.k.cod)) &&
                                  T.fingerprint(hy[0].object()) == T.fingerprint(F(ses.f.cod));
  return rep;
}

// ---------------------------------------------------------------------- syzygy shift

struct ShiftCheck {
  std::size_t degree = 0;
  Fingerprint shifted, syzygy;
  bool equal = false;
};

/// L_{n+1}(F)(X) against L_n(F)(Ω X) for 1 ≤ n ≤ maxdeg−2.
template <class Src, class Dst>
std::vector<ShiftCheck> syzygy_shift_check(const FunctorSpec<Src, Dst>& F, const ObjectOf<Src>& x, std::size_t maxdeg,
                                           std::uint64_t seed = 0, const Limits& limits = {}) {
  std::vector<ShiftCheck> out;
  if (maxdeg < 3) return out;
  auto omega = syzygy(F.source, x);
  auto lx = derive(F, x, maxdeg, seed, nullptr, limits);
  auto lo = derive(F, omega.object, maxdeg - 1, seed, nullptr, limits);
  for (std::size_t n = 1; n + 2 <= maxdeg; ++n) {
    ShiftCheck c;
    c.degree = n;
    c.shifted = lx.values[n + 1];
    c.syzygy = lo.values[n];
    c.equal = c.shifted == c.syzygy;
    out.push_back(c);
  }
  return out;
}

// ------------------------------------------------------------------ Condition (P)

template <class Cat>
struct ConditionPCase {
  ObjectOf<Cat> middle;
  ShortExactSequence<Cat> ses;                 // k: K → P, f: P → Y, section
  typename Cat::FreenessWitness witness;       // of the kernel
  typename Cat::Search certificate;            // section search on the kernel's cover
};

template <class Cat>
struct ConditionPReport {
  std::string verdict;  // holds-on-samples | counterexample | inconclusive
  std::size_t samples = 0, projective = 0, certified_none = 0, undecided = 0;
  std::optional<ConditionPCase<Cat>> counterexample;
};

namespace detail {

/// A split epi out of a free object together with its section.
inline ShortExactSequence<ModCategory> sample_free_split(const ModCategory& cat, Rng& rng) {
  using intlinalg::IntMat;
  auto n = static_cast<std::size_t>(rng.uniform(1, 3));
  auto m = static_cast<std::size_t>(rng.uniform(0, static_cast<i64>(n)));
  auto p = cat.free_object(n);
  auto y = cat.free_object(m);
  const i64 r = cat.ring_modulus();
  auto entry = [&] { return r == 0 ? rng.uniform(-2, 2) : rng.uniform(0, r - 1); };
  // f = [I | R] and s = [I ; 0], then a unitriangular change of basis on P
  IntMat f(m, n, 0), s(n, m, 0), u = intlinalg::identity(n), uinv = intlinalg::identity(n);
  for (std::size_t i = 0; i < m; ++i) {
    f(i, i) = 1;
    s(i, i) = 1;
    for (std::size_t j = m; j < n; ++j) f(i, j) = entry();
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) u(i, j) = entry();
  // inverse of a unitriangular matrix by back substitution
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i-- > 0;) {
      i64 acc = 0;
      for (std::size_t k = i + 1; k <= j; ++k) acc = checked_add(acc, checked_mul(u(i, k), uinv(k, j)));
      uinv(i, j) = -acc;
    }
  auto fm = cat.make(p, y, intlinalg::mul(f, uinv));
  auto sm = cat.make(y, p, intlinalg::mul(u, s));
  return {cat.kernel(fm).inclusion, fm, sm};
}

template <class Field>
ShortExactSequence<Lie2Category<Field>> sample_free_split(const Lie2Category<Field>& cat, Rng& rng) {
  using L = Lie2Category<Field>;
  const auto& k = cat.field();
  auto scalar = [&] { return k.finite() ? k.element(rng.uniform(0, k.order() - 1)) : k.from_int(rng.uniform(-2, 2)); };
  const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
  auto p = cat.free_object(n);
  std::vector<typename L::Vec> images, sec;
  typename L::Object y;
  if (n == 3 || rng.coin()) {
    // onto F(n-1): generators x_i ↦ y_i, the last one to a random combination
    y = cat.free_object(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      auto v = linalg::zero_vec(k, y.size());
      if (i + 1 < n) v[y.data().ab_positions[i]] = k.one();
      else
        for (std::size_t j = 0; j + 1 < n; ++j) v[y.data().ab_positions[j]] = scalar();
      images.push_back(v);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      auto v = linalg::zero_vec(k, p.size());
      v[p.data().ab_positions[i]] = k.one();
      sec.push_back(v);
    }
  } else {
    // onto A1 by a nonzero functional on generators
    y = cat.abelian(1);
    std::size_t pivot = static_cast<std::size_t>(rng.uniform(0, static_cast<i64>(n) - 1));
    for (std::size_t i = 0; i < n; ++i) {
      auto v = linalg::zero_vec(k, 1);
      v[0] = i == pivot ? k.one() : scalar();
      images.push_back(v);
    }
    auto v = linalg::zero_vec(k, p.size());
    v[p.data().ab_positions[pivot]] = k.one();
    sec.push_back(v);
  }
  auto f = cat.extend(p, y, images);
  auto s = cat.extend(y, p, sec);
  if (!f || !s) throw EngineError("condition (P) sampler produced an invalid map");
  return {cat.kernel(*f).inclusion, *f, *s};
}

}  // namespace detail

/// Samples split epis with free middle object and tests whether their kernels are projective.
template <class Cat>
ConditionPReport<Cat> condition_p_probe(const Cat& cat, std::size_t samples, std::uint64_t seed, i64 budget) {
  ConditionPReport<Cat> rep;
  rep.samples = samples;
  if (budget <= 0) {
    rep.verdict = "inconclusive";
    return rep;
  }
  Rng rng = Rng::derive(seed, 0xC0D);
  for (std::size_t t = 0; t < samples; ++t) {
    auto ses = detail::sample_free_split(cat, rng);
    auto w = projective_witness(cat, ses.k.dom, budget);
    if (w.kind != Cat::FreenessWitness::Kind::none) {
      ++rep.projective;
      continue;
    }
    if (w.search == SearchVerdict::none) {
      ++rep.certified_none;
      if (!rep.counterexample) {
        auto cover = cat.projective_cover(ses.k.dom);
        rep.counterexample = ConditionPCase<Cat>{ses.f.dom, ses, w, cat.find_section(cover.epi, budget)};
      }
    } else {
      ++rep.undecided;
    }
  }
  rep.verdict = rep.counterexample ? "counterexample" : (rep.undecided ? "inconclusive" : "holds-on-samples");
  return rep;
}

/// Re-validates a counterexample from scratch.
template <class Cat>
bool replay_counterexample(const Cat& cat, const ConditionPCase<Cat>& c, i64 budget) {
  if (validate_ses(cat, c.ses) != "ok" || !c.ses.section) return false;
  if (!cat.is_free_presentation(c.ses.f.dom)) return false;
  if (cat.is_free_presentation(c.ses.k.dom)) return false;
  auto cover = cat.projective_cover(c.ses.k.dom);
  auto s = cat.find_section(cover.epi, budget);
  return s.verdict == SearchVerdict::none && s.explored == s.space;
}

// --------------------------------------------------------- simplicial vs chain

struct ComparisonRow {
  std::size_t degree = 0;
  Fingerprint levelwise, normalized, chain;  // H(N(F S)), H(F(N S)), H(F(C))
  bool agree = false;
};

/// Compares the three homologies for n ≤ maxdeg; S must be an augmented simplicial resolution
/// of the object resolved by `chain`.
template <class Src, class Dst>
std::vector<ComparisonRow> simplicial_vs_chain_compare(const FunctorSpec<Src, Dst>& F, const SimplicialObject<Src>& s,
                                                       const ProjectiveResolution<Src>& chain, std::size_t maxdeg) {
  const Dst& T = F.target;
  auto fs = map_simplicial<Src, Dst>(s, F.on_object, F.on_morphism);
  auto n_fs = moore(T, fs).complex;
  auto f_ns = apply_functor(F, moore(F.source, s).complex);
  auto f_c = apply_functor(F, chain.complex);
  std::vector<ComparisonRow> out;
  for (std::size_t n = 0; n <= maxdeg; ++n) {
    if (n + 1 > n_fs.top() || n + 1 > f_c.top()) throw InsufficientTruncation("comparison degree beyond the truncation");
    ComparisonRow r;
    r.degree = n;
    r.levelwise = T.fingerprint(homology(T, n_fs, n).object());
    r.normalized = T.fingerprint(homology(T, f_ns, n).object());
    r.chain = T.fingerprint(homology(T, f_c, n).object());
    r.agree = r.levelwise == r.normalized && r.normalized == r.chain;
    out.push_back(r);
  }
  return out;
}

}  // namespace chainres
