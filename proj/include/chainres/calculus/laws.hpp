#pragma once

#include <map>
#include <string>
#include <vector>

#include "chainres/calculus/difference.hpp"
#include "chainres/support/random.hpp"

namespace chainres {

namespace law {
inline constexpr const char* left_distributive = "left-distributive";
inline constexpr const char* right_distributive = "right-distributive";
inline constexpr const char* zero_detection = "zero-detection";
inline constexpr const char* minus_zero = "minus-zero";
inline constexpr const char* twist_swaps = "twist-swaps";
inline constexpr const char* sigma_regular_epi = "sigma-regular-epi";
inline constexpr const char* sigma_square = "sigma-square";
inline constexpr const char* sigma_natural = "sigma-natural";
inline constexpr const char* twist_involution = "twist-involution";
inline constexpr const char* functor_laws = "D-functor-laws";
}  // namespace law

struct LawTally {
  std::size_t checked = 0, failed = 0;
  std::string first_failure;
};

struct LawSuiteReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::map<std::string, LawTally> laws;

  bool all_pass() const {
    for (const auto& [k, v] : laws)
      if (v.failed) return false;
    return true;
  }
};

/// Checks the subtraction laws on seeded samples of objects and parallel maps.
template <class Cat>
LawSuiteReport subtraction_law_suite(const Workspace<Cat>& ws, std::size_t samples, std::uint64_t seed, std::size_t max_size = 3) {
  const Cat& cat = ws.cat;
  LawSuiteReport rep;
  rep.seed = seed;
  rep.samples = samples;
  Rng rng = Rng::derive(seed, 0x5B7);
  for (std::size_t t = 0; t < samples; ++t) {
    auto check = [&](const char* name, bool ok) {
      auto& tally = rep.laws[name];
      ++tally.checked;
      if (!ok && tally.failed++ == 0) tally.first_failure = "sample " + std::to_string(t);
    };
    auto w = cat.sample_object(rng, max_size);
    auto x = cat.sample_object(rng, max_size);
    auto y = cat.sample_object(rng, max_size);
    auto z = cat.sample_object(rng, max_size);
    auto f = cat.sample_morphism(rng, x, y);
    auto g = rng.coin() ? cat.sample_morphism(rng, x, y) : f;
    auto l = cat.sample_morphism(rng, y, z);
    auto h = cat.sample_morphism(rng, w, x);
    auto zero = cat.zero(x, y);
    auto fg = ws.diff(f, g);

    check(law::left_distributive, cat.equal(cat.compose(l, fg), ws.diff(cat.compose(l, f), cat.compose(l, g))));
    check(law::right_distributive, cat.equal(cat.compose(fg, ws.D(h)), ws.diff(cat.compose(f, h), cat.compose(g, h))));
    check(law::zero_detection, cat.is_zero(fg) == cat.equal(f, g) && cat.is_zero(ws.diff(f, f)));
    check(law::minus_zero, cat.equal(ws.diff(f, zero), cat.compose(f, ws.sigma(x))));
    check(law::twist_swaps, cat.equal(cat.compose(fg, ws.twist(x)), ws.diff(g, f)));
    check(law::sigma_regular_epi, cat.is_regular_epi(ws.sigma(x)));
    check(law::sigma_square, cat.equal(ws.sigma_pow(x, 2), ws.sigma_pow_composite(x, 2)));
    check(law::sigma_natural, cat.equal(cat.compose(f, ws.sigma(x)), cat.compose(ws.sigma(y), ws.D(f))));
    auto tw = ws.twist(x);
    check(law::twist_involution, cat.equal(cat.compose(tw, tw), cat.identity(ws.D(x))) &&
                                     cat.equal(cat.compose(ws.D(f), tw), cat.compose(ws.twist(y), ws.D(f))));
    check(law::functor_laws, cat.equal(ws.D(cat.identity(x)), cat.identity(ws.D(x))) && cat.is_zero(ws.D(zero)) &&
                                 cat.equal(ws.D(cat.compose(l, f)), cat.compose(ws.D(l), ws.D(f))));
  }
  return rep;
}

struct SigmaWitnessReport {
  std::size_t examined = 0;
  bool found = false;
  std::string description;  // object on which D(ς_X) and ς_{D(X)} differ
};

/// Looks for X with D(ς_X) ≠ ς_{D(X)}. Outcome is recorded, never asserted.
template <class Cat>
SigmaWitnessReport search_sigma_witness(const Workspace<Cat>& ws, const std::vector<ObjectOf<Cat>>& candidates) {
  SigmaWitnessReport rep;
  for (const auto& x : candidates) {
    ++rep.examined;
    if (!ws.cat.equal(ws.D(ws.sigma(x)), ws.sigma(ws.D(x)))) {
      rep.found = true;
      rep.description = ws.cat.key(x);
      return rep;
    }
  }
  return rep;
}

}  // namespace chainres
