#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chainres/core/errors.hpp"
#include "chainres/support/arith.hpp"

namespace chainres {

/// Resource limits shared by every construction.
struct Limits {
  std::size_t dim_cap = 512;     // largest object size (dimension or generator count)
  i64 budget = 1'000'000;        // candidates a bounded search may enumerate
  std::size_t homotopy_degree = 2;
};

enum class Normality { normal, plain, unknown };

inline const char* to_string(Normality n) {
  switch (n) {
    case Normality::normal: return "normal";
    case Normality::plain: return "plain";
    case Normality::unknown: return "unknown";
  }
  return "?";
}

template <class Obj, class Mor>
struct BasicSubobject {
  Obj object;
  Mor inclusion;
  Normality normality = Normality::unknown;
};

template <class Obj, class Mor>
struct BasicImage {
  Mor epi;
  BasicSubobject<Obj, Mor> mono;
};

template <class Obj, class Mor>
struct BasicCover {
  Obj object;          // free object on `generators` generators
  Mor epi;             // regular epi onto the covered object
  std::size_t generators = 0;
};

/// Result of a bounded or exact search (sections, lifts, isomorphisms).
template <class Mor>
struct SearchResult {
  SearchVerdict verdict = SearchVerdict::unknown;
  std::optional<Mor> map;
  i64 explored = 0;      // candidates examined
  i64 space = -1;        // size of the candidate space; -1 when infinite or not enumerated
  std::string method;    // "linear-solve", "enumeration", ...
};

/// How an object is known to be projective.
template <class Obj, class Mor>
struct BasicFreenessWitness {
  enum class Kind { free, retract, none };
  Kind kind = Kind::none;
  std::size_t generators = 0;       // free: generator count; retract: generators of the ambient free object
  std::optional<Obj> free_object;   // retract only
  std::optional<Mor> retraction;    // free_object -> witnessed object
  std::optional<Mor> section;       // witnessed object -> free_object
  SearchVerdict search = SearchVerdict::found;  // for none: none (certified) or unknown (budget)

  static BasicFreenessWitness free(std::size_t n) {
    BasicFreenessWitness w;
    w.kind = Kind::free;
    w.generators = n;
    return w;
  }
};

/// Canonical isomorphism invariants; the comparison currency across pipelines.
struct Fingerprint {
  std::string kind;            // "invariant-factors" or "lie2-profile"
  std::vector<i64> values;

  bool is_zero() const { return values.empty() || (kind == "lie2-profile" && values.front() == 0); }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
    return s + "}";
  }
  friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
    return a.kind == b.kind && a.values == b.values;
  }
};

}  // namespace chainres
