#pragma once

#include <string>

#include "chainres/core/errors.hpp"
#include "chainres/support/arith.hpp"

namespace chainres {

/// Coefficient ring of a backend.
struct CoefficientDomain {
  enum class Kind { rationals, prime_field, residue_ring, integers };
  Kind kind = Kind::rationals;
  i64 modulus = 0;  // p or m; 0 for rationals and integers

  static CoefficientDomain rationals() { return {Kind::rationals, 0}; }
  static CoefficientDomain integers() { return {Kind::integers, 0}; }
  static CoefficientDomain prime_field(i64 p) {
    if (!is_prime(p)) throw InvalidPresentation("prime field modulus must be prime, got " + std::to_string(p));
    return {Kind::prime_field, p};
  }
  static CoefficientDomain residue_ring(i64 m) {
    if (m < 2) throw InvalidPresentation("residue ring modulus must be at least 2, got " + std::to_string(m));
    return {Kind::residue_ring, m};
  }

  /// Parses "q", "z", "fp:<p>", "zm:<m>".
  static CoefficientDomain parse(const std::string& s) {
    if (s == "q") return rationals();
    if (s == "z") return integers();
    auto colon = s.find(':');
    if (colon == std::string::npos) throw InvalidPresentation("unrecognized domain '" + s + "'");
    std::string head = s.substr(0, colon);
    i64 value = 0;
    try {
      value = std::stoll(s.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidPresentation("bad modulus in domain '" + s + "'");
    }
    if (head == "fp") return prime_field(value);
    if (head == "zm") return residue_ring(value);
    throw InvalidPresentation("unrecognized domain '" + s + "'");
  }

  std::string kind_name() const {
    switch (kind) {
      case Kind::rationals: return "q";
      case Kind::prime_field: return "fp";
      case Kind::residue_ring: return "zm";
      case Kind::integers: return "z";
    }
    return "?";
  }

  std::string to_string() const {
    if (kind == Kind::rationals || kind == Kind::integers) return kind_name();
    return kind_name() + ":" + std::to_string(modulus);
  }

  friend bool operator==(const CoefficientDomain& a, const CoefficientDomain& b) {
    return a.kind == b.kind && a.modulus == b.modulus;
  }
};

}  // namespace chainres
