#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

#include "chainres/support/arith.hpp"

namespace chainres {

/// Z/p with canonical residues in [0, p).
struct PrimeField {
  using value_type = i64;
  i64 p = 2;

  PrimeField() = default;
  explicit PrimeField(i64 prime) : p(prime) {
    if (!is_prime(prime)) throw std::invalid_argument("modulus is not prime: " + std::to_string(prime));
  }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(i64 v) const { return reduce(v, p); }
  value_type add(value_type a, value_type b) const { return (a + b) % p; }
  value_type sub(value_type a, value_type b) const { return reduce(a - b, p); }
  value_type mul(value_type a, value_type b) const { return static_cast<i64>((static_cast<__int128>(a) * b) % p); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type inv(value_type a) const {
    i64 r;
    if (!mod_inverse(a, p, r)) throw std::domain_error("division by zero in prime field");
    return r;
  }
  bool is_zero(value_type a) const { return a == 0; }

  bool finite() const { return true; }
  i64 order() const { return p; }
  /// i-th element in the enumeration order used by bounded searches.
  value_type element(i64 i) const { return reduce(i, p); }

  std::string to_string(value_type a) const { return std::to_string(a); }
  value_type parse(const std::string& s) const;

  std::string kind() const { return "fp"; }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p == b.p; }
};

using Rational = boost::multiprecision::cpp_rational;

/// Exact rationals.
struct RationalField {
  using value_type = Rational;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(i64 v) const { return Rational(v); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw std::domain_error("division by zero in rational field");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return a == 0; }

  bool finite() const { return false; }
  i64 order() const { return 0; }
  /// Enumeration 0, 1, -1, 2, -2, ... (never exhaustive).
  value_type element(i64 i) const { return Rational(i % 2 == 1 ? (i + 1) / 2 : -(i / 2)); }

  std::string to_string(const value_type& a) const {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(a) == 1) return numerator(a).str();
    return numerator(a).str() + "/" + denominator(a).str();
  }
  value_type parse(const std::string& s) const {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in " + s);
    return Rational(num, den);
  }

  std::string kind() const { return "q"; }
  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

inline PrimeField::value_type PrimeField::parse(const std::string& s) const {
  auto slash = s.find('/');
  if (slash == std::string::npos) return from_int(std::stoll(s));
  return mul(from_int(std::stoll(s.substr(0, slash))), inv(from_int(std::stoll(s.substr(slash + 1)))));
}

}  // namespace chainres
