#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace chainres {

/// Seeded generator with portable helpers (std distributions differ across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed * 0x9E3779B97F4A7C15ULL + 0x1234567ULL) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  bool coin() { return (next() >> 17) & 1; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
  }

  /// Independent stream derived from this seed and a label.
  static Rng derive(std::uint64_t seed, std::uint64_t label) { return Rng(seed ^ (label * 0xD1B54A32D192ED03ULL)); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace chainres
