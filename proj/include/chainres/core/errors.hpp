#pragma once

#include <stdexcept>
#include <string>

namespace chainres {

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BackendMismatch : public EngineError {
 public:
  using EngineError::EngineError;
};

class ShapeMismatch : public EngineError {
 public:
  using EngineError::EngineError;
};

class InvalidPresentation : public EngineError {
 public:
  using EngineError::EngineError;
};

class LiftNotFound : public EngineError {
 public:
  using EngineError::EngineError;
};

class DimensionBlowup : public EngineError {
 public:
  using EngineError::EngineError;
};

class DegreeOutOfRange : public EngineError {
 public:
  using EngineError::EngineError;
};

class VanishingCheckFailed : public EngineError {
 public:
  using EngineError::EngineError;
};

class InsufficientTruncation : public EngineError {
 public:
  using EngineError::EngineError;
};

class FunctorNotZeroPreserving : public EngineError {
 public:
  using EngineError::EngineError;
};

class HypothesisUnverified : public EngineError {
 public:
  using EngineError::EngineError;
};

/// Outcome tag shared by obstruction errors: a search proved nonexistence, or ran out of budget.
enum class SearchVerdict { found, none, unknown };

inline const char* to_string(SearchVerdict v) {
  switch (v) {
    case SearchVerdict::found: return "found";
    case SearchVerdict::none: return "none";
    case SearchVerdict::unknown: return "unknown";
  }
  return "?";
}

/// Raised when a kernel that must be projective fails its check. The payload (the offending
/// object) is carried by the typed subclass in core/category.hpp.
class ConditionPObstruction : public EngineError {
 public:
  ConditionPObstruction(const std::string& what, SearchVerdict tag) : EngineError(what), tag_(tag) {}
  SearchVerdict tag() const { return tag_; }

 private:
  SearchVerdict tag_;
};

class DProjectivityObstruction : public EngineError {
 public:
  DProjectivityObstruction(const std::string& what, std::size_t degree, SearchVerdict tag)
      : EngineError(what), degree_(degree), tag_(tag) {}
  std::size_t degree() const { return degree_; }
  SearchVerdict tag() const { return tag_; }

 private:
  std::size_t degree_;
  SearchVerdict tag_;
};

}  // namespace chainres
