#pragma once

#include <stdexcept>
#include <string>

namespace lezopt {

/// Input data violates a documented invariant. The message names the
/// offending field.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Shape or dimension mismatch between containers that must agree.
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal consistency failure while stepping the model (negative stock,
/// non-finite values). Never expected on validated inputs.
class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lezopt
