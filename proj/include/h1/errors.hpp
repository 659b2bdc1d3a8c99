#pragma once

#include <stdexcept>
#include <string>

namespace h1 {

// Thrown when a derivative or an integrand is requested at (or too close to) a
// point where the field is singular.
class SingularPointError : public std::runtime_error {
 public:
  explicit SingularPointError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an evaluation produces NaN/Inf.
class NonFiniteError : public std::runtime_error {
 public:
  explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the two Richardson levels of a finite-difference stencil
// disagree beyond the scheme tolerance.
class StepTooCoarseError : public std::runtime_error {
 public:
  explicit StepTooCoarseError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an adaptive quadrature hits its node budget before reaching the
// requested tolerance (and the partial sums are still converging).
class QuadratureBudgetError : public std::runtime_error {
 public:
  explicit QuadratureBudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when refinement around a singular point keeps adding mass at a
// non-decreasing rate, i.e. the integral diverges.
class NonIntegrableSingularityError : public std::runtime_error {
 public:
  explicit NonIntegrableSingularityError(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown for domains whose measure degenerates (empty boxes, r0 >= r1 annuli).
class ZeroVolumeRegionError : public std::runtime_error {
 public:
  explicit ZeroVolumeRegionError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a weighted perimeter evaluates to <= 0 within tolerance.
class DegeneratePerimeterError : public std::runtime_error {
 public:
  explicit DegeneratePerimeterError(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown on malformed configuration input (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a factory receives an enumerator it does not know.
class UnknownKindError : public std::runtime_error {
 public:
  explicit UnknownKindError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a check's hypotheses are not met (e.g. the half-half volume
// condition of the relative isoperimetric test).
class NotApplicableError : public std::runtime_error {
 public:
  explicit NotApplicableError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace h1
