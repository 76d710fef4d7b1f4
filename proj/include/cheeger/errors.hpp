#pragma once

#include <stdexcept>
#include <string>

namespace cheeger {

// Input polygon/shape collapses to a segment or point.
struct DegenerateShapeError : std::runtime_error {
  explicit DegenerateShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Exponent pair (N, q) outside the window where the ratio depends on the domain.
struct InvalidExponentError : std::invalid_argument {
  explicit InvalidExponentError(const std::string& what) : std::invalid_argument(what) {}
};

// Operation called outside its contract (origin not interior, overlapping union, ...).
struct PreconditionError : std::invalid_argument {
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Smoothing index n too small to certify the inclusion sandwich.
struct RefineNError : std::invalid_argument {
  explicit RefineNError(const std::string& what) : std::invalid_argument(what) {}
};

// Internal geometric construction failed (containment verification, empty LP, ...).
struct GeometryError : std::runtime_error {
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cheeger
