#pragma once

#include <stdexcept>
#include <string>

namespace blackwell {

// Base for all library errors; subcommands map these to exit code 1.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Geometry.
struct EmptySetError : Error {
  explicit EmptySetError(const std::string& what) : Error(what) {}
};
struct NonConvexSetError : Error {
  explicit NonConvexSetError(const std::string& what) : Error(what) {}
};

// Game / actions.
struct KindMismatchError : Error {
  explicit KindMismatchError(const std::string& what) : Error(what) {}
};
struct IndexOutOfRangeError : Error {
  explicit IndexOutOfRangeError(const std::string& what) : Error(what) {}
};

// LP: simplex pivot budget exhausted without convergence.
struct CycleLimitError : Error {
  explicit CycleLimitError(const std::string& what) : Error(what) {}
};

// Approach.
struct DegenerateDirectionError : Error {
  explicit DegenerateDirectionError(const std::string& what) : Error(what) {}
};

// Avoid.
struct NonPositiveInputError : Error {
  explicit NonPositiveInputError(const std::string& what) : Error(what) {}
};
struct DriveOverrunError : Error {
  explicit DriveOverrunError(const std::string& what) : Error(what) {}
};

// Scenario / CLI input handling.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(what) {}
};

}  // namespace blackwell
