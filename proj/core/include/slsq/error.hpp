#pragma once

#include <stdexcept>
#include <string>

namespace slsq {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Design file text does not follow the file format.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

/// A structurally well-formed input violates a design invariant
/// (resolvability, latinization, concurrence class, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// The design lies outside the latinized k = s class with concurrences
/// differing by at most one, so the dual-design algebra does not apply.
class OutsideClassError : public ValidationError {
 public:
  explicit OutsideClassError(const std::string& what) : ValidationError(what) {}
};

/// Parameters are degenerate or outside a supported/tabulated range.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// A matrix that must be inverted is numerically singular.
class SingularError : public Error {
 public:
  explicit SingularError(const std::string& what) : Error(what) {}
};

}  // namespace slsq
