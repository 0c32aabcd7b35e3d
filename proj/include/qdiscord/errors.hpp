#pragma once

#include <stdexcept>
#include <string>

namespace qdiscord {

// Every failure raised by the library derives from Error. The category tells
// the command-line front end which exit status to report.
enum class ErrorCategory {
  validation,  // bad arguments, shapes, or unsupported requests
  numeric,     // a numeric-domain failure (log of a non-positive, singularity)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

// Wrong shapes or incompatible dimensions.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorCategory::validation, what) {}
};

// Argument outside of its documented range.
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what)
      : Error(ErrorCategory::validation, what) {}
};

// Input violates a structural invariant (e.g. a non-Hermitian matrix).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorCategory::validation, what) {}
};

// Matrix or correlator set does not describe a physical state.
class NotAStateError : public Error {
 public:
  explicit NotAStateError(const std::string& what)
      : Error(ErrorCategory::validation, what) {}
};

// The request is well-formed but outside what this library handles.
class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what)
      : Error(ErrorCategory::validation, what) {}
};

// No closed form exists for the requested regime.
class NotProvidedError : public Error {
 public:
  explicit NotProvidedError(const std::string& what)
      : Error(ErrorCategory::validation, what) {}
};

// A precondition of an analytic shortcut does not hold; the caller must use
// the numeric route instead.
class ConditionViolatedError : public Error {
 public:
  explicit ConditionViolatedError(const std::string& what)
      : Error(ErrorCategory::validation, what) {}
};

// Problem too large for dense methods.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what)
      : Error(ErrorCategory::validation, what) {}
};

// Logarithm or square root of an invalid argument, vanishing denominators.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCategory::numeric, what) {}
};

class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& what)
      : Error(ErrorCategory::numeric, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what)
      : Error(ErrorCategory::numeric, what) {}
};

// Requested quantity is below the representable precision of the arithmetic.
class UnderflowError : public Error {
 public:
  explicit UnderflowError(const std::string& what)
      : Error(ErrorCategory::numeric, what) {}
};

}  // namespace qdiscord
