#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cgvv {

struct SourceLoc {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;

  bool operator==(const SourceLoc&) const = default;
};

/// Base of every error raised by the library. `code()` is a stable,
/// kebab-case identifier that callers (and the diagnostics renderer) may
/// switch on.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class OntologyError : public Error {
 public:
  OntologyError(std::string code, const std::string& message, std::string subject = {})
      : Error(std::move(code), message), subject_(std::move(subject)) {}

  /// Name of the declaration at fault, when there is one.
  const std::string& subject() const noexcept { return subject_; }

 private:
  std::string subject_;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

class ProjectionError : public Error {
 public:
  using Error::Error;
};

class ReasoningError : public Error {
 public:
  using Error::Error;
};

class PropertyError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

/// Raised by the text front ends. Carries the source position.
class ParseError : public Error {
 public:
  ParseError(std::string code, const std::string& message, SourceLoc loc)
      : Error(std::move(code), message), loc_(std::move(loc)) {}

  const SourceLoc& location() const noexcept { return loc_; }

 private:
  SourceLoc loc_;
};

}  // namespace cgvv
