#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace safemon {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (empty set, bad count, bad divisor).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A trace line could not be decoded into the expected record shape.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Header line is missing or carries an unsupported schema_version.
class VersionError : public Error {
 public:
  using Error::Error;
};

/// A decoded record violates an invariant of its type. `field()` names the offender.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what, std::size_t line = 0)
      : Error((line ? "line " + std::to_string(line) + ": " : std::string{}) + field + ": " + what),
        field_(std::move(field)),
        line_(line) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

class IoError : public Error {
 public:
  IoError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace safemon
