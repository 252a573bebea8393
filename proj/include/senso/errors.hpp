#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace senso {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a function (e.g. age below the inclusion bound).
class DomainError : public Error {
 public:
  using Error::Error;
};

// One or more fields failed validation. Every failing field is listed.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> fields);
  const std::vector<std::string>& fields() const noexcept { return fields_; }

 private:
  std::vector<std::string> fields_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class IncompleteTaskError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SchemaVersionError : public Error {
 public:
  SchemaVersionError(int found, int expected);
  int found() const noexcept { return found_; }

 private:
  int found_;
};

// Input frames went backwards in time.
class StreamError : public Error {
 public:
  StreamError(const std::string& what, std::size_t index);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class UnsupportedSizeError : public Error {
 public:
  using Error::Error;
};

class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

}  // namespace senso
