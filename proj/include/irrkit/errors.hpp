#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irrkit {

/// Base of every error raised by the library. The CLI maps all of these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class DegenerateProjection : public Error {
 public:
  using Error::Error;
};

class OverlapError : public Error {
 public:
  using Error::Error;
};

class UncoveredPoint : public Error {
 public:
  using Error::Error;
};

class AmbientDimError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class CorruptRecord : public Error {
 public:
  CorruptRecord(std::size_t line, const std::string& what)
      : Error("corrupt record at line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class LatticeMismatch : public Error {
 public:
  using Error::Error;
};

class CapError : public Error {
 public:
  using Error::Error;
};

class NotUnimodular : public Error {
 public:
  using Error::Error;
};

class EmptyIntersection : public Error {
 public:
  using Error::Error;
};

class UndefinedInterpolation : public Error {
 public:
  using Error::Error;
};

class BadDegree : public Error {
 public:
  using Error::Error;
};

}  // namespace irrkit
