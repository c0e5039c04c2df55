#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wtw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Pajek file declaring both `*Arcs` and `*Edges`.
class MixedGraphError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Input with no data rows at all.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// Country or node not present in the container it was looked up in.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Out-of-domain numeric parameter (threshold, size bound, Jaccard floor).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Invalid synthetic scenario description.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wtw
