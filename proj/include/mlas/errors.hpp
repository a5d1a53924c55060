#pragma once

#include <stdexcept>
#include <string>

namespace mlas {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed token in a text input; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Input is readable but breaks a declared layout contract (count mismatch,
// trailing data, missing header).
class FormatError : public Error {
 public:
  using Error::Error;
};

// A value violates a domain invariant (coordinate outside the unit square,
// duplicate point, bad parameter).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConnectivityError : public Error {
 public:
  using Error::Error;
};

// A structural tree move that would break the spanning-tree invariants.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class SelectionError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace mlas
