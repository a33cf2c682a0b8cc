#pragma once

#include <stdexcept>
#include <string>

namespace respmon {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric input outside its documented domain.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Malformed document or stream (KB files, event logs, configs).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally valid document that violates a semantic invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Combining fully contradictory evidence (+1 with -1) has no defined result.
class DegenerateEvidenceError : public Error {
 public:
  using Error::Error;
};

class EmptyPremiseError : public Error {
 public:
  using Error::Error;
};

}  // namespace respmon
