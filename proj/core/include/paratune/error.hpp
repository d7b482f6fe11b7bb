#pragma once

#include <stdexcept>
#include <string>

namespace paratune {

// Base of every error raised on bad input data or configuration. The CLI maps
// these to exit status 1; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input bytes are not valid UTF-8 (or contain a stray line break).
class DecodeError : public Error {
 public:
  using Error::Error;
};

// A structured file (n-best list, ratings, manifest) violates its format.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Parsed values are outside their allowed domain.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Corpora that must be parallel have different lengths.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input that cannot be processed (e.g. an empty n-best list).
class DataError : public Error {
 public:
  using Error::Error;
};

// Caller broke an API precondition (mismatched vector widths and the like).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace paratune
