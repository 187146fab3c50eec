#pragma once

#include <stdexcept>
#include <string>

namespace lcg {

// Malformed input: bad JSON, bad parameters, a table that is not a group.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AxiomError : public InputError {
 public:
  using InputError::InputError;
};

// The input was well formed but the model cannot carry out the request.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A result left the model's declared carrier window.
class WindowError : public ModelError {
 public:
  using ModelError::ModelError;
};

// Exact arithmetic left the range of the fixed-width representation.
class ArithmeticOverflow : public ModelError {
 public:
  using ModelError::ModelError;
};

}  // namespace lcg
