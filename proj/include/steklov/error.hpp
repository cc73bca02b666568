#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

// Invalid input: bad parameters, violated preconditions, malformed specs.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or incomplete JSON surface description.
class ParseError : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

// Numerical failure inside a solver (indefinite pivot, singular mass, ...).
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace steklov
