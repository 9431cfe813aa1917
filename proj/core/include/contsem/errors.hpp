#pragma once

#include <stdexcept>

namespace contsem {

// Malformed model files or sentences.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Typing violations and enumeration-cap overruns.
class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace contsem
