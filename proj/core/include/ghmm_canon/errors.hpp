#ifndef GHMM_CANON_ERRORS_HPP
#define GHMM_CANON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ghmm_canon {

// Base of everything thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// The caller handed us something malformed: bad dimensions, a functional
// that is not fixed by the transition sum, a non-density initial state,
// an unknown symbol, mismatched alphabets where equal ones are required.
class InputError : public Error {
public:
  explicit InputError(const std::string& what) : Error(what) {}
};

// Conditioning on an event of (numerically) zero probability, or asking
// for the steady state of a model whose unit eigenspace is degenerate.
class DegenerateConditionError : public InputError {
public:
  explicit DegenerateConditionError(const std::string& what) : InputError(what) {}
};

// A requested operation is only defined for a narrower model class
// (e.g. entropy witness needs a genuine HMM).
class UnsupportedModelError : public InputError {
public:
  explicit UnsupportedModelError(const std::string& what) : InputError(what) {}
};

// Arithmetic left the regime where results are trustworthy: imaginary
// residues above tolerance, negative probabilities below the clamp window,
// condition numbers past the cap, internal consistency checks failing.
class NumericalIntegrityError : public Error {
public:
  explicit NumericalIntegrityError(const std::string& what) : Error(what) {}
};

// An exhaustive enumeration would exceed the configured word budget.
class ResourceLimitError : public Error {
public:
  explicit ResourceLimitError(const std::string& what) : Error(what) {}
};

} // namespace ghmm_canon

#endif
