#pragma once

#include <stdexcept>
#include <string>

namespace cylspec {

// Base class for all numerical failures raised by this library.  Bad
// arguments (non-finite input, invalid configuration) throw
// std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Gamma function (or a series parameter that reduces to one) evaluated at a
// non-positive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

// A series did not meet the requested tolerance within the term cap.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// The asymptotic expansion's smallest term is too large to certify the
// requested accuracy at this argument.
class AsymptoticDivergence : public Error {
 public:
  using Error::Error;
};

// Fewer sign changes than requested eigenvalues in the search window.
class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

// Two roots suspected inside one scan step even after step refinement.
class BracketAmbiguity : public Error {
 public:
  using Error::Error;
};

// Box half-width so small that the solver's search window would be
// impractically deep; the series expansion remains available there.
class DomainTooNarrow : public Error {
 public:
  using Error::Error;
};

// Operator or wavefunction evaluated on top of a potential singularity.
class SingularPoint : public Error {
 public:
  using Error::Error;
};

// Wavefunction norm quadrature failed to converge.
class NormalizationFailure : public Error {
 public:
  using Error::Error;
};

// Two grid resolutions disagree beyond tolerance after extrapolation.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

}  // namespace cylspec
