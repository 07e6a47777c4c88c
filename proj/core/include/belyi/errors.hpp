#pragma once

#include <stdexcept>
#include <string>

namespace belyi {

// Base class for all library errors. Subclasses correspond to the stages of
// the pipeline so callers (in particular the command-line tool) can map a
// failure to a meaningful exit status.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input (bad file, non-permutation, relation
// violation, unsupported degree, ...).
class InputError : public Error {
 public:
  explicit InputError(const std::string& msg) : Error(msg) {}
};

// Numerical search failed: no start converged, or refinement stalled.
class SolveError : public Error {
 public:
  explicit SolveError(const std::string& msg) : Error(msg) {}
};

// Lattice-based recognition failed: no small relation at the available
// precision, or recovered integers fail their residual check.
class RecognitionError : public Error {
 public:
  explicit RecognitionError(const std::string& msg) : Error(msg) {}
};

// Exact verification of a candidate certificate failed.
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& msg) : Error(msg) {}
};

// Cross-check mismatch (e.g. monodromy of the computed map is not conjugate
// to the input triple).
class MismatchError : public Error {
 public:
  explicit MismatchError(const std::string& msg) : Error(msg) {}
};

// A configurable time budget was exhausted. Distinct from a negative result.
class TimeoutError : public Error {
 public:
  explicit TimeoutError(const std::string& msg) : Error(msg) {}
};

}  // namespace belyi
