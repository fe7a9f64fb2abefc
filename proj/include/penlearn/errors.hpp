#ifndef PENLEARN_ERRORS_HPP
#define PENLEARN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace penlearn {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file (missing column, unparseable cell).
struct FormatError : Error {
  using Error::Error;
};

// Structurally parseable input that violates a data invariant.
struct ValidationError : Error {
  using Error::Error;
};

// Bad configuration (infeasible ranges, unknown names).
struct ConfigError : Error {
  using Error::Error;
};

// Argument outside an operation's domain (e.g. lambda <= 0).
struct DomainError : Error {
  using Error::Error;
};

// Optimization failure (non-finite loss etc).
struct TrainingError : Error {
  using Error::Error;
};

// Whole-pipeline failure (e.g. every feature column filtered out).
struct PipelineError : Error {
  using Error::Error;
};

}  // namespace penlearn

#endif
