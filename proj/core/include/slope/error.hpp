#pragma once

#include <stdexcept>
#include <string>

namespace slope {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input files and data.
class MalformedInput : public Error { using Error::Error; };
class TooFewRows : public Error { using Error::Error; };
class DegenerateInput : public Error { using Error::Error; };

// Fitting and encoding.
class TooFewPoints : public Error { using Error::Error; };
class InvalidArgument : public Error { using Error::Error; };
class InvalidModel : public Error { using Error::Error; };
class SingularBasis : public Error { using Error::Error; };

// Generators.
class SingularMechanism : public Error { using Error::Error; };

// Benchmark harness.
class MalformedMeta : public Error { using Error::Error; };
class InvalidP : public Error { using Error::Error; };
class EmptySuite : public Error { using Error::Error; };

}  // namespace slope
