#pragma once

#include <stdexcept>
#include <string>

namespace lpaffine {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Origin not interior, degenerate vertex set, malformed descriptor.
class InvalidBody : public Error {
 public:
  using Error::Error;
};

/// Curvature or boundary points requested from a polytope.
class UnsupportedSmoothness : public Error {
 public:
  using Error::Error;
};

/// P_K of a polytope vanishes a.e.; callers must use the classification rules.
class PolytopeClassification : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class DegenerateBody : public Error {
 public:
  using Error::Error;
};

class InvalidWeight : public Error {
 public:
  using Error::Error;
};

}  // namespace lpaffine
