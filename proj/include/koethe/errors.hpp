#pragma once

#include <stdexcept>
#include <string>

namespace koethe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A space descriptor violates one of its invariants (bad weights, p < 1, r <= 0, ...).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Vector length does not match the ambient dimension of a space or symbol.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An objective handed to convex_max produced NaN or a negative value.
class ObjectiveError : public Error {
 public:
  using Error::Error;
};

/// A numerically checked precondition (for example an inclusion constant cap) failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The brute-force grid oracle refuses problems that would blow up combinatorially.
class RefusalError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (descriptor documents, vectors, configs).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace koethe
