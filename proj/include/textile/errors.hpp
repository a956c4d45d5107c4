#pragma once

#include <stdexcept>
#include <string>

namespace textile {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed matrices, unparseable documents, unknown edge identifiers.
class InputError : public Error {
public:
  using Error::Error;
};

/// AB != BA, so no endpoint-preserving specification can exist.
class CommutationError : public Error {
public:
  using Error::Error;
};

/// A specification that is not a valid bijection Sigma^AB -> Sigma^BA.
class SpecificationError : public Error {
public:
  using Error::Error;
};

/// An operation was called outside of its domain (e.g. N > M, n <= 1).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Patch positions that are occupied or not adjacent to the patch.
class DomainError : public Error {
public:
  using Error::Error;
};

/// The determinantal-divisor oracle refuses matrices beyond its size limit.
class OracleLimitError : public Error {
public:
  using Error::Error;
};

} // namespace textile
