#pragma once

#include <stdexcept>
#include <string>

namespace cox {

// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Syntax or semantic problem in a system file or a word on the command line.
// Carries the 1-based line number of the offending line (0 when not tied to
// a particular line, e.g. unknown generator labels in words).
class ParseError : public Error {
public:
  enum class Kind {
    MalformedHeader,
    BadRank,
    BadEntry,
    NonSymmetric,
    BadDiagonal,
    DuplicateLabel,
    UnknownLabel,
    TrailingInput,
  };

  ParseError(Kind kind, int line, const std::string& what)
      : Error(what), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  int line() const { return line_; }

private:
  Kind kind_;
  int line_;
};

// A configured resource limit was exceeded (braid closure size, ball size,
// search radius, enumeration caps).  Never silent truncation.
class ResourceCapError : public Error {
public:
  using Error::Error;
};

// The caller violated an operation precondition.
class DomainError : public Error {
public:
  using Error::Error;
};

// Elements from two different systems were mixed in one operation.
class MixedSystemError : public DomainError {
public:
  using DomainError::DomainError;
};

// An invariant guaranteed by theory failed at runtime.  This is a defect in
// the library, not a problem with the input.
class InternalError : public Error {
public:
  using Error::Error;
};

// The numeric engine could not classify a sign within tolerance.
class GeomToleranceError : public Error {
public:
  using Error::Error;
};

// The numeric engine was asked to process a word beyond its depth cap.
class GeomDepthError : public ResourceCapError {
public:
  using ResourceCapError::ResourceCapError;
};

// A root vector exhibited coordinates of both signs beyond tolerance.
// Sign coherence of roots makes this impossible for correct inputs.
class GeomMixedSignError : public InternalError {
public:
  using InternalError::InternalError;
};

}  // namespace cox
