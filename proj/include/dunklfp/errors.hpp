#pragma once

#include <stdexcept>
#include <string>

namespace dunklfp {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter outside its validity range (mu <= -1/2, |gamma| >= 1, ...).
class RangeError : public Error {
 public:
  using Error::Error;
};

// Parameters inconsistent with the requested derivative kind.
class KindError : public Error {
 public:
  using Error::Error;
};

// Evaluation point outside the domain of a function (x = 0 singularities).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation not available for the given superpotential family.
class FamilyError : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class AlphaError : public Error {
 public:
  using Error::Error;
};

class ParityMismatch : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class SpectrumError : public Error {
 public:
  using Error::Error;
};

class SolveError : public Error {
 public:
  using Error::Error;
};

class SignalError : public Error {
 public:
  using Error::Error;
};

// Malformed run configuration (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dunklfp
