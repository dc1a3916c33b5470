#pragma once

#include <stdexcept>
#include <string>

namespace specgeo {

// Base class for all library errors. Numerical trouble is always reported
// through one of these, never as a silent NaN/Inf.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation left the domain of an elementary operation (log of a
// non-positive value, division by a jet with vanishing constant term, ...).
class EvalError : public Error {
public:
  using Error::Error;
};

// A point lies outside the domain of a geometric object (U, U_c, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// A requested derivative order exceeds the order carried by a jet.
class OrderError : public Error {
public:
  using Error::Error;
};

// Matrix inversion failed or is untrustworthy; message carries the
// estimated condition number.
class SingularMatrixError : public Error {
public:
  using Error::Error;
};

// Malformed experiment configuration (maps to CLI exit code 2).
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace specgeo
