#pragma once
#include <stdexcept>
#include <string>

namespace rainbow {

// Base for everything thrown by this library. code() is a stable short name
// used in CSV records ("error:UnsatisfiableFloor" etc.).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual const char* code() const noexcept { return "Error"; }
};

class DomainError : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "DomainError"; }
};

class SizeMismatch : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "SizeMismatch"; }
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "DimensionMismatch"; }
};

class UnsatisfiableFloor : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "UnsatisfiableFloor"; }
};

class UnbalancedParts : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "UnbalancedParts"; }
};

class PartSizeMismatch : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "PartSizeMismatch"; }
};

class TooSmall : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "TooSmall"; }
};

class NotPerfect : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "NotPerfect"; }
};

class NotHamiltonian : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "NotHamiltonian"; }
};

class TooLargeForExhaustive : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "TooLargeForExhaustive"; }
};

class UnknownThreshold : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "UnknownThreshold"; }
};

class ConfigError : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "ConfigError"; }
};

class IoError : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "IoError"; }
};

} // namespace rainbow
