#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lgsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Inconsistent angular-momentum labels, e.g. m not on the ladder of j.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Request needs a different simulation backend than the one selected.
class BackendError : public Error {
 public:
  using Error::Error;
};

class MemoryGuardError : public Error {
 public:
  MemoryGuardError(const std::string& what, std::size_t estimated_bytes)
      : Error(what), estimated_bytes_(estimated_bytes) {}
  std::size_t estimated_bytes() const noexcept { return estimated_bytes_; }

 private:
  std::size_t estimated_bytes_;
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double achieved_time)
      : Error(what), achieved_time_(achieved_time) {}
  double achieved_time() const noexcept { return achieved_time_; }

 private:
  double achieved_time_;
};

// A numerical invariant was violated (imaginary residue, K above its bound).
class NumericError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lgsim
