#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

// Failure classes. The CLI maps these onto exit codes 2/3/4.
enum class ErrorKind {
  domain,     // argument outside the documented domain / precondition
  capacity,   // request exceeds a documented memory or size cap
  numerical,  // a numerical contract could not be honoured (overflow, ...)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

struct CapacityError : Error {
  explicit CapacityError(const std::string& what) : Error(ErrorKind::capacity, what) {}
};

struct NumericalError : Error {
  explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

}  // namespace zetalab
