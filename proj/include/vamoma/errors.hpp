#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vamoma {

/// Bad argument to a constructor or operation (sizes, ranges, counts).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation point outside the radial domain [0, R].
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested solution branch does not exist (concave branch in odd dimension).
class UnsupportedBranch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation's input violates a documented precondition.
class PreconditionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterate went negative beyond the configured clip tolerance.
class PositivityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero pivot during banded elimination.
class SingularSystem : public std::runtime_error {
 public:
  SingularSystem(std::size_t dof, const std::string& what)
      : std::runtime_error(what), dof_(dof) {}
  std::size_t dof() const noexcept { return dof_; }

 private:
  std::size_t dof_;
};

}  // namespace vamoma
