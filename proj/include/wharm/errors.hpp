#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wharm {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (e.g. alpha <= -1).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NonConvergent : public Error {
 public:
  using Error::Error;
};

/// Hypergeometric lower parameter c is a nonpositive integer.
class InvalidC : public DomainError {
 public:
  using DomainError::DomainError;
};

class DecompositionFailure : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

class AngleDegenerate : public Error {
 public:
  using Error::Error;
};

class NonPositiveCoefficient : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class EmptyFamily : public DomainError {
 public:
  using DomainError::DomainError;
};

class UncomparableRepresentation : public DomainError {
 public:
  using DomainError::DomainError;
};

class StepLimit : public Error {
 public:
  using Error::Error;
};

/// A family of angles fails admissibility; `witness` is the smallest k with no valid angle.
class NotAdmissible : public DomainError {
 public:
  NotAdmissible(const std::string& what, std::uint64_t witness)
      : DomainError(what), witness_(witness) {}
  std::uint64_t witness() const noexcept { return witness_; }

 private:
  std::uint64_t witness_;
};

/// Angle sequence violates d(theta_k) not dividing lcm(d(theta_1..k-1)); `index` is 1-based.
class HypothesisViolation : public DomainError {
 public:
  HypothesisViolation(const std::string& what, std::size_t index)
      : DomainError(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace wharm
