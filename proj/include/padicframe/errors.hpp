#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace padicframe {

/// Base for domain failures (as opposed to malformed input, which raises
/// std::invalid_argument).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RefinementBudgetExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

class DepthTooCoarse : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConvergenceFailure : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotAFrame : public DomainError {
 public:
  using DomainError::DomainError;
};

class IndexMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class FamilyNotInSpace : public DomainError {
 public:
  explicit FamilyNotInSpace(std::vector<std::size_t> offending);
  const std::vector<std::size_t>& offendingIndices() const { return offending_; }

 private:
  std::vector<std::size_t> offending_;
};

inline FamilyNotInSpace::FamilyNotInSpace(std::vector<std::size_t> offending)
    : DomainError([&] {
        std::string msg = "family members not contained in the test space:";
        for (auto i : offending) msg += " " + std::to_string(i);
        return msg;
      }()),
      offending_(std::move(offending)) {}

}  // namespace padicframe
