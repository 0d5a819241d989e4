#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace eb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition on an argument's domain (unsorted nodes, a >= b, even d, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A breakpoint or partition cap was hit. `depth_reached` is the last depth
// (iterate index, refinement level) that completed within the cap.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, int depth_reached)
      : Error(what), depth_reached_(depth_reached) {}
  int depth_reached() const noexcept { return depth_reached_; }

 private:
  int depth_reached_;
};

// Raised by independent_points when the family is dependent on the grid.
// relation[j] are coefficients with sum_j relation[j] * f_j == 0 on the grid.
class DependencyError : public Error {
 public:
  DependencyError(const std::string& what, std::vector<mpq_class> relation)
      : Error(what), relation_(std::move(relation)) {}
  const std::vector<mpq_class>& relation() const noexcept { return relation_; }

 private:
  std::vector<mpq_class> relation_;
};

// Psi truncation too shallow for the requested horseshoe size.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int minimal_truncation)
      : Error(what), minimal_truncation_(minimal_truncation) {}
  int minimal_truncation() const noexcept { return minimal_truncation_; }

 private:
  int minimal_truncation_;
};

// The l1 witness could not satisfy the oscillation condition at step `step`.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, int step) : Error(what), step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Unreadable or unwritable file.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace eb
