#pragma once

#include <stdexcept>
#include <string>

namespace mlspectra {

// Malformed user input (JSON schema, symmetry, dependent basis).
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: path failure rate, unstable counts, exhausted budgets.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A generic draw (S, functionals) produced different counts.
class CountInstability : public SolverError {
 public:
  CountInstability(const std::string& stage, int first, int second)
      : SolverError(stage + ": count instability across generic draws (" +
                    std::to_string(first) + " vs " + std::to_string(second) + ")"),
        first_(first),
        second_(second) {}
  int first() const { return first_; }
  int second() const { return second_; }

 private:
  int first_;
  int second_;
};

// Basis element `index` lies in the span of the preceding ones.
class DependentBasis : public std::invalid_argument {
 public:
  explicit DependentBasis(int index)
      : std::invalid_argument("basis element " + std::to_string(index) +
                              " is linearly dependent on the preceding elements"),
        index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

// The subspace contains no invertible matrix.
class NotRegular : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The perturbed adjugate vanishes identically.
class DegenerateAdjugate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mlspectra
