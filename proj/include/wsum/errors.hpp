#pragma once

#include <stdexcept>
#include <string>

namespace wsum {

// Variance does not exceed the mean, so no negative binomial matches.
class UnderdispersedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Support or pair count beyond the configured guard.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BasisMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OddSError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MomentMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateFitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RetryExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wsum
