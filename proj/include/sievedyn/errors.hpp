#pragma once

#include <stdexcept>

namespace sievedyn {

// Input violates a documented precondition. The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A memory budget or a numeric/sieve bound would be exceeded. CLI exit code 2.
class BoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sievedyn
