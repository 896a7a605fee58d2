#pragma once

#include <stdexcept>
#include <string>

namespace qsu2 {

// Malformed or mathematically inadmissible input (CLI exit code 2).
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource limit was exceeded (CLI exit code 3).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed; indicates a bug (CLI exit code 1).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qsu2
