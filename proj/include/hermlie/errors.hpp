#pragma once

#include <stdexcept>
#include <string>

namespace hermlie {

// Malformed or mathematically inadmissible input (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called outside its documented precondition.
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

// Two independent computations disagreed; indicates a bug, not bad data.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace hermlie
