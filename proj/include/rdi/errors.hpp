#pragma once

#include <stdexcept>
#include <string>

namespace rdi {

// Precondition or domain violation in caller-supplied data.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed interchange file. The message always carries a byte offset or line number.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rdi
