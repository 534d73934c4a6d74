#pragma once

#include <stdexcept>
#include <string>

namespace casa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (group/algebra/ca files, configuration strings).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A requested computation exceeds the configured resource cap.
class CapError : public Error {
 public:
  using Error::Error;
};

}  // namespace casa
