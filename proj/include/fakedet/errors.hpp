#pragma once

#include <stdexcept>
#include <string>

namespace fakedet {

// Anything wrong with user-supplied data: malformed files, schema
// violations, impossible requests. Maps to exit code 2 in the CLI.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failure while fitting a model. Maps to exit code 3 in the CLI.
class TrainError : public std::runtime_error {
 public:
  explicit TrainError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fakedet
