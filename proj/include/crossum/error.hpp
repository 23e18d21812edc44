#pragma once

#include <stdexcept>
#include <string>

namespace crossum {

/// Raised for malformed input, violated preconditions and missing data.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crossum
