#pragma once

#include <stdexcept>
#include <string>

namespace arcsim {

// Bad input: configuration files, toolpaths, G-code, CLI arguments.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A plan that cannot satisfy its boundary speeds under the jerk limit.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Degenerate point sets handed to the circle fit.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace arcsim
