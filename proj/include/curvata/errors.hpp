#pragma once

#include <stdexcept>
#include <string>

namespace curvata {

/// Rejected argument: out-of-domain value, malformed vector, bad grid size.
class invalid_input : public std::invalid_argument {
  public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation that cannot certify its own result: residual too large,
/// bisection bracket lost, singular fold in a boundary row.
class numerical_failure : public std::runtime_error {
  public:
    explicit numerical_failure(const std::string& what) : std::runtime_error(what) {}
};

/// A classification branch was reached whose required data was not supplied.
class insufficient_input : public std::invalid_argument {
  public:
    explicit insufficient_input(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace curvata
