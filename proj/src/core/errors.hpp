#pragma once

#include <stdexcept>
#include <string>

namespace poussin {

// Parameter outside its mathematical domain (e.g. tilde_c >= c).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Query outside the verified/available range (e.g. x beyond the sieve limit).
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Work refused because it exceeds a configured budget or cap.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Catalog lookup miss.
struct NotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cache file unreadable, unwritable, or corrupt.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search driver could not render a verdict even at extended precision.
struct InconclusiveError : std::runtime_error {
  explicit InconclusiveError(const std::string& what, double at = 0.0)
      : std::runtime_error(what), at_x(at) {}
  double at_x;
};

}  // namespace poussin
