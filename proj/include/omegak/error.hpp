#pragma once

#include <stdexcept>
#include <string>

namespace omegak {

/// Bad argument to a mathematical operation (inv(0), division by the zero
/// polynomial, non-monic input where monic is required, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A guard on problem size failed (field too large, enumeration too big).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A finite field could not be constructed (composite characteristic, e = 0).
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed textual input (polynomial strings, field specs, ranges).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace omegak
