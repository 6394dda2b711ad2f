#pragma once

#include <stdexcept>
#include <string>

namespace pqov {

// Thrown for arguments outside a function's documented domain.
class invalid_argument_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when parameters fall outside the validated special-function range
// (q > 200 or Bessel arguments beyond the tested domain).
class unsupported_range_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a quadrature fails its node-doubling convergence check or a
// truncation precondition is violated.
class accuracy_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an input profile has not decayed by the truncation radius.
class truncation_error : public accuracy_error {
 public:
  using accuracy_error::accuracy_error;
};

// Thrown by count_phase_jumps when the sampling circle crosses a nodal
// region where the phase is undefined.
class degenerate_circle_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pqov
