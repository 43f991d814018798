#pragma once

#include <stdexcept>
#include <string>

namespace majoranon {

/// A parameter lies outside its documented domain (negative width, zero weights, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Two operands disagree in size, or a size is structurally unusable (odd lattice in decode).
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input has no intensity to normalize or weigh positions with.
class DegenerateInput : public std::invalid_argument {
 public:
  explicit DegenerateInput(const std::string& what) : std::invalid_argument(what) {}
};

/// The spectral propagators only work on periodic grids.
class UnsupportedBoundary : public std::invalid_argument {
 public:
  explicit UnsupportedBoundary(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical contract was breached: unnormalized input to pseudo_energy,
/// non-finite amplitudes, lost unitarity.
class ContractViolation : public std::runtime_error {
 public:
  explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace majoranon
