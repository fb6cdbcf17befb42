#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace negtype {

enum class Errc {
  // metric
  NotSquare,
  LabelCountMismatch,
  NonFiniteEntry,
  AsymmetricEntry,
  NonzeroDiagonal,
  NonpositiveDistance,
  TriangleViolation,
  NegativeExponent,
  DisconnectedGraph,
  NonpositiveWeight,
  DuplicatePoint,
  InvalidNormOrder,
  // quadform
  DimensionTooSmall,
  LengthMismatch,
  NotBalanced,
  EigenFailure,
  InvalidCap,
  // polyeq
  IndexOutOfRange,
  UnbalancedWeights,
  ZeroVector,
  NotApplicable,
  NoRootInUnitInterval,
  NoWitnessFound,
  // io / cli
  ParseError,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

/// Library error. `indices()` names the offending points (0-based) where the
/// failure is tied to specific entries, e.g. (i, j, k) for a triangle
/// violation d(i,k) > d(i,j) + d(j,k).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::vector<std::size_t> indices = {})
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        indices_(std::move(indices)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  Errc code_;
  std::vector<std::size_t> indices_;
};

}  // namespace negtype
