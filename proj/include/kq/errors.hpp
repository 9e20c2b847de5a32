#pragma once

#include <stdexcept>
#include <string>

namespace kq {

/// Base class for runtime numerical failures (as opposed to precondition
/// violations, which throw std::invalid_argument).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation of a pair energy or kernel at coincident points.
class SingularityError : public NumericalError {
 public:
  explicit SingularityError(const std::string& msg) : NumericalError(msg) {}
};

/// A coordinate sits at or beyond a barrier, where the objective is undefined.
class BarrierError : public NumericalError {
 public:
  BarrierError(const std::string& msg, int point, int coordinate)
      : NumericalError(msg), point_index(point), coordinate_index(coordinate) {}
  int point_index;
  int coordinate_index;
};

/// Factorization failed at the maximum jitter level, or a quantity that must
/// be nonnegative came out negative beyond roundoff.
class ConditioningError : public NumericalError {
 public:
  explicit ConditioningError(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace kq
