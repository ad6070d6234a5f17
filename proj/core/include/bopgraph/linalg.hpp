#pragma once

#include <string>

#include <Eigen/Dense>

#include "bopgraph/graph.hpp"

namespace bopgraph {

/// Systems whose estimated reciprocal condition number falls below this are
/// refused rather than solved.
inline constexpr double kMinReciprocalCondition = 1e-14;

/// LU factorisation with partial pivoting that refuses ill-conditioned
/// matrices. `context` is quoted in the NumericalError message.
class GuardedLu {
 public:
  GuardedLu(const Matrix& m, std::string context);

  double reciprocal_condition() const { return rcond_; }
  Eigen::Index size() const { return lu_.rows(); }
  Matrix solve(const Matrix& rhs) const;
  Vector solve(const Vector& rhs) const;
  /// Solves against the identity, column by column.
  Matrix inverse() const;

 private:
  Eigen::PartialPivLU<Matrix> lu_;
  double rcond_ = 0.0;
  std::string context_;
};

}  // namespace bopgraph
