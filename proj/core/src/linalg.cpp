#include "bopgraph/linalg.hpp"

#include <sstream>

#include "bopgraph/errors.hpp"

namespace bopgraph {
namespace {

void require_finite(const Matrix& m, const std::string& context) {
  if (!m.allFinite()) throw NumericalError(context + ": solution is not finite");
}

}  // namespace

GuardedLu::GuardedLu(const Matrix& m, std::string context) : context_(std::move(context)) {
  if (m.rows() != m.cols()) throw InputError(context_ + ": matrix must be square");
  if (!m.allFinite()) throw NumericalError(context_ + ": matrix has non-finite entries");
  lu_.compute(m);
  rcond_ = lu_.rcond();
  if (!(rcond_ >= kMinReciprocalCondition)) {
    std::ostringstream msg;
    msg << context_ << ": matrix is singular or ill-conditioned (reciprocal condition estimate "
        << rcond_ << " < " << kMinReciprocalCondition << ")";
    throw NumericalError(msg.str());
  }
}

Matrix GuardedLu::solve(const Matrix& rhs) const {
  Matrix x = lu_.solve(rhs);
  require_finite(x, context_);
  return x;
}

Vector GuardedLu::solve(const Vector& rhs) const {
  Vector x = lu_.solve(rhs);
  if (!x.allFinite()) throw NumericalError(context_ + ": solution is not finite");
  return x;
}

Matrix GuardedLu::inverse() const {
  return solve(Matrix(Matrix::Identity(lu_.rows(), lu_.cols())));
}

}  // namespace bopgraph
