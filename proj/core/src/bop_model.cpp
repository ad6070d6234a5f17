#include "bopgraph/bop_model.hpp"

#include <cmath>
#include <sstream>

#include "bopgraph/errors.hpp"
#include "bopgraph/linalg.hpp"

namespace bopgraph {
namespace {

std::string theta_context(double theta) {
  std::ostringstream out;
  out << "fundamental matrix at theta=" << theta;
  return out.str();
}

void require_positive_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw InputError("theta must be positive");
}

}  // namespace

Matrix killed_transitions(const Graph& graph, double theta) {
  require_positive_theta(theta);
  const TransitionMatrix reference = reference_transitions(graph);
  const Matrix& p = reference.matrix();
  const Matrix& c = graph.costs();
  const auto n = p.rows();
  Matrix w = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (graph.has_arc(static_cast<std::size_t>(i), static_cast<std::size_t>(j)))
        w(i, j) = p(i, j) * std::exp(-theta * c(i, j));
  return w;
}

BopModel build_model(const Graph& graph, double theta) {
  BopModel model;
  model.theta_ = theta;
  model.w_ = killed_transitions(graph, theta);
  const auto n = model.w_.rows();

  const Matrix system = Matrix::Identity(n, n) - model.w_;
  model.z_ = GuardedLu(system, theta_context(theta)).inverse();

  model.dz_ = model.z_.diagonal();
  if ((model.dz_.array() < 1.0 - 1e-9).any())
    throw NumericalError(theta_context(theta) + ": diagonal entry below 1");
  model.z0_ = model.z_;
  model.z0_.diagonal().setZero();
  model.partition_ = model.z_.sum();
  double hitting = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) hitting += model.z_.col(j).sum() / model.dz_(j);
  model.hitting_partition_ = hitting;
  return model;
}

Matrix bop_probabilities(const BopModel& model) {
  return model.fundamental() / model.partition();
}

HittingProbabilities hitting_probabilities(const BopModel& model) {
  HittingProbabilities out;
  out.weights = model.fundamental() * model.fundamental_diagonal().cwiseInverse().asDiagonal();
  out.weights.diagonal().setOnes();
  out.probabilities = out.weights / model.hitting_partition();
  return out;
}

}  // namespace bopgraph
