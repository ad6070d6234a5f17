#include "bopgraph/path_oracle.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "bopgraph/errors.hpp"

namespace bopgraph {
namespace {

struct StepWeights {
  Matrix step;  // p_ref(u, v) * exp(-theta * c(u, v)) on arcs, 0 elsewhere
  double max_row_sum = 0.0;
};

StepWeights step_weights(const Graph& graph, double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw InputError("theta must be positive");
  const TransitionMatrix reference = reference_transitions(graph);
  const auto n = static_cast<Eigen::Index>(graph.size());
  StepWeights out{Matrix::Zero(n, n), 0.0};
  for (Eigen::Index u = 0; u < n; ++u) {
    double row = 0.0;
    for (Eigen::Index v = 0; v < n; ++v) {
      if (!graph.has_arc(static_cast<std::size_t>(u), static_cast<std::size_t>(v))) continue;
      const double prob = reference(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
      out.step(u, v) = prob * std::exp(-theta * graph.costs()(u, v));
      row += out.step(u, v);
    }
    out.max_row_sum = std::max(out.max_row_sum, row);
  }
  return out;
}

// Walk weight arriving at each node after one more step. For hitting walks
// the target absorbs: weight sitting on it never moves on.
Vector advance(const Vector& frontier, const Matrix& step, Eigen::Index target, WalkSet walks) {
  Vector next = Vector::Zero(frontier.size());
  for (Eigen::Index u = 0; u < frontier.size(); ++u) {
    if (frontier(u) == 0.0) continue;
    if (walks == WalkSet::kHitting && u == target) continue;
    next += frontier(u) * step.row(u).transpose();
  }
  return next;
}

void check_nodes(const Graph& graph, std::size_t from, std::size_t to) {
  if (graph.size() > kOracleMaxNodes)
    throw InputError("graph too large for oracle (" + std::to_string(graph.size()) +
                     " nodes, limit " + std::to_string(kOracleMaxNodes) + ")");
  if (from >= graph.size() || to >= graph.size()) throw InputError("oracle node id out of range");
}

}  // namespace

PathSumEstimate path_sum_oracle(const Graph& graph, double theta, std::size_t from,
                                std::size_t to, double epsilon, WalkSet walks) {
  check_nodes(graph, from, to);
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive (the tail bound never vanishes)");
  const StepWeights weights = step_weights(graph, theta);
  const double rho = weights.max_row_sum;
  assert(rho < 1.0);
  if (!(rho < 1.0)) throw NumericalError("path sum does not converge: max row sum of W >= 1");

  const auto n = static_cast<double>(graph.size());
  const auto target = static_cast<Eigen::Index>(to);
  Vector frontier = Vector::Zero(static_cast<Eigen::Index>(graph.size()));
  frontier(static_cast<Eigen::Index>(from)) = 1.0;

  PathSumEstimate estimate;
  estimate.value = frontier(target);
  double rho_power = rho;  // rho^(L+1)
  // A hitting walk that starts on its target is the empty walk only.
  if (walks == WalkSet::kHitting && from == to) {
    estimate.tail_bound = 0.0;
    return estimate;
  }
  while (rho_power * n / (1.0 - rho) >= epsilon) {
    frontier = advance(frontier, weights.step, target, walks);
    ++estimate.truncation_length;
    estimate.value += frontier(target);
    rho_power *= rho;
  }
  estimate.tail_bound = rho_power * n / (1.0 - rho);
  return estimate;
}

std::vector<double> path_weight_by_length(const Graph& graph, double theta, std::size_t from,
                                          std::size_t to, int max_length, WalkSet walks) {
  check_nodes(graph, from, to);
  const StepWeights weights = step_weights(graph, theta);
  const auto target = static_cast<Eigen::Index>(to);
  Vector frontier = Vector::Zero(static_cast<Eigen::Index>(graph.size()));
  frontier(static_cast<Eigen::Index>(from)) = 1.0;
  std::vector<double> out{frontier(target)};
  for (int length = 1; length <= max_length; ++length) {
    if (walks == WalkSet::kHitting && from == to) {
      out.push_back(0.0);
      continue;
    }
    frontier = advance(frontier, weights.step, target, walks);
    out.push_back(frontier(target));
  }
  return out;
}

}  // namespace bopgraph
