#include "bopgraph/graph.hpp"

#include <cmath>
#include <deque>
#include <string>

#include "bopgraph/errors.hpp"

namespace bopgraph {
namespace {

using Index = Eigen::Index;

std::vector<bool> reachable(const Matrix& a, bool transpose) {
  const Index n = a.rows();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  if (n == 0) return seen;
  std::deque<Index> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const Index u = queue.front();
    queue.pop_front();
    for (Index v = 0; v < n; ++v) {
      const double w = transpose ? a(v, u) : a(u, v);
      if (w > 0.0 && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

std::string arc_name(Index i, Index j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

Matrix affinity_to_cost(const Matrix& affinities) {
  Matrix costs(affinities.rows(), affinities.cols());
  for (Index j = 0; j < affinities.cols(); ++j)
    for (Index i = 0; i < affinities.rows(); ++i)
      costs(i, j) = affinities(i, j) > 0.0 ? 1.0 / affinities(i, j) : kNoArc;
  return costs;
}

bool is_strongly_connected(const Matrix& affinities) {
  if (affinities.rows() == 0) return false;
  // A single node has no arcs to follow and no outgoing transition.
  if (affinities.rows() == 1) return false;
  for (bool transpose : {false, true}) {
    const auto seen = reachable(affinities, transpose);
    for (bool s : seen)
      if (!s) return false;
  }
  return true;
}

Graph::Graph(Matrix affinities, Matrix costs, bool directed)
    : affinities_(std::move(affinities)), costs_(std::move(costs)), directed_(directed) {
  const Index n = affinities_.rows();
  if (n == 0 || affinities_.cols() != n)
    throw InputError("affinity matrix must be square and non-empty");
  if (costs_.rows() != n || costs_.cols() != n)
    throw InputError("cost matrix shape does not match affinity matrix");
  for (Index i = 0; i < n; ++i) {
    if (affinities_(i, i) != 0.0)
      throw InputError("self-loop on node " + std::to_string(i) + " is not allowed");
    for (Index j = 0; j < n; ++j) {
      const double a = affinities_(i, j);
      const double c = costs_(i, j);
      if (!std::isfinite(a) || a < 0.0)
        throw InputError("affinity " + arc_name(i, j) + " must be finite and nonnegative");
      if (a > 0.0) {
        if (!std::isfinite(c) || !(c > 0.0))
          throw InputError("cost on arc " + arc_name(i, j) + " must be finite and positive");
      } else if (c != kNoArc) {
        throw InputError("cost given for missing arc " + arc_name(i, j));
      }
    }
  }
  if (!directed_ && affinities_ != affinities_.transpose())
    throw InputError("undirected graph requires a symmetric affinity matrix");
  if (!is_strongly_connected(affinities_))
    throw InputError("graph is not strongly connected");
}

Graph Graph::from_affinities(Matrix affinities, bool directed) {
  Matrix costs = affinity_to_cost(affinities);
  return Graph(std::move(affinities), std::move(costs), directed);
}

Graph Graph::from_affinities_and_costs(Matrix affinities, Matrix costs, bool directed) {
  return Graph(std::move(affinities), std::move(costs), directed);
}

Graph Graph::permuted(const std::vector<std::size_t>& perm) const {
  const Index n = affinities_.rows();
  if (perm.size() != static_cast<std::size_t>(n))
    throw InputError("permutation size does not match graph size");
  Matrix a(n, n), c(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const auto pi = static_cast<Index>(perm[static_cast<std::size_t>(i)]);
      const auto pj = static_cast<Index>(perm[static_cast<std::size_t>(j)]);
      a(pi, pj) = affinities_(i, j);
      c(pi, pj) = costs_(i, j);
    }
  return Graph(std::move(a), std::move(c), directed_);
}

TransitionMatrix::TransitionMatrix(Matrix probabilities) : p_(std::move(probabilities)) {
  if (p_.rows() != p_.cols()) throw InputError("transition matrix must be square");
  for (Index i = 0; i < p_.rows(); ++i) {
    if ((p_.row(i).array() < 0.0).any())
      throw InputError("negative transition probability in row " + std::to_string(i));
    if (std::abs(p_.row(i).sum() - 1.0) > 1e-12)
      throw InputError("transition row " + std::to_string(i) + " does not sum to 1");
  }
}

TransitionMatrix reference_transitions(const Graph& graph) {
  const Matrix& c = graph.costs();
  const Index n = c.rows();
  Matrix p = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    double total = 0.0;
    for (Index j = 0; j < n; ++j)
      if (graph.has_arc(static_cast<std::size_t>(i), static_cast<std::size_t>(j)))
        total += 1.0 / c(i, j);
    for (Index j = 0; j < n; ++j)
      if (graph.has_arc(static_cast<std::size_t>(i), static_cast<std::size_t>(j)))
        p(i, j) = (1.0 / c(i, j)) / total;
  }
  return TransitionMatrix(std::move(p));
}

LabelAssignment::LabelAssignment(std::vector<int> labels, int num_classes)
    : labels_(std::move(labels)), num_classes_(num_classes) {
  if (num_classes_ < 1) throw InputError("number of classes must be at least 1");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const int c = labels_[i];
    if (c != kUnlabeled && (c < 0 || c >= num_classes_))
      throw InputError("class " + std::to_string(c) + " of node " + std::to_string(i) +
                       " is outside [0, " + std::to_string(num_classes_) + ")");
  }
}

Matrix LabelAssignment::indicator() const {
  Matrix y = Matrix::Zero(static_cast<Index>(labels_.size()), num_classes_);
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] != kUnlabeled) y(static_cast<Index>(i), labels_[i]) = 1.0;
  return y;
}

Vector LabelAssignment::class_indicator(int c) const {
  Vector y = Vector::Zero(static_cast<Index>(labels_.size()));
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == c) y(static_cast<Index>(i)) = 1.0;
  return y;
}

std::size_t LabelAssignment::class_count(int c) const {
  std::size_t count = 0;
  for (int l : labels_)
    if (l == c) ++count;
  return count;
}

std::vector<std::size_t> LabelAssignment::class_members(int c) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == c) out.push_back(i);
  return out;
}

std::vector<std::size_t> LabelAssignment::labeled_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] != kUnlabeled) out.push_back(i);
  return out;
}

std::vector<std::size_t> LabelAssignment::unlabeled_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == kUnlabeled) out.push_back(i);
  return out;
}

void LabelAssignment::require_min_seeds(std::size_t min_seeds) const {
  for (int c = 0; c < num_classes_; ++c) {
    const std::size_t count = class_count(c);
    if (count < min_seeds)
      throw DegenerateClassError(c, "class " + std::to_string(c) + " has " + std::to_string(count) +
                       " labeled node(s); at least " + std::to_string(min_seeds) +
                       " required");
  }
}

LabelAssignment LabelAssignment::without(const std::vector<std::size_t>& nodes) const {
  auto labels = labels_;
  for (std::size_t node : nodes) labels.at(node) = kUnlabeled;
  return LabelAssignment(std::move(labels), num_classes_);
}

LabelAssignment LabelAssignment::permuted(const std::vector<std::size_t>& perm) const {
  std::vector<int> labels(labels_.size(), kUnlabeled);
  for (std::size_t i = 0; i < labels_.size(); ++i) labels.at(perm.at(i)) = labels_[i];
  return LabelAssignment(std::move(labels), num_classes_);
}

}  // namespace bopgraph
