#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace bopgraph {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Cost of a missing arc. Never stored as a large finite value; every
/// consumer goes through the affinity pattern, where missing arcs are 0.
inline constexpr double kNoArc = std::numeric_limits<double>::infinity();

/// c_ij = 1 / a_ij on arcs, kNoArc elsewhere.
Matrix affinity_to_cost(const Matrix& affinities);

/// True when every node reaches every other node along arcs with a_ij > 0.
bool is_strongly_connected(const Matrix& affinities);

/// Weighted directed graph: affinities A and immediate costs C.
///
/// Invariants checked on construction: square, nonnegative finite
/// affinities, zero diagonal, a_ij > 0 exactly where c_ij is finite, finite
/// costs strictly positive, strong connectivity.
class Graph {
 public:
  /// Costs derived as the reciprocal of the affinities. An undirected graph
  /// must come with a symmetric affinity matrix.
  static Graph from_affinities(Matrix affinities, bool directed = true);

  /// Explicit cost matrix, for cost conventions other than 1/a.
  static Graph from_affinities_and_costs(Matrix affinities, Matrix costs,
                                         bool directed = true);

  std::size_t size() const { return static_cast<std::size_t>(affinities_.rows()); }
  bool directed() const { return directed_; }
  const Matrix& affinities() const { return affinities_; }
  const Matrix& costs() const { return costs_; }
  bool has_arc(std::size_t i, std::size_t j) const {
    return affinities_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > 0.0;
  }

  /// Same graph with nodes relabelled: node `i` becomes `perm[i]`.
  Graph permuted(const std::vector<std::size_t>& perm) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.directed_ == b.directed_ && a.affinities_ == b.affinities_ &&
           a.costs_ == b.costs_;
  }

 private:
  Graph(Matrix affinities, Matrix costs, bool directed);

  Matrix affinities_;
  Matrix costs_;
  bool directed_ = true;
};

/// Row-stochastic reference random walk, p_ij proportional to 1 / c_ij.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(Matrix probabilities);
  const Matrix& matrix() const { return p_; }
  std::size_t size() const { return static_cast<std::size_t>(p_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return p_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Matrix p_;
};

TransitionMatrix reference_transitions(const Graph& graph);

/// Hard class labels for a subset of nodes. Unlabelled nodes carry
/// `kUnlabeled`. Classes are dense ids in [0, num_classes).
class LabelAssignment {
 public:
  static constexpr int kUnlabeled = -1;

  LabelAssignment(std::vector<int> labels, int num_classes);

  std::size_t size() const { return labels_.size(); }
  int num_classes() const { return num_classes_; }
  int label(std::size_t node) const { return labels_[node]; }
  bool is_labeled(std::size_t node) const { return labels_[node] != kUnlabeled; }
  const std::vector<int>& labels() const { return labels_; }

  /// n x m indicator matrix Y; unlabelled rows are all zero.
  Matrix indicator() const;
  /// Column y^c of the indicator matrix.
  Vector class_indicator(int c) const;

  std::size_t class_count(int c) const;
  std::vector<std::size_t> class_members(int c) const;
  std::vector<std::size_t> labeled_nodes() const;
  std::vector<std::size_t> unlabeled_nodes() const;

  /// Throws DegenerateClassError naming the first class with fewer than `min_seeds`
  /// labelled nodes.
  void require_min_seeds(std::size_t min_seeds) const;

  /// Copy with the given nodes unlabelled.
  LabelAssignment without(const std::vector<std::size_t>& nodes) const;

  LabelAssignment permuted(const std::vector<std::size_t>& perm) const;

  friend bool operator==(const LabelAssignment&, const LabelAssignment&) = default;

 private:
  std::vector<int> labels_;
  int num_classes_ = 0;
};

}  // namespace bopgraph
