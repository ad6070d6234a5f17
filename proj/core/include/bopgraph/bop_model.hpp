#pragma once

#include "bopgraph/graph.hpp"

namespace bopgraph {

/// Bag-of-paths model of a graph at inverse temperature theta.
///
/// W holds the killed reference transitions w_ij = p_ij exp(-theta c_ij) and
/// Z = (I - W)^{-1} is the fundamental matrix: z_ij is the total Boltzmann
/// weight of all walks from i to j (including the empty walk when i = j).
/// Immutable after construction.
class BopModel {
 public:
  double theta() const { return theta_; }
  std::size_t size() const { return static_cast<std::size_t>(z_.rows()); }

  const Matrix& weights() const { return w_; }
  const Matrix& fundamental() const { return z_; }
  /// Z with its diagonal set to zero.
  const Matrix& fundamental_offdiag() const { return z0_; }
  /// Diagonal of Z; every entry is at least 1.
  const Vector& fundamental_diagonal() const { return dz_; }

  /// Sum of all entries of Z.
  double partition() const { return partition_; }
  /// Sum over i, j of z_ij / z_jj.
  double hitting_partition() const { return hitting_partition_; }

 private:
  friend BopModel build_model(const Graph& graph, double theta);
  BopModel() = default;

  double theta_ = 0.0;
  Matrix w_;
  Matrix z_;
  Matrix z0_;
  Vector dz_;
  double partition_ = 0.0;
  double hitting_partition_ = 0.0;
};

/// Builds W from the reference transitions and costs, then Z by LU solves
/// against the identity. Throws InputError when theta <= 0 and
/// NumericalError when I - W is too ill-conditioned.
BopModel build_model(const Graph& graph, double theta);

/// Killed transition matrix W alone (no solve).
Matrix killed_transitions(const Graph& graph, double theta);

/// P(s = i, e = j) = z_ij / partition.
Matrix bop_probabilities(const BopModel& model);

struct HittingProbabilities {
  /// z^h_ij = z_ij / z_jj; unit diagonal.
  Matrix weights;
  /// z^h_ij / hitting partition; sums to 1.
  Matrix probabilities;
};

HittingProbabilities hitting_probabilities(const BopModel& model);

}  // namespace bopgraph
