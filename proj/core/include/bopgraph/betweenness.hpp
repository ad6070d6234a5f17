#pragma once

#include "bopgraph/bop_model.hpp"

namespace bopgraph {

enum class ScoreKind { kBetweenness, kGroupBetweenness, kMembership };

/// Nonnegative per-node scores. Group-betweenness vectors sum to 1.
struct ScoreVector {
  Vector values;
  ScoreKind kind = ScoreKind::kBetweenness;
};

/// P(int = j | s = i, e = k) for every j; zero at j = i and j = k.
struct IntermediatePosterior {
  std::size_t source = 0;
  std::size_t target = 0;
  Vector probs;
};

/// Posterior over the intermediate node of a walk i -> k, proportional to
/// z_ij z_jk / z_jj over j not in {i, k}. Requires i != k and n >= 3.
IntermediatePosterior intermediate_posterior(const BopModel& model, std::size_t source,
                                             std::size_t target);

/// Sum over ordered pairs (i, k) of the intermediate posterior, evaluated
/// with the closed matrix form
///   bet = D_z^{-1} diag[ Z0^T (N^÷ - Diag N^÷) Z0^T ],  N = Z0 D_z^{-1} Z0.
/// Requires n >= 3. Throws NumericalError if a normaliser n_ik underflows.
ScoreVector bop_betweenness(const BopModel& model);

/// Betweenness of each node between two disjoint, nonempty node sets given
/// as 0/1 indicator vectors, L1-normalised:
///   D_z^{-1} ((Z0^T y_from) o (Z0 y_to)).
/// Nodes of singleton sets score 0 as intermediates of their own walks.
ScoreVector group_betweenness(const BopModel& model, const Vector& from_set,
                              const Vector& to_set);

/// Betweenness of each node for walks starting and ending in the same class
/// (at distinct nodes), L1-normalised:
///   D_z^{-1} [ (Z0^T y) o (Z0 y) - (Z0^T o Z0) y ].
/// Throws DegenerateClassError when the class has fewer than two members or
/// its numerator vanishes. `class_id` only labels the error.
ScoreVector within_class_betweenness(const BopModel& model, const Vector& class_indicator,
                                     int class_id = 0);

/// Reference implementations by explicit sums over node triples, O(n^3).
/// They mirror the definitions term by term and back the matrix forms in
/// tests.
namespace direct {

ScoreVector bop_betweenness(const BopModel& model);
/// Distinctness i' != j, j != k', i' != k' throughout; serves both the
/// two-set and the within-class measures.
ScoreVector group_betweenness(const BopModel& model, const Vector& from_set, const Vector& to_set);

}  // namespace direct

}  // namespace bopgraph
