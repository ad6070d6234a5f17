#pragma once

#include <vector>

#include "bopgraph/graph.hpp"

namespace bopgraph {

/// Brute-force audit of the fundamental matrix: sums the Boltzmann weight
/// prod(p_ref) * exp(-theta * total cost) over walks from i to j, one walk
/// length at a time, independently of any matrix inversion.

inline constexpr std::size_t kOracleMaxNodes = 12;

enum class WalkSet {
  kAll,      ///< every walk i -> j (z_ij)
  kHitting,  ///< walks that reach j only at their last step (z_ij / z_jj)
};

struct PathSumEstimate {
  double value = 0.0;
  /// Longest walk length included in `value`.
  int truncation_length = 0;
  /// Upper bound on the weight of all longer walks.
  double tail_bound = 0.0;
};

/// Stops at the first length L with rho^(L+1) * n / (1 - rho) < epsilon,
/// rho being the largest row sum of the killed transition matrix.
/// Throws InputError when n > kOracleMaxNodes, theta <= 0 or epsilon <= 0.
PathSumEstimate path_sum_oracle(const Graph& graph, double theta, std::size_t from,
                                std::size_t to, double epsilon, WalkSet walks = WalkSet::kAll);

/// Weight of the walks of each length 0..max_length from `from` to `to`.
std::vector<double> path_weight_by_length(const Graph& graph, double theta, std::size_t from,
                                          std::size_t to, int max_length,
                                          WalkSet walks = WalkSet::kAll);

}  // namespace bopgraph
