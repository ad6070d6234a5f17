#pragma once

#include <cmath>
#include <cstdint>
#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "bopgraph/generators.hpp"
#include "bopgraph/graph.hpp"

// Reference computations written from the definitions, sharing no code with
// the library beyond the Graph container.
namespace bopgraph::oracle {

// Reachability by transitive closure (Warshall).
inline bool strongly_connected(const Matrix& a) {
  const auto n = a.rows();
  if (n <= 1) return false;
  std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n),
                                       std::vector<bool>(static_cast<std::size_t>(n), false));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = i == j || a(i, j) > 0.0;
  for (std::size_t k = 0; k < reach.size(); ++k)
    for (std::size_t i = 0; i < reach.size(); ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < reach.size(); ++j)
          if (reach[k][j]) reach[i][j] = true;
  for (const auto& row : reach)
    for (bool r : row)
      if (!r) return false;
  return true;
}

// w_ij = p_ij exp(-theta c_ij) with p_ij proportional to 1/c_ij.
inline Matrix killed_weights(const Graph& g, double theta) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Matrix w = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::isfinite(g.costs()(i, j))) total += 1.0 / g.costs()(i, j);
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::isfinite(g.costs()(i, j)))
        w(i, j) = (1.0 / g.costs()(i, j)) / total * std::exp(-theta * g.costs()(i, j));
  }
  return w;
}

// Total weight of the walks from -> to of each length 0..max_length, listed
// one by one. Hitting walks stop the first time they reach `to`.
inline std::vector<double> enumerate_walks(const Graph& g, double theta, std::size_t from,
                                           std::size_t to, int max_length, bool hitting) {
  const Matrix w = killed_weights(g, theta);
  std::vector<double> by_length(static_cast<std::size_t>(max_length) + 1, 0.0);
  std::function<void(std::size_t, int, double)> walk = [&](std::size_t node, int length,
                                                           double weight) {
    if (node == to) {
      by_length[static_cast<std::size_t>(length)] += weight;
      if (hitting) return;
    }
    if (length == max_length) return;
    for (std::size_t next = 0; next < g.size(); ++next) {
      const double step = w(static_cast<Eigen::Index>(node), static_cast<Eigen::Index>(next));
      if (step > 0.0) walk(next, length + 1, weight * step);
    }
  };
  walk(from, 0, 1.0);
  return by_length;
}

// Unnormalised within-class sum over ordered seed pairs (i, k), i != k, and
// intermediates j outside {i, k}.
inline Vector within_class_sum(const Matrix& z, const std::vector<std::size_t>& seeds) {
  const auto n = z.rows();
  Vector out = Vector::Zero(n);
  for (std::size_t i : seeds)
    for (std::size_t k : seeds) {
      if (i == k) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto ii = static_cast<Eigen::Index>(i), kk = static_cast<Eigen::Index>(k);
        if (j == ii || j == kk) continue;
        out(j) += z(ii, j) * z(j, kk) / z(j, j);
      }
    }
  return out;
}

// Unnormalised group sum from `sources` to `targets` (disjoint sets).
inline Vector group_sum(const Matrix& z, const std::vector<std::size_t>& sources,
                        const std::vector<std::size_t>& targets) {
  const auto n = z.rows();
  Vector out = Vector::Zero(n);
  for (std::size_t i : sources)
    for (std::size_t k : targets)
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto ii = static_cast<Eigen::Index>(i), kk = static_cast<Eigen::Index>(k);
        if (j == ii || j == kk) continue;
        out(j) += z(ii, j) * z(j, kk) / z(j, j);
      }
  return out;
}

inline Vector l1_normalised(const Vector& v) { return v / v.cwiseAbs().sum(); }

// bet_j as the sum over ordered pairs of normalised intermediate posteriors.
inline Vector betweenness(const Matrix& z) {
  const auto n = z.rows();
  Vector bet = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) {
      if (i == k) continue;
      double total = 0.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != i && j != k) total += z(i, j) * z(j, k) / z(j, j);
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != i && j != k) bet(j) += z(i, j) * z(j, k) / z(j, j) / total;
    }
  return bet;
}

inline std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

// Seeded strongly connected graphs with sizes cycling through
// [min_n, max_n], alternating directed and undirected.
inline std::vector<Graph> random_corpus(std::size_t count, std::size_t min_n, std::size_t max_n,
                                        std::uint64_t seed) {
  std::vector<Graph> graphs;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = min_n + k % (max_n - min_n + 1);
    const double density = 0.15 + 0.1 * static_cast<double>(k % 5);
    graphs.push_back(random_strongly_connected(n, density, seed + k, k % 2 == 0));
  }
  return graphs;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace bopgraph::oracle
