#include "bopgraph/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "bopgraph/errors.hpp"

namespace bopgraph {

LabeledGraph generate_planted_partition(const std::vector<std::size_t>& block_sizes, double p_in,
                                        double p_out, std::uint64_t seed, int max_attempts) {
  if (block_sizes.empty()) throw InputError("at least one block is required");
  if (!(0.0 <= p_out && p_out < p_in && p_in <= 1.0))
    throw InputError("planted partition requires 0 <= p_out < p_in <= 1");
  std::vector<int> block;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    if (block_sizes[b] == 0) throw InputError("block sizes must be positive");
    block.insert(block.end(), block_sizes[b], static_cast<int>(b));
  }
  const auto n = static_cast<Eigen::Index>(block.size());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Matrix a = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double p = block[static_cast<std::size_t>(i)] == block[static_cast<std::size_t>(j)]
                             ? p_in
                             : p_out;
        if (unit(rng) < p) a(i, j) = a(j, i) = 1.0;
      }
    if (is_strongly_connected(a))
      return {Graph::from_affinities(std::move(a), false),
              LabelAssignment(block, static_cast<int>(block_sizes.size()))};
  }
  throw InputError("planted partition graph not connected after " +
                   std::to_string(max_attempts) + " attempts");
}

LabeledGraph generate_planted_partition(std::size_t num_blocks, std::size_t block_size,
                                        double p_in, double p_out, std::uint64_t seed,
                                        int max_attempts) {
  return generate_planted_partition(std::vector<std::size_t>(num_blocks, block_size), p_in, p_out,
                                    seed, max_attempts);
}

LabeledGraph make_two_cliques(std::size_t clique_size) {
  if (clique_size < 2) throw InputError("cliques need at least two nodes");
  const auto s = static_cast<Eigen::Index>(clique_size);
  Matrix a = Matrix::Zero(2 * s, 2 * s);
  for (Eigen::Index offset : {Eigen::Index{0}, s})
    for (Eigen::Index i = 0; i < s; ++i)
      for (Eigen::Index j = 0; j < s; ++j)
        if (i != j) a(offset + i, offset + j) = 1.0;
  a(s - 1, s) = a(s, s - 1) = 1.0;
  std::vector<int> labels(2 * clique_size, 0);
  std::fill(labels.begin() + static_cast<std::ptrdiff_t>(clique_size), labels.end(), 1);
  return {Graph::from_affinities(std::move(a), false), LabelAssignment(std::move(labels), 2)};
}

Graph make_path(std::size_t n) {
  if (n < 2) throw InputError("a path needs at least two nodes");
  const auto size = static_cast<Eigen::Index>(n);
  Matrix a = Matrix::Zero(size, size);
  for (Eigen::Index i = 0; i + 1 < size; ++i) a(i, i + 1) = a(i + 1, i) = 1.0;
  return Graph::from_affinities(std::move(a), false);
}

Graph random_strongly_connected(std::size_t n, double density, std::uint64_t seed, bool directed) {
  if (n < 2) throw InputError("random graph needs at least two nodes");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  const auto size = static_cast<Eigen::Index>(n);
  Matrix a = Matrix::Zero(size, size);

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t k = 0; k < n; ++k) {
    const auto u = order[k];
    const auto v = order[(k + 1) % n];
    if (n == 2 && k == 1) break;
    a(u, v) = weight(rng);
    if (!directed) a(v, u) = a(u, v);
  }
  if (n == 2 && directed) a(order[1], order[0]) = weight(rng);

  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = directed ? 0 : i + 1; j < size; ++j) {
      if (i == j || a(i, j) > 0.0) continue;
      if (unit(rng) < density) {
        a(i, j) = weight(rng);
        if (!directed) a(j, i) = a(i, j);
      }
    }
  return Graph::from_affinities(std::move(a), directed);
}

}  // namespace bopgraph
